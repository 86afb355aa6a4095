//! JSON report documents emitted by the command-line tool.

use serde::{Deserialize, Serialize};

use crate::integrality::{SpectrumReport, Verdict};
use crate::tgraph::{to_graph6, TGraph};

/// Bumped whenever a field changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub graph6: String,
}

impl From<&TGraph> for GraphInfo {
    fn from(g: &TGraph) -> Self {
        GraphInfo {
            n: g.n(),
            edges: g.edges().collect(),
            graph6: to_graph6(g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub graph: GraphInfo,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumReport>,
}

impl CheckReport {
    pub fn new(g: &TGraph, verdict: Verdict, spectrum: Option<SpectrumReport>) -> Self {
        CheckReport {
            schema_version: SCHEMA_VERSION,
            tool_version: crate::scan::TOOL_VERSION.to_string(),
            graph: g.into(),
            verdict,
            spectrum,
        }
    }
}
