//! Canonical forms, exhaustive enumeration of small connected graphs, and
//! the scanner with its JSONL result cache.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integrality::{is_integral_with, CheckOptions, DecisionPath, Verdict};
use crate::tgraph::{gcm_decompose, to_graph6, TGraph};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest vertex count for canonical labeling.
pub const CANON_MAX_N: usize = 11;

/// Default scan limit; larger scans need `force`.
pub const SCAN_DEFAULT_MAX_V: usize = 6;

/// Upper-triangle adjacency bits in graph6 order, first pair in the most
/// significant position.
fn triangle_bits(n: usize, adj: &[u16], order: &[usize]) -> u64 {
    let mut bits = 0u64;
    for j in 1..n {
        for i in 0..j {
            bits = (bits << 1) | ((adj[order[i]] >> order[j]) & 1) as u64;
        }
    }
    bits
}

/// Canonical relabeling: among all vertex orders that list vertices by
/// non-increasing degree, the one with the smallest graph6 bit string.
/// Isomorphic graphs map to the same graph.
pub fn canonical_form(g: &TGraph) -> Result<TGraph> {
    let n = g.n();
    if n > CANON_MAX_N {
        return Err(Error::Capacity(format!(
            "canonical labeling limited to {CANON_MAX_N} vertices"
        )));
    }
    let mut adj = vec![0u16; n];
    for (a, b) in g.edges() {
        adj[a - 1] |= 1 << (b - 1);
        adj[b - 1] |= 1 << (a - 1);
    }
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let mut base: Vec<usize> = (0..n).collect();
    base.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
    // boundaries of equal-degree blocks
    let mut blocks = Vec::new();
    let mut s = 0;
    for e in 1..=n {
        if e == n || deg[base[e]] != deg[base[s]] {
            blocks.push((s, e));
            s = e;
        }
    }

    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut order = base.clone();
    permute_blocks(&blocks, 0, &mut order, &mut |o| {
        let bits = triangle_bits(n, &adj, o);
        if best.as_ref().is_none_or(|(b, _)| bits < *b) {
            best = Some((bits, o.to_vec()));
        }
    });
    let order = best.map(|(_, o)| o).unwrap_or_default();
    // order[pos] = old vertex at new position pos
    let mut perm = vec![0; n];
    for (pos, &old) in order.iter().enumerate() {
        perm[old] = pos + 1;
    }
    Ok(g.relabel(&perm))
}

fn permute_blocks(
    blocks: &[(usize, usize)],
    k: usize,
    order: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    if k == blocks.len() {
        visit(order);
        return;
    }
    let (s, e) = blocks[k];
    heap_permute(order, s, e - s, &mut |o| permute_blocks(blocks, k + 1, o, visit));
}

// Heap's algorithm over order[s..e]
fn heap_permute(
    order: &mut Vec<usize>,
    s: usize,
    m: usize,
    visit: &mut dyn FnMut(&mut Vec<usize>),
) {
    if m <= 1 {
        visit(order);
        return;
    }
    for i in 0..m - 1 {
        heap_permute(order, s, m - 1, visit);
        if m.is_multiple_of(2) {
            order.swap(s + i, s + m - 1);
        } else {
            order.swap(s, s + m - 1);
        }
    }
    heap_permute(order, s, m - 1, visit);
}

/// graph6 string of the canonical form.
pub fn canonical_key(g: &TGraph) -> Result<String> {
    Ok(to_graph6(&canonical_form(g)?))
}

/// One canonical representative per isomorphism class of connected graphs
/// on `v` vertices, sorted by canonical key.
pub fn connected_graphs(v: usize) -> Result<Vec<(String, TGraph)>> {
    if v == 0 {
        return Ok(Vec::new());
    }
    if v > CANON_MAX_N.min(8) {
        return Err(Error::Capacity(format!("enumeration limited to 8 vertices, got {v}")));
    }
    let pairs: Vec<(usize, usize)> = (1..=v)
        .flat_map(|a| (a + 1..=v).map(move |b| (a, b)))
        .collect();
    let total: u64 = 1 << pairs.len();
    let classes: BTreeMap<String, TGraph> = (0..total)
        .into_par_iter()
        .filter_map(|mask| {
            let chosen: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            if chosen.len() + 1 < v {
                return None;
            }
            let g = TGraph::from_edge_list(v, &chosen).expect("distinct valid pairs");
            if !g.is_connected() {
                return None;
            }
            let c = canonical_form(&g).expect("within canonical limit");
            Some((to_graph6(&c), c))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(classes.into_iter().collect())
}

/// Which classification result in the literature covers a graph, if any:
/// cycles, trees, connected cubic graphs, and k-cyclic graphs for k <= 3.
pub fn covering_result(g: &TGraph) -> Option<String> {
    if !g.is_connected() || g.n() < 2 {
        return None;
    }
    if g.is_tree() {
        return Some("tree".into());
    }
    if g.n() >= 3 && g.is_regular(2) {
        return Some("cycle".into());
    }
    if g.is_regular(3) {
        return Some("cubic".into());
    }
    let k = g.edge_count() + 1 - g.n();
    (1..=3).contains(&k).then(|| format!("{k}-cyclic"))
}

/// One persisted scan result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub key: String,
    pub n: usize,
    pub edges: usize,
    pub laplacian_integral: bool,
    pub gcm_present: bool,
    pub gcm_type: Option<usize>,
    pub p4_free: bool,
    pub cayley_integral: bool,
    pub path: DecisionPath,
    pub spectrum_digest: String,
    pub covered_by: Option<String>,
    pub timestamp: u64,
    pub tool_version: String,
}

impl ScanRecord {
    pub fn agrees(&self) -> bool {
        self.cayley_integral == self.gcm_present
    }
}

fn digest(v: &Verdict) -> String {
    match &v.witness {
        Some(w) => format!("witness {} f={} {}", w.partition, w.dimension, w.factor),
        None => format!("integral via {}", v.path),
    }
}

pub fn scan_graph(key: &str, g: &TGraph, opts: CheckOptions) -> Result<ScanRecord> {
    let v = is_integral_with(g.n(), &g.transpositions(), opts)?;
    Ok(ScanRecord {
        key: key.to_string(),
        n: g.n(),
        edges: g.edge_count(),
        laplacian_integral: v.laplacian_integral,
        gcm_present: gcm_decompose(g).is_some(),
        gcm_type: v.gcm_type,
        p4_free: g.is_p4_free(),
        cayley_integral: v.result.is_integral(),
        path: v.path,
        spectrum_digest: digest(&v),
        covered_by: covering_result(g),
        timestamp: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
        tool_version: TOOL_VERSION.to_string(),
    })
}

/// Append-only JSONL store keyed by canonical graph6 key.
pub struct ScanCache {
    records: BTreeMap<String, ScanRecord>,
    file: Option<File>,
}

impl ScanCache {
    /// A cache that neither reads nor writes anything.
    pub fn disabled() -> Self {
        ScanCache {
            records: BTreeMap::new(),
            file: None,
        }
    }

    pub fn open(path: &Path) -> Result<Self> {
        let mut records = BTreeMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            let mut offset = 0;
            for line in reader.lines() {
                let line = line?;
                if !line.trim().is_empty() {
                    let rec: ScanRecord = serde_json::from_str(&line)
                        .map_err(|e| Error::parse(offset, format!("cache record: {e}")))?;
                    records.insert(rec.key.clone(), rec);
                }
                offset += line.len() + 1;
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(ScanCache {
            records,
            file: Some(file),
        })
    }

    pub fn get(&self, key: &str) -> Option<&ScanRecord> {
        self.records.get(key)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    fn append(&mut self, rec: ScanRecord) -> Result<()> {
        if let Some(f) = &mut self.file {
            let line = serde_json::to_string(&rec).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(f, "{line}")?;
        }
        self.records.insert(rec.key.clone(), rec);
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ScanOptions {
    pub check: CheckOptions,
    /// Allow more than [`SCAN_DEFAULT_MAX_V`] vertices.
    pub force: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub vertices: usize,
    pub classes: usize,
    pub computed: usize,
    pub from_cache: usize,
    pub integral: usize,
    pub gcm_present: usize,
    pub agreements: usize,
    /// Graphs where the Cayley verdict and the GCM test differ.
    pub disagreements: Vec<ScanRecord>,
    /// Disagreements on graphs that a published classification covers.
    pub covered_disagreements: Vec<ScanRecord>,
    /// Graphs where GCM recognition and P4-freeness differ.
    pub p4_mismatches: Vec<String>,
    pub records: Vec<ScanRecord>,
}

impl ScanSummary {
    pub fn clean(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Checks every connected graph on `v` vertices. Results are reused from
/// and appended to `cache`; output is sorted by canonical key.
pub fn scan(v: usize, opts: ScanOptions, cache: &mut ScanCache) -> Result<ScanSummary> {
    if v > SCAN_DEFAULT_MAX_V && !opts.force {
        return Err(Error::Capacity(format!(
            "scans above {SCAN_DEFAULT_MAX_V} vertices need --force"
        )));
    }
    let graphs = connected_graphs(v)?;
    let usable = |r: &ScanRecord| {
        !opts.check.force_full || r.path == DecisionPath::FullRepresentation
    };
    let todo: Vec<&(String, TGraph)> = graphs
        .iter()
        .filter(|(k, _)| cache.get(k).is_none_or(|r| !usable(r)))
        .collect();
    let fresh: Vec<ScanRecord> = todo
        .par_iter()
        .map(|(k, g)| scan_graph(k, g, opts.check))
        .collect::<Result<_>>()?;
    let computed = fresh.len();
    // single writer, deterministic order
    for rec in fresh {
        cache.append(rec)?;
    }

    let records: Vec<ScanRecord> = graphs
        .iter()
        .map(|(k, _)| cache.get(k).cloned().expect("every class was computed or cached"))
        .collect();
    let disagreements: Vec<ScanRecord> =
        records.iter().filter(|r| !r.agrees()).cloned().collect();
    let covered_disagreements = disagreements
        .iter()
        .filter(|r| r.covered_by.is_some())
        .cloned()
        .collect();
    let keys: BTreeSet<&str> = records
        .iter()
        .filter(|r| r.gcm_present != r.p4_free)
        .map(|r| r.key.as_str())
        .collect();
    Ok(ScanSummary {
        vertices: v,
        classes: records.len(),
        computed,
        from_cache: records.len() - computed,
        integral: records.iter().filter(|r| r.cayley_integral).count(),
        gcm_present: records.iter().filter(|r| r.gcm_present).count(),
        agreements: records.iter().filter(|r| r.agrees()).count(),
        disagreements,
        covered_disagreements,
        p4_mismatches: keys.into_iter().map(String::from).collect(),
        records,
    })
}
