//! Recognition of generalized complete multipartite graphs.
//!
//! A graph is decomposed top-down. Isolated vertices are set aside. The
//! remaining part splits either into connected components (a union node) or,
//! when connected, into join factors: the connected components of its
//! complement. Each join factor is again a disjoint union of pieces; a piece
//! that is complete multipartite is a leaf, anything else must itself be a
//! join. A connected piece whose complement is also connected cannot be
//! decomposed and the graph is rejected.
//!
//! Type numbers count join levels above the complete multipartite leaves: a
//! join whose factors are disjoint unions of complete multipartite graphs has
//! type 1, and every further level of joins adds one.

use serde::{Deserialize, Serialize};

use super::{components_within, multipartite_parts, TGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GcmNode {
    /// `Γ_1 * ... * Γ_k` with `k >= 2` vertex-disjoint factors.
    Join { children: Vec<GcmNode> },
    /// Disjoint union of at least two pieces.
    Union { children: Vec<GcmNode> },
    /// Complete multipartite graph; each inner vector is one part.
    Multipartite { parts: Vec<Vec<usize>> },
    /// Edgeless vertex set.
    Isolated { vertices: Vec<usize> },
}

impl GcmNode {
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = match self {
            GcmNode::Join { children } | GcmNode::Union { children } => {
                children.iter().flat_map(GcmNode::vertices).collect()
            }
            GcmNode::Multipartite { parts } => parts.concat(),
            GcmNode::Isolated { vertices } => vertices.clone(),
        };
        out.sort_unstable();
        out
    }

    fn add_edges(&self, g: &mut TGraph) {
        match self {
            GcmNode::Join { children } => {
                for c in children {
                    c.add_edges(g);
                }
                cross_edges(children.iter().map(GcmNode::vertices).collect(), g);
            }
            GcmNode::Union { children } => children.iter().for_each(|c| c.add_edges(g)),
            GcmNode::Multipartite { parts } => cross_edges(parts.clone(), g),
            GcmNode::Isolated { .. } => {}
        }
    }
}

fn cross_edges(groups: Vec<Vec<usize>>, g: &mut TGraph) {
    for (x, a) in groups.iter().enumerate() {
        for b in &groups[x + 1..] {
            for &u in a {
                for &v in b {
                    g.add_edge(u, v);
                }
            }
        }
    }
}

/// Witness that a graph is a generalized complete multipartite graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcmTree {
    pub n: usize,
    /// `None` when the graph has no edges.
    pub root: Option<GcmNode>,
    /// Isolated vertices of the whole graph.
    pub isolated: Vec<usize>,
    /// Smallest `k` such that the graph has type `k`.
    pub type_number: usize,
}

impl GcmTree {
    /// Rebuilds the graph the tree describes.
    pub fn reconstruct(&self) -> TGraph {
        let mut g = TGraph::empty(self.n);
        if let Some(r) = &self.root {
            r.add_edges(&mut g);
        }
        g
    }
}

/// Returns a minimal-type witness tree, or `None` when some piece is
/// connected with a connected complement.
pub fn gcm_decompose(g: &TGraph) -> Option<GcmTree> {
    let active = g.non_isolated();
    let isolated: Vec<usize> = (1..=g.n()).filter(|v| !active.contains(v)).collect();
    let (root, type_number) = if active.is_empty() {
        (None, 1)
    } else {
        let comps = components_within(&active, |a, b| g.has_edge(a, b));
        let (node, t) = if comps.len() == 1 {
            connected(g, &active)?
        } else {
            // a union of pieces of level t is one level above them
            let mut children = Vec::new();
            let mut level = 0;
            for c in &comps {
                let (node, t) = piece(g, c)?;
                level = level.max(t);
                children.push(node);
            }
            (GcmNode::Union { children }, level + 1)
        };
        (Some(node), t.max(1))
    };
    Some(GcmTree {
        n: g.n(),
        root,
        isolated,
        type_number,
    })
}

/// A connected vertex set with at least two vertices, decomposed as a join.
fn connected(g: &TGraph, set: &[usize]) -> Option<(GcmNode, usize)> {
    let factors = components_within(set, |a, b| !g.has_edge(a, b));
    if factors.len() < 2 {
        return None;
    }
    let mut children = Vec::with_capacity(factors.len());
    let mut level = 0;
    for f in &factors {
        let (node, t) = factor(g, f)?;
        level = level.max(t);
        children.push(node);
    }
    Some((GcmNode::Join { children }, level + 1))
}

/// A join factor: a disjoint union of pieces. Level 0 means every piece is
/// complete multipartite.
fn factor(g: &TGraph, set: &[usize]) -> Option<(GcmNode, usize)> {
    let comps = components_within(set, |a, b| g.has_edge(a, b));
    let (singles, pieces): (Vec<_>, Vec<_>) = comps.into_iter().partition(|c| c.len() == 1);
    let mut children = Vec::new();
    let mut level = 0;
    for p in &pieces {
        let (node, t) = piece(g, p)?;
        level = level.max(t);
        children.push(node);
    }
    if !singles.is_empty() {
        children.push(GcmNode::Isolated {
            vertices: singles.concat(),
        });
    }
    let node = if children.len() == 1 {
        children.pop().unwrap()
    } else {
        GcmNode::Union { children }
    };
    Some((node, level))
}

/// A connected piece inside a union: a leaf if complete multipartite,
/// otherwise a join.
fn piece(g: &TGraph, set: &[usize]) -> Option<(GcmNode, usize)> {
    match multipartite_parts(g, set) {
        Some(parts) => Some((GcmNode::Multipartite { parts }, 0)),
        None => connected(g, set),
    }
}
