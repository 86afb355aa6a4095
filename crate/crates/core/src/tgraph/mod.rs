//! The transposition graph `G_T`: vertex set `[n]`, and `{i, j}` is an edge
//! iff `(i, j) ∈ T`.

mod gcm;
mod graph6;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{char_poly, integer_root_split, IntMatrix, IntPolynomial};
use crate::perm::Transposition;

pub use gcm::{gcm_decompose, GcmNode, GcmTree};
pub use graph6::{parse_graph6, to_graph6};

/// Simple undirected graph on `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// An induced piece of a larger graph, relabeled to `1..=k`.
/// `labels[v - 1]` is the original label of vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: TGraph,
    pub labels: Vec<usize>,
}

impl TGraph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        TGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// Validates a 1-indexed edge list: no loops, no duplicates, all
    /// endpoints in `1..=n`.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = TGraph::empty(n);
        for (idx, &(a, b)) in pairs.iter().enumerate() {
            g.insert_checked(a, b)
                .map_err(|m| Error::parse(idx, format!("edge {idx} ({a},{b}): {m}")))?;
        }
        Ok(g)
    }

    pub fn from_transpositions(n: usize, ts: &[Transposition]) -> Result<Self> {
        let pairs: Vec<_> = ts.iter().map(|t| (t.i(), t.j())).collect();
        Self::from_edge_list(n, &pairs)
    }

    fn insert_checked(&mut self, a: usize, b: usize) -> std::result::Result<(), String> {
        if a == b {
            return Err("loop".into());
        }
        if a == 0 || b == 0 || a > self.n || b > self.n {
            return Err(format!("vertex out of range 1..={}", self.n));
        }
        if !self.edges.insert((a.min(b), a.max(b))) {
            return Err("duplicate edge".into());
        }
        Ok(())
    }

    // unchecked insert for internal constructors
    fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b && a >= 1 && b >= 1 && a <= self.n && b <= self.n);
        self.edges.insert((a.min(b), a.max(b)));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    /// The generating set `T` this graph encodes.
    pub fn transpositions(&self) -> Vec<Transposition> {
        self.edges
            .iter()
            .map(|&(i, j)| Transposition::new(i, j).expect("edges are never loops"))
            .collect()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (1..=self.n).filter(|&u| u != v && self.has_edge(u, v)).collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a - 1] += 1;
            d[b - 1] += 1;
        }
        d
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.degrees().iter().all(|&d| d == k)
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_sets().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() == self.n - 1 && self.is_connected()
    }

    /// `D - A`.
    pub fn laplacian(&self) -> IntMatrix {
        let mut l = IntMatrix::zeros(self.n);
        for &(a, b) in &self.edges {
            let (i, j) = (a - 1, b - 1);
            l[(i, i)] += 1;
            l[(j, j)] += 1;
            l[(i, j)] -= 1;
            l[(j, i)] -= 1;
        }
        l
    }

    pub fn laplacian_char_poly(&self) -> Result<IntPolynomial> {
        if self.n == 0 {
            return Ok(IntPolynomial::one());
        }
        char_poly(&self.laplacian().to_rational())
    }

    /// Splits the Laplacian characteristic polynomial over the integers.
    /// Laplacian eigenvalues lie in `[0, 2 * max degree] ⊆ [0, 2n]`.
    pub fn is_laplacian_integral(&self) -> Result<LaplacianVerdict> {
        let split = integer_root_split(&self.laplacian_char_poly()?, 2 * self.n as u64);
        Ok(LaplacianVerdict {
            integral: split.splits_completely(),
            spectrum: split.roots,
            remainder: split.remainder,
        })
    }

    pub fn complement(&self) -> TGraph {
        let mut g = TGraph::empty(self.n);
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                if !self.has_edge(a, b) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// Vertices with at least one neighbor, in increasing order.
    pub fn non_isolated(&self) -> Vec<usize> {
        let d = self.degrees();
        (1..=self.n).filter(|&v| d[v - 1] > 0).collect()
    }

    /// `Γ^#` relabeled to `1..=m`, plus the number of isolated vertices
    /// removed.
    pub fn strip_isolated(&self) -> (TGraph, usize) {
        let keep = self.non_isolated();
        let isolated = self.n - keep.len();
        (self.induced(&keep).graph, isolated)
    }

    /// Induced subgraph on `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Subgraph {
        let mut g = TGraph::empty(vertices.len());
        for (x, &a) in vertices.iter().enumerate() {
            for (y, &b) in vertices.iter().enumerate().skip(x + 1) {
                if self.has_edge(a, b) {
                    g.add_edge(x + 1, y + 1);
                }
            }
        }
        Subgraph {
            graph: g,
            labels: vertices.to_vec(),
        }
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn component_sets(&self) -> Vec<Vec<usize>> {
        let all: Vec<usize> = (1..=self.n).collect();
        components_within(&all, |a, b| self.has_edge(a, b))
    }

    pub fn components(&self) -> Vec<Subgraph> {
        self.component_sets().iter().map(|s| self.induced(s)).collect()
    }

    /// Part sizes (descending) when the graph is complete multipartite,
    /// i.e. when its complement is a disjoint union of cliques. An edgeless
    /// graph on `m` vertices is the one-part case `[m]`.
    pub fn is_complete_multipartite(&self) -> Option<Vec<usize>> {
        let all: Vec<usize> = (1..=self.n).collect();
        let mut sizes: Vec<usize> = multipartite_parts(self, &all)?
            .iter()
            .map(Vec::len)
            .collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Some(sizes)
    }

    /// No induced path on four vertices.
    pub fn is_p4_free(&self) -> bool {
        let n = self.n;
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    for d in c + 1..=n {
                        let q = [a, b, c, d];
                        let mut deg = [0usize; 4];
                        let mut m = 0;
                        for x in 0..4 {
                            for y in x + 1..4 {
                                if self.has_edge(q[x], q[y]) {
                                    deg[x] += 1;
                                    deg[y] += 1;
                                    m += 1;
                                }
                            }
                        }
                        deg.sort_unstable();
                        // three edges with degrees 1,1,2,2 is exactly P4
                        if m == 3 && deg == [1, 1, 2, 2] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Same graph under the vertex map `v -> perm[v - 1]`.
    pub fn relabel(&self, perm: &[usize]) -> TGraph {
        let mut g = TGraph::empty(self.n);
        for &(a, b) in &self.edges {
            g.add_edge(perm[a - 1], perm[b - 1]);
        }
        g
    }

    /// Parses the edge-list format: a header line `n m`, then `m` lines
    /// `i j` (1-indexed). Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            let body = line.split('#').next().unwrap_or("");
            let base = offset;
            let mut pos = 0;
            for tok in body.split_whitespace() {
                let at = body[pos..].find(tok).unwrap() + pos;
                tokens.push((base + at, tok));
                pos = at + tok.len();
            }
            offset += line.len();
        }
        let mut it = tokens.into_iter();
        let mut next_num = |what: &str| -> Result<(usize, usize)> {
            let (at, tok) = it
                .next()
                .ok_or_else(|| Error::parse(text.len(), format!("expected {what}")))?;
            tok.parse::<usize>()
                .map(|v| (at, v))
                .map_err(|_| Error::parse(at, format!("expected {what}, found {tok:?}")))
        };
        let (_, n) = next_num("vertex count")?;
        let (_, m) = next_num("edge count")?;
        let mut g = TGraph::empty(n);
        for k in 0..m {
            let (at, a) = next_num("edge endpoint")?;
            let (_, b) = next_num("edge endpoint")?;
            g.insert_checked(a, b)
                .map_err(|msg| Error::parse(at, format!("edge {} ({a},{b}): {msg}", k + 1)))?;
        }
        if let Ok((at, _)) = next_num("end of input") {
            return Err(Error::parse(at, "more edges than declared"));
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for &(a, b) in &self.edges {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }
}

impl fmt::Display for TGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        write!(f, "n={} [{}]", self.n, e.join(" "))
    }
}

/// Outcome of the Laplacian test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianVerdict {
    pub integral: bool,
    /// Integer eigenvalues with multiplicity (the full spectrum when integral).
    pub spectrum: BTreeMap<i64, usize>,
    /// Integer-rootless factor; `1` when integral.
    pub remainder: IntPolynomial,
}

/// Connected components of the graph `adjacent` on `set`.
pub(crate) fn components_within(
    set: &[usize],
    adjacent: impl Fn(usize, usize) -> bool,
) -> Vec<Vec<usize>> {
    let mut seen = vec![false; set.len()];
    let mut out = Vec::new();
    for start in 0..set.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(x) = stack.pop() {
            comp.push(set[x]);
            for y in 0..set.len() {
                if !seen[y] && adjacent(set[x], set[y]) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Parts of `g[set]` when it is complete multipartite: the co-components
/// must all be independent sets.
pub(crate) fn multipartite_parts(g: &TGraph, set: &[usize]) -> Option<Vec<Vec<usize>>> {
    let parts = components_within(set, |a, b| !g.has_edge(a, b));
    let independent = parts
        .iter()
        .all(|p| p.iter().all(|&a| p.iter().all(|&b| !g.has_edge(a, b))));
    independent.then_some(parts)
}

/// Named families.
pub mod families {
    use super::TGraph;

    pub fn complete(n: usize) -> TGraph {
        complete_multipartite(&vec![1; n])
    }

    /// `C_m`, `m >= 3`.
    pub fn cycle(m: usize) -> TGraph {
        assert!(m >= 3, "cycles need at least 3 vertices");
        let mut g = path(m);
        g.add_edge(1, m);
        g
    }

    pub fn path(m: usize) -> TGraph {
        let mut g = TGraph::empty(m);
        for v in 1..m {
            g.add_edge(v, v + 1);
        }
        g
    }

    /// `K_{1,n-1}` with center 1.
    pub fn star(n: usize) -> TGraph {
        let mut g = TGraph::empty(n);
        for v in 2..=n {
            g.add_edge(1, v);
        }
        g
    }

    pub fn complete_multipartite(parts: &[usize]) -> TGraph {
        parts
            .iter()
            .map(|&p| TGraph::empty(p))
            .reduce(|a, b| join(&a, &b))
            .unwrap_or_else(|| TGraph::empty(0))
    }

    /// `G * H`: disjoint union plus every edge between the two sides.
    /// Vertices of `h` are shifted by `g.n()`.
    pub fn join(g: &TGraph, h: &TGraph) -> TGraph {
        let mut out = disjoint_union(g, h);
        for a in 1..=g.n() {
            for b in 1..=h.n() {
                out.add_edge(a, g.n() + b);
            }
        }
        out
    }

    pub fn disjoint_union(g: &TGraph, h: &TGraph) -> TGraph {
        let mut out = TGraph::empty(g.n() + h.n());
        for (a, b) in g.edges() {
            out.add_edge(a, b);
        }
        for (a, b) in h.edges() {
            out.add_edge(g.n() + a, g.n() + b);
        }
        out
    }

    pub fn add_isolated(g: &TGraph, k: usize) -> TGraph {
        disjoint_union(g, &TGraph::empty(k))
    }

    /// `k` disjoint copies of `g`.
    pub fn copies(g: &TGraph, k: usize) -> TGraph {
        (1..k).fold(g.clone(), |acc, _| disjoint_union(&acc, g))
    }

    /// Cartesian product `G □ H`; vertex `(a, b)` is `(a - 1) * |H| + b`.
    pub fn cartesian_product(g: &TGraph, h: &TGraph) -> TGraph {
        let m = h.n();
        let id = |a: usize, b: usize| (a - 1) * m + b;
        let mut out = TGraph::empty(g.n() * m);
        for a in 1..=g.n() {
            for (b1, b2) in h.edges() {
                out.add_edge(id(a, b1), id(a, b2));
            }
        }
        for (a1, a2) in g.edges() {
            for b in 1..=m {
                out.add_edge(id(a1, b), id(a2, b));
            }
        }
        out
    }

    /// The ladder `P_3 □ K_2`.
    pub fn ladder_p3_k2() -> TGraph {
        cartesian_product(&path(3), &complete(2))
    }

    /// The triangular prism `K_3 □ K_2`.
    pub fn prism() -> TGraph {
        cartesian_product(&complete(3), &complete(2))
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;
    use crate::perm::{permutation_matrix, Transposition};

    #[test]
    fn edge_list_validation() {
        let k2 = TGraph::from_edge_list(2, &[(1, 2)]).unwrap();
        assert_eq!(k2, complete(2));
        assert!(TGraph::from_edge_list(4, &[(1, 2), (1, 2)]).is_err());
        assert!(TGraph::from_edge_list(4, &[(2, 1), (1, 2)]).is_err());
        assert!(TGraph::from_edge_list(4, &[(3, 3)]).is_err());
        assert!(TGraph::from_edge_list(4, &[(1, 5)]).is_err());
        assert!(TGraph::from_edge_list(4, &[(0, 1)]).is_err());
    }

    #[test]
    fn edge_list_text() {
        let g = TGraph::parse_edge_list("4 3\n1 2\n2 3 # middle\n3 4\n").unwrap();
        assert_eq!(g, path(4));
        assert_eq!(TGraph::parse_edge_list(&g.to_edge_list()).unwrap(), g);

        let e = TGraph::parse_edge_list("3 2\n1 2\n2 2\n").unwrap_err();
        assert_eq!(e, Error::parse(8, "edge 2 (2,2): loop"));
        let e = TGraph::parse_edge_list("3 2\n1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 8, .. }), "{e}");
        let e = TGraph::parse_edge_list("3 1\n1 x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 6, .. }), "{e}");
        let e = TGraph::parse_edge_list("3 1\n1 2\n2 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { offset: 8, .. }), "{e}");
    }

    #[test]
    fn laplacian_basics() {
        let l = complete(2).laplacian();
        assert_eq!(l, IntMatrix::from_rows(&[vec![1, -1], vec![-1, 1]]).unwrap());
        let l = cycle(5).laplacian();
        assert!(l.is_symmetric());
        for i in 0..5 {
            assert_eq!(l.row(i).iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn laplacian_equals_transposition_matrix_sum() {
        let g = TGraph::from_edge_list(5, &[(1, 2), (2, 5), (3, 4), (1, 4)]).unwrap();
        let n = g.n();
        let sum = g
            .transpositions()
            .iter()
            .map(|t| permutation_matrix(&t.to_permutation(n).unwrap()))
            .fold(IntMatrix::zeros(n), |a, p| a.add(&p).unwrap());
        let expected = IntMatrix::identity(n)
            .scale(g.edge_count() as i64)
            .sub(&g.laplacian())
            .unwrap();
        assert_eq!(sum, expected);

        let t = Transposition::new(1, 2).unwrap();
        let single = permutation_matrix(&t.to_permutation(2).unwrap());
        assert_eq!(single, IntMatrix::identity(2).sub(&complete(2).laplacian()).unwrap());
    }

    #[test]
    fn laplacian_integrality() {
        let v = star(5).is_laplacian_integral().unwrap();
        assert!(v.integral);
        assert_eq!(v.spectrum, BTreeMap::from([(0, 1), (1, 3), (5, 1)]));

        let v = path(4).is_laplacian_integral().unwrap();
        assert!(!v.integral);
        assert_eq!(v.spectrum, BTreeMap::from([(0, 1), (2, 1)]));
        assert_eq!(v.remainder.to_string(), "x^2 - 4x + 2");

        let v = cycle(6).is_laplacian_integral().unwrap();
        assert!(v.integral);
        assert_eq!(v.spectrum, BTreeMap::from([(0, 1), (1, 2), (3, 2), (4, 1)]));
    }

    #[test]
    fn structural_helpers() {
        let g = add_isolated(&complete(2), 3);
        assert_eq!(g.strip_isolated(), (complete(2), 3));
        let g = TGraph::from_edge_list(5, &[(2, 4), (4, 5)]).unwrap();
        let (s, k) = g.strip_isolated();
        assert_eq!((s, k), (path(3), 2));
        assert_eq!(g.complement().complement(), g);

        let two_triangles = copies(&complete(3), 2);
        let comps = two_triangles.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].graph, complete(3));
        assert_eq!(comps[1].labels, vec![4, 5, 6]);
        assert!(!two_triangles.is_connected());
        assert!(star(4).is_tree());
        assert!(!cycle(4).is_tree());
    }

    #[test]
    fn complete_multipartite_recognition() {
        assert_eq!(complete_multipartite(&[2, 3]).is_complete_multipartite(), Some(vec![3, 2]));
        assert_eq!(complete(4).is_complete_multipartite(), Some(vec![1, 1, 1, 1]));
        assert_eq!(path(4).is_complete_multipartite(), None);
        assert_eq!(TGraph::empty(3).is_complete_multipartite(), Some(vec![3]));
        assert_eq!(copies(&complete(2), 2).is_complete_multipartite(), None);
    }

    #[test]
    fn p4_freeness() {
        assert!(!path(4).is_p4_free());
        assert!(!cycle(5).is_p4_free());
        assert!(cycle(4).is_p4_free());
        for parts in [vec![1, 2], vec![2, 2, 3], vec![1, 1, 1, 4], vec![5]] {
            assert!(complete_multipartite(&parts).is_p4_free());
        }
    }

    #[test]
    fn constructors() {
        let g = join(&complete(1), &disjoint_union(&complete(2), &TGraph::empty(2)));
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.degree(1), 4);
        assert_eq!(cycle(3), complete(3));
        assert_eq!(complete_multipartite(&[1, 1, 1, 1]), complete(4));
        assert_eq!(complete_multipartite(&[1, 3]), star(4));
        let l = ladder_p3_k2();
        assert_eq!((l.n(), l.edge_count()), (6, 7));
        let p = prism();
        assert!(p.is_regular(3) && p.is_connected());
    }
}
