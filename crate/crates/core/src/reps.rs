//! Irreducible representations of `S_n` in Young's seminormal form.
//!
//! Every partition `α ⊢ n` gets a basis indexed by the standard Young
//! tableaux of shape `α` (in last-letter order), and each adjacent
//! transposition `s_k = (k, k+1)` acts by an exact rational matrix with at
//! most two nonzero entries per row.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{to_i64, RationalMatrix};
use crate::perm::Transposition;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The transposed shape.
    pub fn conjugate(&self) -> Partition {
        let parts = (0..self.parts[0])
            .map(|c| self.parts.iter().take_while(|&&p| p > c).count())
            .collect();
        Partition { parts }
    }

    /// `f_α = n! / Π hook lengths`, the degree of the representation.
    pub fn dimension(&self) -> usize {
        let conj = self.conjugate();
        let mut num: u128 = (1..=self.size() as u128).product();
        let mut hooks: u128 = 1;
        for (r, &len) in self.parts.iter().enumerate() {
            for c in 0..len {
                let arm = len - c - 1;
                let leg = conj.parts[c] - r - 1;
                hooks *= (arm + leg + 1) as u128;
                // keep numbers small for larger n
                let g = gcd(num, hooks);
                num /= g;
                hooks /= g;
            }
        }
        debug_assert_eq!(hooks, 1);
        num as usize
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n` in reverse lexicographic order, starting at `(n)`
/// and ending at `(1^n)`.
pub fn partitions_of(n: usize) -> Result<Vec<Partition>> {
    if n == 0 {
        return Err(Error::InvalidPartition("n must be positive".into()));
    }
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    Ok(out)
}

/// A filling of a shape with `1..=n`, increasing along rows and columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
    // (row, col) of entry k+1, 0-indexed
    position: Vec<(usize, usize)>,
}

impl StandardTableau {
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// 0-indexed (row, column) of entry `k`.
    pub fn position(&self, k: usize) -> (usize, usize) {
        self.position[k - 1]
    }

    /// Content `col - row` of the cell holding `k`.
    pub fn content(&self, k: usize) -> i64 {
        let (r, c) = self.position(k);
        c as i64 - r as i64
    }

    fn from_rows(rows: Vec<Vec<usize>>) -> Self {
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut position = vec![(0, 0); n];
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                position[v - 1] = (r, c);
            }
        }
        StandardTableau { rows, position }
    }

    fn swapped(&self, k: usize) -> StandardTableau {
        let mut rows = self.rows.clone();
        let (r1, c1) = self.position(k);
        let (r2, c2) = self.position(k + 1);
        rows[r1][c1] = k + 1;
        rows[r2][c2] = k;
        StandardTableau::from_rows(rows)
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rows.join(" / "))
    }
}

/// Standard tableaux of shape `α` in last-letter order: sorted
/// lexicographically by the row of `n`, then the row of `n-1`, and so on.
pub fn standard_tableaux(alpha: &Partition) -> Vec<StandardTableau> {
    fn go(shape: &mut Vec<usize>, n: usize) -> Vec<Vec<Vec<usize>>> {
        if n == 0 {
            return vec![shape.iter().map(|_| Vec::new()).collect()];
        }
        let mut out = Vec::new();
        for r in 0..shape.len() {
            let removable = shape[r] > 0 && (r + 1 == shape.len() || shape[r + 1] < shape[r]);
            if !removable {
                continue;
            }
            shape[r] -= 1;
            for mut rows in go(shape, n - 1) {
                rows[r].push(n);
                out.push(rows);
            }
            shape[r] += 1;
        }
        out
    }
    let mut shape = alpha.parts.clone();
    go(&mut shape, alpha.size())
        .into_iter()
        .map(StandardTableau::from_rows)
        .collect()
}

/// The irreducible representation indexed by a partition, with all
/// generator images precomputed.
#[derive(Clone, Debug)]
pub struct Irrep {
    partition: Partition,
    tableaux: Vec<StandardTableau>,
    generators: Vec<RationalMatrix>,
}

impl Irrep {
    pub fn new(partition: Partition) -> Self {
        let tableaux = standard_tableaux(&partition);
        let n = partition.size();
        let generators = (1..n)
            .map(|k| build_generator(&tableaux, k))
            .collect();
        Irrep {
            partition,
            tableaux,
            generators,
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn n(&self) -> usize {
        self.partition.size()
    }

    pub fn dimension(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[StandardTableau] {
        &self.tableaux
    }

    /// Image of `s_k = (k, k+1)` for `1 <= k <= n-1`.
    pub fn generator(&self, k: usize) -> Result<&RationalMatrix> {
        if k == 0 || k >= self.n() {
            return Err(Error::GeneratorOutOfRange {
                k,
                max: self.n().saturating_sub(1),
            });
        }
        Ok(&self.generators[k - 1])
    }

    /// Image of an arbitrary transposition, by conjugating `s_i` along
    /// `s_{i+1}, ..., s_{j-1}`.
    pub fn transposition(&self, t: &Transposition) -> Result<RationalMatrix> {
        if t.j() > self.n() {
            return Err(Error::InvalidTransposition(t.i(), t.j(), self.n()));
        }
        let mut m = self.generators[t.i() - 1].clone();
        for k in t.i() + 1..t.j() {
            let g = &self.generators[k - 1];
            m = g.mul(&m)?.mul(g)?;
        }
        Ok(m)
    }

    /// `Σ_{t ∈ T} ρ(t)`.
    pub fn sum_over(&self, ts: &[Transposition]) -> Result<RationalMatrix> {
        let mut acc = RationalMatrix::zeros(self.dimension());
        for t in ts {
            acc.add_assign(&self.transposition(t)?)?;
        }
        Ok(acc)
    }

    /// `χ^α((1,2))`.
    pub fn character_on_transposition(&self) -> Result<i64> {
        if self.n() < 2 {
            return Err(Error::InvalidPartition(
                "no transpositions in S_1".into(),
            ));
        }
        let tr = self.generators[0].trace();
        to_i64(&tr).ok_or_else(|| {
            Error::Inconsistency(format!("character value {tr} is not an integer"))
        })
    }

    /// `q_α = n(n-1) χ^α((1,2)) / (2 f_α)`, the eigenvalue of the sum of all
    /// transpositions on this representation.
    pub fn q_alpha(&self) -> Result<i64> {
        let n = self.n() as i64;
        let num = n * (n - 1) * self.character_on_transposition()?;
        let den = 2 * self.dimension() as i64;
        if num % den != 0 {
            return Err(Error::Inconsistency(format!(
                "q_alpha for {} is {num}/{den}, not an integer",
                self.partition
            )));
        }
        Ok(num / den)
    }
}

fn build_generator(tableaux: &[StandardTableau], k: usize) -> RationalMatrix {
    let d = tableaux.len();
    let index: HashMap<&Vec<Vec<usize>>, usize> =
        tableaux.iter().enumerate().map(|(i, t)| (&t.rows, i)).collect();
    let mut m = RationalMatrix::zeros(d);
    for (a, t) in tableaux.iter().enumerate() {
        let (r1, c1) = t.position(k);
        let (r2, c2) = t.position(k + 1);
        if r1 == r2 {
            m[(a, a)] = BigRational::one();
            continue;
        }
        if c1 == c2 {
            m[(a, a)] = -BigRational::one();
            continue;
        }
        let r = t.content(k + 1) - t.content(k);
        let inv = BigRational::new(BigInt::one(), BigInt::from(r));
        let b = index[&t.swapped(k).rows];
        // column a is the image of basis vector a
        m[(b, a)] = if r > 0 {
            BigRational::one()
        } else {
            BigRational::one() - &inv * &inv
        };
        m[(a, a)] = inv;
    }
    m
}

/// All irreducible representations of `S_n`, one per partition, in
/// [`partitions_of`] order.
#[derive(Debug)]
pub struct IrrepTable {
    n: usize,
    irreps: Vec<Irrep>,
}

impl IrrepTable {
    pub fn build(n: usize) -> Result<Self> {
        let irreps = partitions_of(n)?
            .into_par_iter()
            .map(Irrep::new)
            .collect();
        Ok(IrrepTable { n, irreps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }
}

static TABLES: OnceLock<RwLock<HashMap<usize, Arc<IrrepTable>>>> = OnceLock::new();

/// Shared, lazily built table for `S_n`. Concurrent readers never block
/// each other; a missing table is built outside the lock and inserted once.
pub fn irreps_for(n: usize) -> Result<Arc<IrrepTable>> {
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.read().unwrap().get(&n) {
        return Ok(Arc::clone(t));
    }
    let built = Arc::new(IrrepTable::build(n)?);
    let mut w = tables.write().unwrap();
    Ok(Arc::clone(w.entry(n).or_insert(built)))
}

/// Convenience wrappers mirroring the per-partition operations.
pub fn seminormal_generator(alpha: &Partition, k: usize) -> Result<RationalMatrix> {
    Irrep::new(alpha.clone()).generator(k).cloned()
}

pub fn rep_of_transposition(alpha: &Partition, t: &Transposition) -> Result<RationalMatrix> {
    Irrep::new(alpha.clone()).transposition(t)
}

pub fn rep_sum(alpha: &Partition, ts: &[Transposition]) -> Result<RationalMatrix> {
    Irrep::new(alpha.clone()).sum_over(ts)
}

pub fn character_on_transposition(alpha: &Partition) -> Result<i64> {
    Irrep::new(alpha.clone()).character_on_transposition()
}

pub fn q_alpha(alpha: &Partition) -> Result<i64> {
    Irrep::new(alpha.clone()).q_alpha()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::char_poly;
    use num_traits::Zero;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn tr(i: usize, j: usize) -> Transposition {
        Transposition::new(i, j).unwrap()
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![]).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(p(&[3, 1, 1]).conjugate().conjugate(), p(&[3, 1, 1]));
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }

    #[test]
    fn partition_counts_and_order() {
        assert_eq!(partitions_of(1).unwrap(), vec![p(&[1])]);
        let four = partitions_of(4).unwrap();
        assert_eq!(
            four,
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
        assert_eq!(partitions_of(6).unwrap().len(), 11);
        assert_eq!(partitions_of(8).unwrap().len(), 22);
        assert!(partitions_of(0).is_err());
    }

    #[test]
    fn hook_dimension_matches_tableau_count() {
        assert_eq!(p(&[5]).dimension(), 1);
        assert_eq!(p(&[2, 1]).dimension(), 2);
        for n in 1..=8 {
            let mut sum = 0;
            for a in partitions_of(n).unwrap() {
                let f = a.dimension();
                assert_eq!(standard_tableaux(&a).len(), f, "{a}");
                sum += f * f;
            }
            assert_eq!(sum, factorial(n));
        }
    }

    #[test]
    fn tableaux_are_standard_and_ordered() {
        assert_eq!(standard_tableaux(&p(&[4])).len(), 1);
        let two_one = standard_tableaux(&p(&[2, 1]));
        assert_eq!(two_one.len(), 2);
        assert_eq!(two_one[0].to_string(), "1 3 / 2");
        assert_eq!(two_one[1].to_string(), "1 2 / 3");
        assert_eq!(standard_tableaux(&p(&[3, 3])).len(), 5);
        for t in standard_tableaux(&p(&[3, 2, 1])) {
            for row in t.rows() {
                assert!(row.windows(2).all(|w| w[0] < w[1]));
            }
            for (r, row) in t.rows().iter().enumerate().skip(1) {
                for (c, v) in row.iter().enumerate() {
                    assert!(t.rows()[r - 1][c] < *v);
                }
            }
        }
    }

    #[test]
    fn one_dimensional_representations() {
        for k in 1..5 {
            assert_eq!(seminormal_generator(&p(&[5]), k).unwrap(), RationalMatrix::identity(1));
            assert_eq!(
                seminormal_generator(&p(&[1, 1, 1, 1, 1]), k).unwrap(),
                RationalMatrix::identity(1).scale(&-BigRational::one())
            );
        }
        assert!(matches!(
            seminormal_generator(&p(&[3]), 3),
            Err(Error::GeneratorOutOfRange { k: 3, max: 2 })
        ));
        assert!(seminormal_generator(&p(&[3]), 0).is_err());
    }

    #[test]
    fn two_one_generator() {
        let g = seminormal_generator(&p(&[2, 1]), 1).unwrap();
        assert_eq!(g.dim(), 2);
        assert!(g.trace().is_zero());
        assert!(g.mul(&g).unwrap().is_identity());
    }

    #[test]
    fn coxeter_relations_hold_exactly() {
        for n in 2..=6 {
            for a in partitions_of(n).unwrap() {
                let irrep = Irrep::new(a.clone());
                let g: Vec<_> = (1..n).map(|k| irrep.generator(k).unwrap()).collect();
                for k in 0..n - 1 {
                    assert!(g[k].mul(g[k]).unwrap().is_identity(), "{a} s_{}", k + 1);
                    for j in k + 2..n - 1 {
                        assert_eq!(g[k].mul(g[j]).unwrap(), g[j].mul(g[k]).unwrap());
                    }
                    if k + 1 < n - 1 {
                        let lhs = g[k].mul(g[k + 1]).unwrap().mul(g[k]).unwrap();
                        let rhs = g[k + 1].mul(g[k]).unwrap().mul(g[k + 1]).unwrap();
                        assert_eq!(lhs, rhs, "{a} braid at {}", k + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn transpositions_are_involutions_with_constant_trace() {
        for n in 2..=6 {
            for a in partitions_of(n).unwrap() {
                let irrep = Irrep::new(a.clone());
                let chi = irrep.character_on_transposition().unwrap();
                for i in 1..n {
                    for j in i + 1..=n {
                        let m = irrep.transposition(&tr(i, j)).unwrap();
                        assert!(m.mul(&m).unwrap().is_identity());
                        assert_eq!(m.trace(), BigRational::from_integer(chi.into()));
                    }
                }
                assert_eq!(
                    irrep.transposition(&tr(1, 2)).unwrap(),
                    *irrep.generator(1).unwrap()
                );
            }
        }
    }

    #[test]
    fn characters_and_q_alpha() {
        assert_eq!(character_on_transposition(&p(&[4])).unwrap(), 1);
        assert_eq!(character_on_transposition(&p(&[1, 1, 1, 1])).unwrap(), -1);
        assert_eq!(character_on_transposition(&p(&[2, 1])).unwrap(), 0);
        assert!(character_on_transposition(&p(&[1])).is_err());
        assert_eq!(q_alpha(&p(&[5])).unwrap(), 10);
        assert_eq!(q_alpha(&p(&[1, 1, 1, 1, 1])).unwrap(), -10);
        assert_eq!(q_alpha(&p(&[2, 1])).unwrap(), 0);
    }

    #[test]
    fn q_alpha_equals_content_sum() {
        // independent classical formula: sum of (col - row) over the cells
        for n in 2..=7 {
            for a in partitions_of(n).unwrap() {
                let contents: i64 = a
                    .parts()
                    .iter()
                    .enumerate()
                    .flat_map(|(r, &len)| (0..len).map(move |c| c as i64 - r as i64))
                    .sum();
                assert_eq!(q_alpha(&a).unwrap(), contents, "{a}");
            }
        }
    }

    #[test]
    fn rep_sum_edge_cases() {
        let a = p(&[3, 2]);
        let z = rep_sum(&a, &[]).unwrap();
        assert!(z.dim() == 5 && z.is_zero());
        let ts = [tr(1, 2), tr(2, 4), tr(1, 5)];
        let one = BigRational::one();
        assert_eq!(
            rep_sum(&p(&[5]), &ts).unwrap(),
            RationalMatrix::identity(1).scale(&(&one * BigRational::from_integer(3.into())))
        );
        assert_eq!(
            rep_sum(&p(&[1, 1, 1, 1, 1]), &ts).unwrap(),
            RationalMatrix::identity(1).scale(&BigRational::from_integer((-3).into()))
        );
        assert!(rep_of_transposition(&p(&[2, 1]), &tr(1, 4)).is_err());
    }

    #[test]
    fn complete_sum_is_scalar() {
        // the class sum of all transpositions is central, so acts as q_alpha * I
        for a in partitions_of(5).unwrap() {
            let irrep = Irrep::new(a.clone());
            let all: Vec<_> = (1..=5)
                .flat_map(|i| (i + 1..=5).map(move |j| tr(i, j)))
                .collect();
            let s = irrep.sum_over(&all).unwrap();
            let q = BigRational::from_integer(irrep.q_alpha().unwrap().into());
            assert_eq!(s, RationalMatrix::identity(irrep.dimension()).scale(&q));
            let cp = char_poly(&s).unwrap();
            assert_eq!(cp.degree(), irrep.dimension());
        }
    }

    #[test]
    fn shared_table_is_reused() {
        let a = irreps_for(5).unwrap();
        let b = irreps_for(5).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(a.irreps().len(), 7);
    }
}
