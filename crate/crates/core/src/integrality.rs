//! Spectra of `Cay(S_n, T)` and the staged integrality decision.
//!
//! The adjacency operator of `Cay(S_n, T)` decomposes as a direct sum over
//! partitions `α ⊢ n` of `A_α = Σ_{t∈T} ρ_α(t)`, each repeated `f_α` times,
//! so `χ_A = Π χ_{A_α}^{f_α}`. Every block is computed exactly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{char_poly, integer_root_split, IntPolynomial};
use crate::perm::{all_permutations, Transposition};
use crate::reps::{irreps_for, Irrep, Partition};
use crate::tgraph::{gcm_decompose, TGraph};

/// Largest `n` the representation pipeline accepts by default.
pub const DEFAULT_MAX_N: usize = 8;

/// Largest `n` the brute-force oracle accepts (`n!` vertices).
pub const ORACLE_MAX_N: usize = 7;

/// One representation block `A_α`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub partition: Partition,
    pub dimension: usize,
    pub char_poly: IntPolynomial,
    pub roots: BTreeMap<i64, usize>,
    pub remainder: IntPolynomial,
}

/// A block whose characteristic polynomial has a factor without integer roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub partition: Partition,
    pub dimension: usize,
    pub factor: IntPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub n: usize,
    pub transpositions: Vec<Transposition>,
    /// Eigenvalue search bound; `Cay(S_n, T)` is `|T|`-regular.
    pub root_bound: u64,
    pub integral: bool,
    /// Eigenvalue -> multiplicity, present only when integral.
    pub spectrum: Option<BTreeMap<i64, u64>>,
    pub witness: Option<Witness>,
    pub per_partition: Vec<BlockReport>,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn validate(n: usize, ts: &[Transposition]) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidPermutation("S_0 has no points".into()));
    }
    let mut seen = BTreeSet::new();
    for t in ts {
        if t.j() > n {
            return Err(Error::InvalidTransposition(t.i(), t.j(), n));
        }
        if !seen.insert(*t) {
            return Err(Error::InvalidPermutation(format!("{t} listed twice")));
        }
    }
    Ok(())
}

fn block(irrep: &Irrep, ts: &[Transposition]) -> Result<BlockReport> {
    let a = irrep.sum_over(ts)?;
    let cp = char_poly(&a)?;
    // trace check: coefficient of x^(d-1) is -|T| χ((1,2))
    let d = irrep.dimension();
    if d >= 1 && irrep.n() >= 2 {
        let expected = -(ts.len() as i64) * irrep.character_on_transposition()?;
        if cp.coeffs()[d - 1] != BigInt::from(expected) {
            return Err(Error::Inconsistency(format!(
                "trace of A_{} disagrees with the character value",
                irrep.partition()
            )));
        }
    }
    let split = integer_root_split(&cp, ts.len() as u64);
    Ok(BlockReport {
        partition: irrep.partition().clone(),
        dimension: d,
        char_poly: cp,
        roots: split.roots,
        remainder: split.remainder,
    })
}

/// Full spectrum of `Cay(S_n, T)` from the irreducible representations.
pub fn cayley_spectrum(n: usize, ts: &[Transposition]) -> Result<SpectrumReport> {
    cayley_spectrum_capped(n, ts, DEFAULT_MAX_N)
}

pub fn cayley_spectrum_capped(
    n: usize,
    ts: &[Transposition],
    max_n: usize,
) -> Result<SpectrumReport> {
    validate(n, ts)?;
    if n > max_n {
        return Err(Error::Capacity(format!(
            "representation pipeline limited to n <= {max_n}, got n = {n}"
        )));
    }
    let table = irreps_for(n)?;
    // blocks are independent; collect keeps partition order
    let per_partition: Vec<BlockReport> = table
        .irreps()
        .par_iter()
        .map(|irrep| block(irrep, ts))
        .collect::<Result<_>>()?;

    let witness = per_partition
        .iter()
        .find(|b| !b.remainder.is_one())
        .map(|b| Witness {
            partition: b.partition.clone(),
            dimension: b.dimension,
            factor: b.remainder.clone(),
        });
    let integral = witness.is_none();
    let spectrum = integral.then(|| {
        let mut s = BTreeMap::new();
        for b in &per_partition {
            for (&l, &m) in &b.roots {
                *s.entry(l).or_insert(0u64) += (m * b.dimension) as u64;
            }
        }
        s
    });
    let report = SpectrumReport {
        n,
        transpositions: ts.to_vec(),
        root_bound: ts.len() as u64,
        integral,
        spectrum,
        witness,
        per_partition,
    };
    if let Some(s) = &report.spectrum {
        check_trace_identities(n, ts.len(), s)?;
    }
    Ok(report)
}

/// `Σ m = n!`, `Σ λ m = 0`, `Σ λ² m = n! |T|`, and `±|T|` both occur when
/// `T` is nonempty.
fn check_trace_identities(n: usize, t: usize, s: &BTreeMap<i64, u64>) -> Result<()> {
    let total: u64 = s.values().sum();
    let first: i128 = s.iter().map(|(&l, &m)| l as i128 * m as i128).sum();
    let second: i128 = s.iter().map(|(&l, &m)| (l * l) as i128 * m as i128).sum();
    let nf = factorial(n);
    let ok = total == nf
        && first == 0
        && second == nf as i128 * t as i128
        && (t == 0 || (s.contains_key(&(t as i64)) && s.contains_key(&-(t as i64))));
    if ok {
        Ok(())
    } else {
        Err(Error::Inconsistency(format!(
            "spectrum violates trace identities (Σm={total}, Σλm={first}, Σλ²m={second})"
        )))
    }
}

/// `{q_α with multiplicity f_α²}`: the spectrum when `T` is every
/// transposition.
pub fn complete_graph_spectrum(n: usize) -> Result<BTreeMap<i64, u64>> {
    if n < 2 {
        return Err(Error::InvalidPartition("need n >= 2".into()));
    }
    let table = irreps_for(n)?;
    let mut s = BTreeMap::new();
    for irrep in table.irreps() {
        let f = irrep.dimension() as u64;
        *s.entry(irrep.q_alpha()?).or_insert(0) += f * f;
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Integral,
    NonIntegral,
}

impl Outcome {
    pub fn from_bool(integral: bool) -> Self {
        if integral {
            Outcome::Integral
        } else {
            Outcome::NonIntegral
        }
    }

    pub fn is_integral(self) -> bool {
        self == Outcome::Integral
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Integral => "integral",
            Outcome::NonIntegral => "non-integral",
        })
    }
}

/// Which stage produced the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionPath {
    /// `G_T` is not Laplacian integral, so the Cayley graph cannot be integral.
    LaplacianPrefilterFail,
    /// `G_T` is a generalized complete multipartite graph, which is sufficient.
    GcmSufficient,
    FullRepresentation,
    BruteForceOracle,
}

impl fmt::Display for DecisionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecisionPath::LaplacianPrefilterFail => "laplacian-prefilter-fail",
            DecisionPath::GcmSufficient => "gcm-sufficient",
            DecisionPath::FullRepresentation => "full-representation",
            DecisionPath::BruteForceOracle => "brute-force-oracle",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub result: Outcome,
    pub path: DecisionPath,
    pub detail: String,
    pub laplacian_integral: bool,
    /// Integer-rootless factor of the Laplacian characteristic polynomial.
    pub laplacian_remainder: Option<IntPolynomial>,
    /// Minimal GCM type, when `G_T` is one.
    pub gcm_type: Option<usize>,
    /// Vertex count after dropping isolated vertices of `G_T`.
    pub reduced_n: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    /// Run the representation stage even when a structural stage decides.
    pub force_full: bool,
    pub max_n: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            force_full: false,
            max_n: DEFAULT_MAX_N,
        }
    }
}

/// Staged decision: Laplacian prefilter, then the GCM sufficient condition,
/// then the full representation computation.
pub fn is_integral(n: usize, ts: &[Transposition]) -> Result<Verdict> {
    is_integral_with(n, ts, CheckOptions::default())
}

pub fn is_integral_with(n: usize, ts: &[Transposition], opts: CheckOptions) -> Result<Verdict> {
    validate(n, ts)?;
    let g = TGraph::from_transpositions(n, ts)?;
    let (reduced, _) = g.strip_isolated();
    let lap = g.is_laplacian_integral()?;
    let gcm = gcm_decompose(&g);
    let mut verdict = Verdict {
        result: Outcome::Integral,
        path: DecisionPath::FullRepresentation,
        detail: String::new(),
        laplacian_integral: lap.integral,
        laplacian_remainder: (!lap.integral).then(|| lap.remainder.clone()),
        gcm_type: gcm.as_ref().map(|t| t.type_number),
        reduced_n: reduced.n(),
        witness: None,
    };

    if !opts.force_full {
        if !lap.integral {
            verdict.result = Outcome::NonIntegral;
            verdict.path = DecisionPath::LaplacianPrefilterFail;
            verdict.detail = format!(
                "Laplacian characteristic polynomial has integer-rootless factor {}",
                lap.remainder
            );
            return Ok(verdict);
        }
        if let Some(t) = &gcm {
            verdict.path = DecisionPath::GcmSufficient;
            verdict.detail = format!(
                "transposition graph is generalized complete multipartite of type {}",
                t.type_number
            );
            return Ok(verdict);
        }
    }

    // isolated vertices add no transpositions: Cay(S_n, T) is a disjoint
    // union of copies of Cay(S_m, T) on the reduced point set
    let reduced_ts = reduced.transpositions();
    let report = if reduced.n() == 0 {
        None
    } else {
        Some(cayley_spectrum_capped(reduced.n(), &reduced_ts, opts.max_n)?)
    };
    let integral = report.as_ref().is_none_or(|r| r.integral);
    verdict.result = Outcome::from_bool(integral);
    verdict.path = DecisionPath::FullRepresentation;
    verdict.witness = report.and_then(|r| r.witness);
    verdict.detail = match &verdict.witness {
        None if reduced.n() == 0 => "no transpositions: the Cayley graph has no edges".into(),
        None => format!("all {} representation blocks split over the integers", reduced.n()),
        Some(w) => format!(
            "block {} (dimension {}) has integer-rootless factor {}",
            w.partition, w.dimension, w.factor
        ),
    };
    if integral && !lap.integral {
        return Err(Error::Inconsistency(
            "integral Cayley graph with a non-Laplacian-integral transposition graph".into(),
        ));
    }
    if !integral && gcm.is_some() {
        return Err(Error::Inconsistency(
            "generalized complete multipartite transposition graph gave a non-integral Cayley graph"
                .into(),
        ));
    }
    Ok(verdict)
}

/// Evidence from the brute-force oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub integral: bool,
    pub trials: usize,
    pub seed: u64,
    /// For a non-integral verdict: the trial whose vector survived and the
    /// squared Euclidean norm of `Π (A - λI) v`, in decimal.
    pub certificate: Option<OracleCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCertificate {
    pub trial: usize,
    pub nonzero_entries: usize,
    pub squared_norm: String,
}

/// Tests whether `Π_{λ=-|T|}^{|T|} (A - λI)` annihilates random integer
/// vectors, with `A` the adjacency matrix of `Cay(S_n, T)` built explicitly
/// on `n!` vertices. A surviving nonzero vector certifies a non-integer
/// eigenvalue; annihilation of every trial means integral up to a negligible
/// one-sided error.
pub fn brute_force_integrality(
    n: usize,
    ts: &[Transposition],
    trials: usize,
    seed: u64,
) -> Result<OracleResult> {
    validate(n, ts)?;
    if n > ORACLE_MAX_N {
        return Err(Error::Capacity(format!(
            "brute-force oracle limited to n <= {ORACLE_MAX_N}, got n = {n}"
        )));
    }
    if trials == 0 {
        return Err(Error::Capacity("at least one oracle trial is required".into()));
    }
    let perms = all_permutations(n);
    // g ~ h iff g h^{-1} ∈ T; h = t g swaps two positions of g's one-line form
    let adjacency: Vec<Vec<usize>> = perms
        .par_iter()
        .map(|g| {
            let imgs = g.zero_based();
            ts.iter()
                .map(|t| {
                    let mut h = imgs.to_vec();
                    h.swap(t.i() - 1, t.j() - 1);
                    crate::perm::Permutation::from_zero_based(h).lehmer_rank()
                })
                .collect()
        })
        .collect();
    let bound = ts.len() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let mut v: Vec<BigInt> = (0..perms.len())
            .map(|_| BigInt::from(rng.gen_range(0u32..1 << 16)))
            .collect();
        for lambda in -bound..=bound {
            let l = BigInt::from(lambda);
            v = adjacency
                .par_iter()
                .enumerate()
                .map(|(row, nbrs)| {
                    let s: BigInt = nbrs.iter().map(|&c| &v[c]).sum();
                    s - &l * &v[row]
                })
                .collect();
        }
        let nonzero = v.iter().filter(|x| !x.is_zero()).count();
        if nonzero > 0 {
            let norm: BigInt = v.iter().map(|x| x.abs().pow(2)).sum();
            return Ok(OracleResult {
                integral: false,
                trials: trial + 1,
                seed,
                certificate: Some(OracleCertificate {
                    trial,
                    nonzero_entries: nonzero,
                    squared_norm: norm.to_string(),
                }),
            });
        }
    }
    Ok(OracleResult {
        integral: true,
        trials,
        seed,
        certificate: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tgraph::families::*;

    fn ts(g: &TGraph) -> Vec<Transposition> {
        g.transpositions()
    }

    #[test]
    fn star_on_three_points_is_the_hexagon() {
        let g = star(3);
        let r = cayley_spectrum(3, &ts(&g)).unwrap();
        assert!(r.integral);
        assert_eq!(
            r.spectrum.unwrap(),
            BTreeMap::from([(-2, 1), (-1, 2), (1, 2), (2, 1)])
        );
    }

    #[test]
    fn all_transpositions_on_three_points() {
        let r = cayley_spectrum(3, &ts(&complete(3))).unwrap();
        assert_eq!(r.spectrum.unwrap(), BTreeMap::from([(-3, 1), (0, 4), (3, 1)]));
        assert_eq!(
            complete_graph_spectrum(3).unwrap(),
            BTreeMap::from([(-3, 1), (0, 4), (3, 1)])
        );
        assert_eq!(
            complete_graph_spectrum(2).unwrap(),
            BTreeMap::from([(-1, 1), (1, 1)])
        );
    }

    #[test]
    fn empty_generating_set() {
        let r = cayley_spectrum(3, &[]).unwrap();
        assert!(r.integral);
        assert_eq!(r.spectrum.unwrap(), BTreeMap::from([(0, 6)]));
        let v = is_integral(4, &[]).unwrap();
        assert_eq!(v.result, Outcome::Integral);
    }

    #[test]
    fn input_validation() {
        let t = Transposition::new(1, 5).unwrap();
        assert!(cayley_spectrum(4, &[t]).is_err());
        assert!(cayley_spectrum(5, &[t, t]).is_err());
        assert!(matches!(
            cayley_spectrum(9, &[t]),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            brute_force_integrality(8, &[t], 1, 0),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn staged_paths() {
        let v = is_integral(4, &ts(&path(4))).unwrap();
        assert_eq!((v.result, v.path), (Outcome::NonIntegral, DecisionPath::LaplacianPrefilterFail));
        let v = is_integral(5, &ts(&complete_multipartite(&[2, 3]))).unwrap();
        assert_eq!((v.result, v.path), (Outcome::Integral, DecisionPath::GcmSufficient));
        let v = is_integral(5, &ts(&cycle(5))).unwrap();
        assert_eq!(v.result, Outcome::NonIntegral);
    }

    #[test]
    fn isolated_vertices_are_stripped() {
        let g = add_isolated(&cycle(5), 2);
        let opts = CheckOptions {
            force_full: true,
            ..Default::default()
        };
        let v = is_integral_with(7, &ts(&g), opts).unwrap();
        assert_eq!(v.reduced_n, 5);
        assert_eq!(v.result, Outcome::NonIntegral);
        assert_eq!(v.path, DecisionPath::FullRepresentation);
    }

    #[test]
    fn oracle_small_cases() {
        assert!(brute_force_integrality(3, &ts(&star(3)), 3, 1).unwrap().integral);
        assert!(brute_force_integrality(4, &ts(&complete(4)), 2, 1).unwrap().integral);
        let r = brute_force_integrality(5, &ts(&cycle(5)), 3, 1).unwrap();
        assert!(!r.integral);
        assert!(r.certificate.unwrap().nonzero_entries > 0);
    }
}
