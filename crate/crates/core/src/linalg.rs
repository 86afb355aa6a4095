//! Exact matrices over the integers and rationals, characteristic
//! polynomials, and integer-root splitting of monic integer polynomials.
//!
//! Nothing here touches floating point.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Small dense square integer matrix (permutation matrices, Laplacians).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix {
            dim,
            data: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch("matrix rows are not square".into()));
        }
        Ok(IntMatrix {
            dim,
            data: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix> {
        check_dims(self.dim, other.dim)?;
        Ok(IntMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<IntMatrix> {
        check_dims(self.dim, other.dim)?;
        Ok(IntMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: i64) -> IntMatrix {
        IntMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        check_dims(self.dim, other.dim)?;
        let d = self.dim;
        let mut out = IntMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        check_dims(self.dim, v.len())?;
        Ok((0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .map(|&a| BigRational::from_integer(BigInt::from(a)))
                .collect(),
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.dim + j]
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!("{a} vs {b}")))
    }
}

/// Dense square matrix of arbitrary-precision rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    dim: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(dim: usize) -> Self {
        RationalMatrix {
            dim,
            data: vec![BigRational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(
                "matrix rows are empty or not square".into(),
            ));
        }
        Ok(RationalMatrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&a| BigRational::from_integer(a.into())).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        check_dims(self.dim, other.dim)?;
        Ok(RationalMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn add_assign(&mut self, other: &RationalMatrix) -> Result<()> {
        check_dims(self.dim, other.dim)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(())
    }

    pub fn sub(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        check_dims(self.dim, other.dim)?;
        Ok(RationalMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> RationalMatrix {
        RationalMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Matrix product. Zero entries are skipped on both sides, which makes
    /// products with the (very sparse) seminormal generators cheap.
    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        check_dims(self.dim, other.dim)?;
        let d = self.dim;
        let mut out = RationalMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * d + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        check_dims(self.dim, v.len())?;
        Ok((0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn trace(&self) -> BigRational {
        (0..self.dim).fold(BigRational::zero(), |acc, i| acc + &self[(i, i)])
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.data
            .iter()
            .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()))
    }
}

impl Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.dim + j]
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Monic polynomial with arbitrary-precision integer coefficients.
///
/// Coefficients are stored lowest degree first; the last one is always 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// From coefficients, lowest degree first. The polynomial must be monic.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        match coeffs.last() {
            Some(c) if c.is_one() => Ok(IntPolynomial { coeffs }),
            _ => Err(Error::Inconsistency(
                "polynomial is not monic".to_string(),
            )),
        }
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `Π (x - r)^m`.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = (&'a i64, &'a usize)>) -> Self {
        let mut p = Self::one();
        for (&r, &m) in roots {
            for _ in 0..m {
                p = p.mul(&IntPolynomial {
                    coeffs: vec![BigInt::from(-r), BigInt::one()],
                });
            }
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial { coeffs: out }
    }

    /// Quotient by `(x - r)` when `r` is a root.
    fn deflate(&self, r: &BigInt) -> Option<IntPolynomial> {
        let d = self.degree();
        if d == 0 {
            return None;
        }
        // synthetic division from the top
        let mut q = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for k in (1..=d).rev() {
            carry = carry * r + &self.coeffs[k];
            q[k - 1] = carry.clone();
        }
        let rem = carry * r + &self.coeffs[0];
        rem.is_zero().then_some(IntPolynomial { coeffs: q })
    }
}

impl From<IntPolynomial> for Vec<String> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for IntPolynomial {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        let coeffs = v
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.parse::<BigInt>()
                    .map_err(|e| Error::parse(i, format!("coefficient {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(coeffs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if !a.is_one() || k == 0 {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Characteristic polynomial `det(xI - M)` by Faddeev-LeVerrier.
///
/// Denominators are cleared first (`B = L*M` with `L` the lcm of the entry
/// denominators) so the recurrence runs over integers, where each step
/// divides exactly. The coefficient of `x^(d-k)` is then scaled back by
/// `L^k`. If that division is inexact, `M` did not have algebraic-integer
/// eigenvalues and an inconsistency error is returned instead of rounding.
pub fn char_poly(m: &RationalMatrix) -> Result<IntPolynomial> {
    let d = m.dim();
    let l = m.denominator_lcm();
    let b: Vec<BigInt> = m
        .entries()
        .iter()
        .map(|a| a.numer() * (&l / a.denom()))
        .collect();

    // coeffs[k] is the coefficient of x^(d-k) for B
    let mut coeffs = vec![BigInt::one()];
    let mut cur: Vec<BigInt> = vec![BigInt::zero(); d * d];
    for k in 1..=d {
        // cur <- B*cur + c_{k-1} I
        let mut next = vec![BigInt::zero(); d * d];
        if k > 1 {
            for i in 0..d {
                for t in 0..d {
                    let a = &b[i * d + t];
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..d {
                        let c = &cur[t * d + j];
                        if !c.is_zero() {
                            next[i * d + j] += a * c;
                        }
                    }
                }
            }
        }
        for i in 0..d {
            next[i * d + i] += &coeffs[k - 1];
        }
        cur = next;
        // tr(B*cur)
        let mut tr = BigInt::zero();
        for i in 0..d {
            for t in 0..d {
                let a = &b[i * d + t];
                if !a.is_zero() {
                    tr += a * &cur[t * d + i];
                }
            }
        }
        let kk = BigInt::from(k);
        let (q, r) = tr.div_rem(&kk);
        if !r.is_zero() {
            return Err(Error::Inconsistency(format!(
                "Faddeev-LeVerrier trace not divisible by {k}"
            )));
        }
        coeffs.push(-q);
    }

    let mut scale = BigInt::one();
    let mut out = vec![BigInt::zero(); d + 1];
    for (k, c) in coeffs.into_iter().enumerate() {
        let (q, r) = c.div_rem(&scale);
        if !r.is_zero() {
            return Err(Error::Inconsistency(format!(
                "characteristic polynomial coefficient of x^{} is not an integer",
                d - k
            )));
        }
        out[d - k] = q;
        scale *= &l;
    }
    IntPolynomial::from_coeffs(out)
}

/// Integer roots (with multiplicity) peeled off a monic polynomial, plus the
/// factor left over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRootSplit {
    pub roots: BTreeMap<i64, usize>,
    pub remainder: IntPolynomial,
}

impl IntRootSplit {
    pub fn splits_completely(&self) -> bool {
        self.remainder.is_one()
    }

    /// `Π (x - r)^m * remainder`.
    pub fn reconstruct(&self) -> IntPolynomial {
        IntPolynomial::from_roots(&self.roots).mul(&self.remainder)
    }
}

/// Divides out every integer root in `[-bound, bound]` to full multiplicity.
///
/// Callers guarantee all real roots lie inside the bound, so the remainder
/// has no integer roots at all.
pub fn integer_root_split(p: &IntPolynomial, bound: u64) -> IntRootSplit {
    let mut roots = BTreeMap::new();
    let mut rest = p.clone();
    let bound = bound.min(i64::MAX as u64) as i64;
    for lambda in -bound..=bound {
        if rest.is_one() {
            break;
        }
        let r = BigInt::from(lambda);
        // a nonzero integer root divides the constant term
        let c0 = &rest.coeffs[0];
        if lambda != 0 && !c0.is_zero() && !(c0 % &r).is_zero() {
            continue;
        }
        while let Some(q) = rest.deflate(&r) {
            *roots.entry(lambda).or_insert(0) += 1;
            rest = q;
        }
    }
    IntRootSplit {
        roots,
        remainder: rest,
    }
}

pub(crate) fn to_i64(x: &BigRational) -> Option<i64> {
    x.is_integer().then(|| x.to_integer().to_i64()).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_integer_rows(rows).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn char_poly_small_cases() {
        let p = char_poly(&RationalMatrix::identity(2)).unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[1, -2, 1]).unwrap());
        let p = char_poly(&ri(&[vec![0, 1], vec![1, 0]])).unwrap();
        assert_eq!(p, IntPolynomial::from_i64(&[-1, 0, 1]).unwrap());
        assert_eq!(p.to_string(), "x^2 - 1");
    }

    #[test]
    fn char_poly_with_rational_entries() {
        // similar to diag(1, -1) via a rational change of basis
        let m = RationalMatrix::from_rows(vec![
            vec![q(1, 2), q(3, 4)],
            vec![q(1, 1), q(-1, 2)],
        ])
        .unwrap();
        assert_eq!(
            char_poly(&m).unwrap(),
            IntPolynomial::from_i64(&[-1, 0, 1]).unwrap()
        );
    }

    #[test]
    fn char_poly_rejects_non_integral_spectrum() {
        let m = RationalMatrix::from_rows(vec![vec![q(1, 2)]]).unwrap();
        assert!(matches!(char_poly(&m), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn root_split_examples() {
        let p = IntPolynomial::from_i64(&[-1, 0, 1]).unwrap();
        let s = integer_root_split(&p, 1);
        assert_eq!(s.roots, BTreeMap::from([(-1, 1), (1, 1)]));
        assert!(s.splits_completely());

        let p = IntPolynomial::from_i64(&[-12, 2, 1]).unwrap();
        let s = integer_root_split(&p, 2);
        assert!(s.roots.is_empty());
        assert_eq!(s.remainder, p);
    }

    #[test]
    fn root_split_laplacian_of_hexagon() {
        let mut l = vec![vec![0i64; 6]; 6];
        for i in 0..6 {
            l[i][i] = 2;
            l[i][(i + 1) % 6] = -1;
            l[(i + 1) % 6][i] = -1;
        }
        let s = integer_root_split(&char_poly(&ri(&l)).unwrap(), 12);
        assert_eq!(s.roots, BTreeMap::from([(0, 1), (1, 2), (3, 2), (4, 1)]));
        assert!(s.splits_completely());
    }

    #[test]
    fn root_split_keeps_multiplicity_and_zero() {
        let roots = BTreeMap::from([(0i64, 2usize), (-3, 1), (2, 3)]);
        let p = IntPolynomial::from_roots(&roots).mul(&IntPolynomial::from_i64(&[-2, 0, 1]).unwrap());
        let s = integer_root_split(&p, 5);
        assert_eq!(s.roots, roots);
        assert_eq!(s.remainder.to_string(), "x^2 - 2");
        assert_eq!(s.reconstruct(), p);
    }

    #[test]
    fn matrix_arithmetic() {
        let a = ri(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.add(&RationalMatrix::zeros(2)).unwrap(), a);
        let p = ri(&[vec![0, 1], vec![1, 0]]);
        assert!(p.mul(&p).unwrap().is_identity());
        assert!(a.add(&RationalMatrix::zeros(3)).is_err());
        assert!(a.mul(&RationalMatrix::identity(3)).is_err());
        let v = a.mul_vec(&[q(1, 1), q(1, 1)]).unwrap();
        assert_eq!(v, vec![q(3, 1), q(7, 1)]);
    }

    #[test]
    fn display_polynomial() {
        let p = IntPolynomial::from_i64(&[0, -12, -22, -7, 4, 1]).unwrap();
        assert_eq!(p.to_string(), "x^5 + 4x^4 - 7x^3 - 22x^2 - 12x");
        assert_eq!(IntPolynomial::one().to_string(), "1");
    }

    #[test]
    fn polynomial_json_round_trip() {
        let p = IntPolynomial::from_i64(&[-12, 2, 1]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["-12","2","1"]"#);
        assert_eq!(serde_json::from_str::<IntPolynomial>(&s).unwrap(), p);
        assert!(serde_json::from_str::<IntPolynomial>(r#"["1","2"]"#).is_err());
    }
}
