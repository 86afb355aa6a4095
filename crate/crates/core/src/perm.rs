//! Permutations of `[n] = {1, ..., n}` and transpositions.
//!
//! Points are 1-indexed at every public boundary. Composition applies the
//! left argument first: `compose(p, q)` sends `i` to `(i^p)^q`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A bijection of `[n]` stored in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-indexed images
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from 1-indexed one-line notation.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &v in images {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "image {v} outside 1..={n}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("image {v} repeated")));
            }
            seen[v - 1] = true;
            out.push(v - 1);
        }
        Ok(Permutation { images: out })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v)
        });
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `i^p` for a 1-indexed point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    /// 1-indexed one-line notation.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// Rank in lexicographic order of one-line notation, in `0..n!`.
    pub fn lehmer_rank(&self) -> usize {
        let n = self.images.len();
        let mut rank = 0usize;
        for i in 0..n {
            let smaller = self.images[i + 1..]
                .iter()
                .filter(|&&v| v < self.images[i])
                .count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v + 1)?;
        }
        write!(f, "]")
    }
}

/// The permutation `r` with `i^r = (i^p)^q`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    Ok(Permutation {
        images: p.images.iter().map(|&v| q.images[v]).collect(),
    })
}

/// `P` with `P[i][j] = 1` iff `i^p = j`.
pub fn permutation_matrix(p: &Permutation) -> IntMatrix {
    let n = p.degree();
    let mut m = IntMatrix::zeros(n);
    for (i, &j) in p.images.iter().enumerate() {
        m[(i, j)] = 1;
    }
    m
}

/// The transposition `(i, j)`, stored with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Transposition {
    i: usize,
    j: usize,
}

impl Transposition {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a == b {
            return Err(Error::InvalidTransposition(a, b, a.max(b)));
        }
        Ok(Transposition {
            i: a.min(b),
            j: a.max(b),
        })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn to_permutation(&self, n: usize) -> Result<Permutation> {
        if self.j > n {
            return Err(Error::InvalidTransposition(self.i, self.j, n));
        }
        let mut p = Permutation::identity(n);
        p.images.swap(self.i - 1, self.j - 1);
        Ok(p)
    }

    /// Indices `k` of adjacent transpositions `s_k = (k, k+1)` whose product
    /// is `(i, j)`: `s_{j-1} ... s_{i+1} s_i s_{i+1} ... s_{j-1}`.
    ///
    /// The word is a palindrome, so its product does not depend on the
    /// composition convention.
    pub fn adjacent_factorization(&self) -> Vec<usize> {
        let (i, j) = (self.i, self.j);
        let mut word: Vec<usize> = (i..j).rev().collect();
        word.extend(i + 1..j);
        word
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Every permutation of `[n]` in lexicographic order, so that the
/// position of `p` is `p.lehmer_rank()`.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation {
            images: cur.clone(),
        });
        // next lexicographic permutation
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| cur[k] < cur[k + 1]) else {
            break;
        };
        let l = (k + 1..n).rev().find(|&l| cur[k] < cur[l]).unwrap();
        cur.swap(k, l);
        cur[k + 1..].reverse();
    }
    out
}
