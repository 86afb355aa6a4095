//! Exact integrality checks for Cayley graphs `Cay(S_n, T)` where `T` is a
//! set of transpositions.
//!
//! The spectrum of `Cay(S_n, T)` is assembled block by block from the
//! irreducible representations of `S_n`: for every partition `α ⊢ n` the
//! matrix `A_α = Σ_{t∈T} ρ_α(t)` is built exactly in Young's seminormal form,
//! its characteristic polynomial is computed over the integers, and integer
//! roots are peeled off. The graph is integral iff nothing is left over.
//!
//! Cheaper structural tests on the transposition graph `G_T` run first: a
//! Laplacian-integrality filter (necessary) and a recursive
//! join/union decomposition into complete multipartite pieces (sufficient).

pub mod catalog;
pub mod error;
pub mod integrality;
pub mod linalg;
pub mod perm;
pub mod reps;
pub mod report;
pub mod scan;
pub mod tgraph;

pub use error::{Error, Result};
