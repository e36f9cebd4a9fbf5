//! Exact arithmetic substrate: rationals, sparse polynomials, dense and
//! sparse linear algebra over Q, and generic rank by specialization.

pub mod matrix;
pub mod parse;
pub mod poly;
pub mod rank;
pub mod rational;
pub mod sparse;

pub use matrix::{PolyMatrix, QMatrix};
pub use parse::parse_poly;
pub use poly::{vars, Monomial, MultiPoly, Vars};
pub use rank::{generic_rank, rank_at_points, GenericRank};
pub use rational::{frac, rat, Rational};
pub use sparse::{Echelon, SparseMatrix, SparseVec};

/// Exact basis of the right kernel of a rational matrix.
pub fn kernel_basis(m: &QMatrix) -> Vec<Vec<Rational>> {
    m.kernel_basis()
}
