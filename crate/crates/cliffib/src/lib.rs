//! Exact computer algebra for quadric fibrations.
//!
//! The crate works with a symmetric matrix of polynomials over Q (a family
//! of quadratic forms over a parameter space) and computes, exactly:
//!
//! * its discriminant and corank strata ([`form`]),
//! * the Clifford algebra at rational points, its central element and
//!   structure certificates ([`clifford`]),
//! * the quadratic algebra of the quadric, its Koszul dual (the homogeneous
//!   Clifford algebra) and verified Koszul complexes ([`duality`]),
//! * the modules `B_k` over the even Clifford algebra ([`modules`]),
//! * the Clifford matrix factorization of the form ([`factorization`]),
//! * shape reports for the associated semiorthogonal decompositions
//!   ([`sod`]).
//!
//! Nothing uses floating point. Statements that need an algebraically
//! closed field (such as "is a matrix algebra") are reported as
//! certificates valid after base change from Q to its algebraic closure.

pub mod clifford;
pub mod cli;
pub mod duality;
pub mod error;
pub mod exact;
pub mod factorization;
pub mod form;
pub mod modules;
pub mod sod;

pub use error::{Error, Result};
