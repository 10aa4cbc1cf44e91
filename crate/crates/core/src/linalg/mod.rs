//! Exact dense linear algebra over a [`Field`](crate::field::Field).

mod matrix;
mod subspace;

pub use matrix::{Echelon, Matrix};
pub use subspace::{sum_is_direct, Dependency, DirectSum, Quotient, Subspace};
