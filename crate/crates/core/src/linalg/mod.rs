//! Exact linear algebra over a prime field.

mod field;
mod matrix;
mod subspace;

pub use field::{is_prime, FieldScalar, PrimeField};
pub use matrix::{kernel_basis, rref, solve, Matrix};
pub use subspace::{intersect_subspaces, subspace_contains, sum_subspaces, Subspace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("modulus {0} is not prime")]
    BadModulus(u64),
    #[error("no solution: right-hand side is outside the column space")]
    NoSolution,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
