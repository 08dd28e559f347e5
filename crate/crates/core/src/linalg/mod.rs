//! Exact linear algebra over Gaussian rationals.

mod matrix;
mod subspace;

pub use matrix::{ExactMatrix, RowEchelon};
pub use subspace::{kernel, range, subspace_intersect, subspace_sum, Subspace};

/// `m^n`; `m^0` is the identity.
pub fn matrix_power(m: &ExactMatrix, n: usize) -> crate::Result<ExactMatrix> {
    m.pow(n)
}
