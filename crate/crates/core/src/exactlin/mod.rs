//! Exact linear algebra over the Gaussian rationals.
//!
//! The scalar type is `a + b·i` with `a`, `b` arbitrary-precision rationals.
//! Real problems simply never populate the imaginary parts; the elimination
//! engine is field-generic in that sense and a rational input always yields
//! a rational kernel basis, so real and complex dimensions both come out of
//! the same code path.
//!
//! Kernels are returned in a canonical form (the reduced-echelon basis of
//! the nullspace, ordered by free column), so two runs — or two machines —
//! produce byte-identical bases.

mod mat;
mod modp;
mod scalar;
mod solve;

pub use mat::{Mat, MatEntry};
pub use scalar::{Rat, Scalar};
pub use solve::{
    in_span, invert, kernel, rank, solve, span_dim, span_equal, symmetric_signature,
    InsertOutcome, Kernel, RowBasis, Solution,
};
#[allow(unused_imports)] // used by sibling modules' tests
pub(crate) use solve::scalar;

use thiserror::Error;

/// Errors from span/solve entry points (the kernel itself cannot fail).
#[derive(Debug, Error)]
pub enum ExactlinError {
    #[error("dimension mismatch: expected vectors of length {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("could not parse scalar {0:?}")]
    Parse(String),
}
