//! Matrix Lie algebra representations with exact scalars.
//!
//! A [`MatrixRep`] is a list of square matrices (a basis of the algebra in a
//! fixed faithful representation) plus bookkeeping: the coefficient field,
//! the module dimension, and optionally the invariant bilinear form the
//! algebra preserves. Construction validates linear independence, bracket
//! closure, and form invariance, so downstream solvers can assume a clean
//! input.
//!
//! Real forms are handled through one convention everywhere: a complex
//! vector `z = x + iy ∈ C^n` is stored as `(x, y) ∈ R^{2n}`, a complex
//! matrix `A = X + iY` becomes `[[X, -Y], [Y, X]]`, and multiplication by
//! `i` becomes the standard complex structure `J = [[0, -I], [I, 0]]`.

mod cx;
mod derived;
mod families;
mod irred;
mod rep;

pub use cx::{complexify, realify, split_by_complex_structure, ComplexStructure, SplitReps};
pub use derived::{
    add_center, adjoint, conjugate, diag_dual_symplectic, direct_sum, direct_sum_same_algebra,
    dual, ext_power, ext_power_primitive, restrict_to_invariant, subsets_lex, sym_power2,
    tensor_product, tensor_same_algebra, traceless_part,
};
pub use families::{
    gl, sl, so_pq, so_split, so_star, sp, spin12_half, spin7, su_pq, trivial, u_pq,
};
pub use irred::{commutant, envelope_dim, intertwiners, are_equivalent, is_irreducible, Irreducibility};
pub use rep::{Field, FormKind, InvariantForm, MatrixRep};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LiealgError {
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("unsupported construction: {0}")]
    UnsupportedConstruction(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("subspace is not invariant: {0}")]
    NotInvariant(String),
    #[error(transparent)]
    Exactlin(#[from] crate::exactlin::ExactlinError),
}
