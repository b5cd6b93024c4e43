//! Exact-arithmetic toolkit for linear Lie algebra representations:
//! skew-symmetric and symmetric prolongations, algebraic curvature modules
//! with first/second Bianchi identities, skew-Berger and symmetric-pair
//! tests, and holonomy algebras of odd Riemannian supermetrics computed in
//! a Grassmann-algebra engine.
//!
//! Everything is computed over the Gaussian rationals (or plain rationals
//! for real representations); no floating point is used anywhere, so every
//! reported dimension and basis is exact.
//!
//! Module map:
//!
//! * [`exactlin`] — scalars, sparse matrices, and the fraction-aware sparse
//!   elimination engine (kernels, ranks, span comparisons).
//! * [`liealg`] — construction of matrix Lie algebra representations
//!   (classical families, unitary/quaternionic real forms, spinor
//!   representations via Clifford algebras) and derived representations.
//! * [`prolong`] — skew-symmetric and symmetric prolongation spaces and the
//!   table-verification harness for them.
//! * [`curvature`] — curvature spaces (odd and even), derivative spaces,
//!   the skew-Berger test, Lagrangian-pair analysis, symmetric-pair Lie
//!   superalgebras, and the Wu-style block decomposition.
//! * [`supergeo`] — Grassmann algebras, odd Riemannian supermetrics, the
//!   Levi-Civita superconnection, curvature and its covariant derivatives,
//!   and holonomy spans.
//! * [`catalog`] — the classification tables shipped as JSON data, the
//!   verification harness over them, and descriptor parsing for the CLI.

pub mod catalog;
pub mod curvature;
pub mod exactlin;
pub mod liealg;
pub mod prolong;
pub mod supergeo;

pub use catalog::{catalog_table, verify, CatalogError, VerificationReport};
pub use curvature::{
    curvature_space, derivative_space, skew_berger_test, wu_decompose, CurvatureKind,
    CurvatureReport, CurvatureSpace,
};
pub use exactlin::{Mat, Rat, Scalar};
pub use liealg::{ComplexStructure, Field, MatrixRep};
pub use prolong::{prolongation, ProlongationKind, ProlongationSpace};
pub use supergeo::{
    holonomy, levi_civita, random_metric, GrassmannElement, HolonomyReport, SuperMetric,
};
