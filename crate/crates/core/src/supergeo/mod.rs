//! Concrete odd Riemannian supergeometry over a point.
//!
//! A supermanifold with one underlying point and `2m` odd coordinates has
//! the Grassmann algebra `Λ(2m)` as its function ring; vector fields are
//! spanned by the odd partial derivatives `∂_1, …, ∂_{2m}`.  An odd
//! Riemannian supermetric is an even supersymmetric pairing of these odd
//! frame fields, i.e. an antisymmetric matrix of even Grassmann elements
//! whose constant-term matrix (the value at the point) is a nondegenerate
//! skew form `ω`.
//!
//! The module computes, all in exact rational arithmetic:
//!
//! * the Grassmann algebra itself ([`GrassmannElement`]: graded products,
//!   odd derivations, bodies);
//! * the Levi-Civita superconnection of a metric, obtained by solving the
//!   defining linear system (metricity plus vanishing torsion) and
//!   asserting its solution is unique rather than trusting any closed
//!   formula;
//! * the curvature tensor and its iterated covariant derivatives;
//! * the holonomy algebra at the point: the span of the values of
//!   `∇^r R(∂_β, ∂_γ)` over derivative index sets `α_1 < … < α_r`,
//!   `r ≤ 2m`, together with membership in `sp(ω)`, bracket closure, and
//!   irreducibility of the spanned algebra.
//!
//! Generator indices are 0-based throughout the API; the metric file
//! format (see [`SuperMetric::from_json`]) uses 1-based indices.

mod connection;
mod grassmann;
mod holonomy;
mod metric;
mod tensor;

pub use connection::{levi_civita, SuperConnection};
pub use grassmann::GrassmannElement;
pub use holonomy::{holonomy, unrestricted_span_dim, HolonomyReport};
pub use metric::{product_metric, random_metric, SuperMetric};
pub use tensor::{covariant_derivative, curvature, metric_tensor, SuperTensor};

use thiserror::Error;

use crate::exactlin::ExactlinError;
use crate::liealg::LiealgError;

/// Errors from the supergeometry engine.
#[derive(Debug, Error)]
pub enum SupergeoError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("incompatible Grassmann algebras: {0}")]
    Mismatch(String),
    #[error("could not parse metric: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Exactlin(#[from] ExactlinError),
    #[error(transparent)]
    Liealg(#[from] LiealgError),
}
