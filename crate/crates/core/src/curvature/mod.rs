//! Algebraic curvature modules of matrix Lie algebra representations.
//!
//! For an algebra `g` acting on `V`, the odd curvature space consists of
//! symmetric bilinear maps `R: V x V -> g` satisfying the first Bianchi
//! identity `R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0`; the even space is its
//! classical skew-bilinear counterpart.  On top of the solution spaces this
//! module provides the second-Bianchi derivative space, the spanning
//! (skew-Berger) and symmetric tests, the Lagrangian-pair analysis for
//! symplectic doublings, construction of symmetric-pair Lie superalgebras
//! from an invariant curvature element, and a Wu-style splitting of a
//! symplectic representation into a trivial part and nondegenerate
//! invariant blocks.
//!
//! All spaces are exact kernels of sparse rational (or Gaussian-rational)
//! constraint systems; unknowns for the odd kind are indexed by unordered
//! pairs `i <= j` with the symmetry built into the indexing rather than
//! added as equations.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlin::{kernel, ExactlinError, Mat, RowBasis, Scalar};
use crate::liealg::{LiealgError, MatrixRep};

mod pair;
mod wu;

pub use pair::{
    annihilated_curvature, build_symmetric_pair, lagrangian_pair_analysis, LagrangianPairReport,
    SuperPair,
};
pub use wu::{wu_decompose, WuBlock};

/// Errors from curvature-space computations.
#[derive(Debug, Error)]
pub enum CurvatureError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid curvature element: {0}")]
    InvalidCurvature(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Liealg(#[from] LiealgError),
    #[error(transparent)]
    Exactlin(#[from] ExactlinError),
}

/// Symmetry kind of a curvature space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurvatureKind {
    /// `R(X,Y) = R(Y,X)`, values in `g`.
    Odd,
    /// `R(X,Y) = -R(Y,X)`, values in `g`.
    Even,
}

impl fmt::Display for CurvatureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvatureKind::Odd => write!(f, "odd"),
            CurvatureKind::Even => write!(f, "even"),
        }
    }
}

fn kind_pairs(kind: CurvatureKind, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        let start = match kind {
            CurvatureKind::Odd => i,
            CurvatureKind::Even => i + 1,
        };
        for j in start..n {
            out.push((i, j));
        }
    }
    out
}

/// Position of the unordered pair `(i, j)` in the coefficient layout plus
/// the symmetry sign picked up by normalizing the order; `None` when the
/// value is structurally zero (diagonal pairs of the even kind).
fn pair_lookup(kind: CurvatureKind, n: usize, i: usize, j: usize) -> Option<(usize, i64)> {
    let (a, b, sign) = if i <= j { (i, j, 1) } else { (j, i, kind_sign(kind)) };
    match kind {
        CurvatureKind::Odd => Some((a * (2 * n - a + 1) / 2 + (b - a), sign)),
        CurvatureKind::Even => {
            if a == b {
                None
            } else {
                Some((a * (2 * n - a - 1) / 2 + (b - a - 1), sign))
            }
        }
    }
}

fn kind_sign(kind: CurvatureKind) -> i64 {
    match kind {
        CurvatureKind::Odd => 1,
        CurvatureKind::Even => -1,
    }
}

/// One bilinear curvature map expressed in coefficients: entry
/// `pair_index * dim_g + a` is the coefficient of algebra basis matrix
/// `A_a` in `R(e_i, e_j)` for the pair at `pair_index`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureElement {
    kind: CurvatureKind,
    dim_v: usize,
    dim_g: usize,
    coeff: Vec<Scalar>,
}

impl CurvatureElement {
    /// Build an element from raw coefficients (entry `pair_index * dim_g + a`
    /// is the coefficient of algebra basis matrix `a` at that pair).
    pub fn from_coeff(
        kind: CurvatureKind,
        dim_v: usize,
        dim_g: usize,
        coeff: Vec<Scalar>,
    ) -> Result<CurvatureElement, CurvatureError> {
        let expected = kind_pairs(kind, dim_v).len() * dim_g;
        if coeff.len() != expected {
            return Err(CurvatureError::InvalidCurvature(format!(
                "coefficient vector has length {}, expected {expected}",
                coeff.len()
            )));
        }
        Ok(CurvatureElement { kind, dim_v, dim_g, coeff })
    }

    pub fn kind(&self) -> CurvatureKind {
        self.kind
    }

    pub fn coeff(&self) -> &[Scalar] {
        &self.coeff
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.iter().all(|c| c.is_zero())
    }

    /// `g`-coordinates of `R(e_i, e_j)` (with the symmetry sign applied).
    pub fn coords(&self, i: usize, j: usize) -> Vec<Scalar> {
        let g = self.dim_g;
        match pair_lookup(self.kind, self.dim_v, i, j) {
            None => vec![Scalar::zero(); g],
            Some((pi, sign)) => {
                let s = Scalar::from_int(sign);
                self.coeff[pi * g..(pi + 1) * g].iter().map(|c| &s * c).collect()
            }
        }
    }

    /// `R(e_i, e_j)` as a matrix acting on `V`.
    pub fn value(&self, rep: &MatrixRep, i: usize, j: usize) -> Mat {
        assert_eq!(rep.dim_g(), self.dim_g);
        let mut m = Mat::zero(self.dim_v, self.dim_v);
        for (a, c) in self.coords(i, j).iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&rep.basis()[a].scale(c));
            }
        }
        m
    }

    /// `g`-coordinates of `R(x, e_j)` for an arbitrary first argument.
    fn coords_vec_left(&self, x: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim_g];
        for (k, xk) in x.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            for (a, c) in self.coords(k, j).iter().enumerate() {
                if !c.is_zero() {
                    out[a].add_mul_assign(xk, c);
                }
            }
        }
        out
    }

    /// First Bianchi defect `R(e_i,e_j)e_k + R(e_j,e_k)e_i + R(e_k,e_i)e_j`.
    pub fn bianchi_defect(&self, rep: &MatrixRep, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        let n = self.dim_v;
        let unit = |t: usize| -> Vec<Scalar> {
            (0..n)
                .map(|u| if u == t { Scalar::one() } else { Scalar::zero() })
                .collect()
        };
        let mut out = vec![Scalar::zero(); n];
        for ((p, q), arg) in [((i, j), k), ((j, k), i), ((k, i), j)] {
            let v = self.value(rep, p, q).mul_vec(&unit(arg));
            for (u, vu) in v.into_iter().enumerate() {
                out[u] = &out[u] + &vu;
            }
        }
        out
    }
}

/// The exact solution space of the first Bianchi system.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurvatureSpace {
    kind: CurvatureKind,
    dim_v: usize,
    dim_g: usize,
    basis: Vec<Vec<Scalar>>,
}

impl CurvatureSpace {
    pub fn kind(&self) -> CurvatureKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_g(&self) -> usize {
        self.dim_g
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Basis element `t` as a curvature element.
    pub fn element(&self, t: usize) -> CurvatureElement {
        CurvatureElement {
            kind: self.kind,
            dim_v: self.dim_v,
            dim_g: self.dim_g,
            coeff: self.basis[t].clone(),
        }
    }

    /// Linear combination `sum_t coeffs[t] * basis[t]`.
    pub fn combine(&self, coeffs: &[Scalar]) -> CurvatureElement {
        assert_eq!(coeffs.len(), self.dim());
        let len = kind_pairs(self.kind, self.dim_v).len() * self.dim_g;
        let mut coeff = vec![Scalar::zero(); len];
        for (t, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (u, b) in self.basis[t].iter().enumerate() {
                coeff[u].add_mul_assign(c, b);
            }
        }
        CurvatureElement {
            kind: self.kind,
            dim_v: self.dim_v,
            dim_g: self.dim_g,
            coeff,
        }
    }

    /// Whether `elem` lies in the span of the computed basis.
    pub fn contains(&self, elem: &CurvatureElement) -> Result<bool, CurvatureError> {
        if elem.kind != self.kind || elem.dim_v != self.dim_v || elem.dim_g != self.dim_g {
            return Ok(false);
        }
        Ok(crate::exactlin::in_span(&elem.coeff, &self.basis)?.is_some())
    }
}

fn multiset_triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                out.push((i, j, k));
            }
        }
    }
    out
}

fn strict_triples(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Compute the curvature space of `rep` for the requested symmetry kind.
///
/// Unknowns are `g`-coefficients per unordered index pair; equations are
/// the coordinate statements of the first Bianchi identity over basis
/// triples (multisets for the odd kind, whose cyclic sum is fully
/// symmetric; strictly increasing triples for the even kind, whose
/// repeated-index equations vanish identically).
pub fn curvature_space(rep: &MatrixRep, kind: CurvatureKind) -> CurvatureSpace {
    let n = rep.dim_v();
    let g = rep.dim_g();
    let pairs = kind_pairs(kind, n);
    let triples = match kind {
        CurvatureKind::Odd => multiset_triples(n),
        CurvatureKind::Even => strict_triples(n),
    };
    let mut m = Mat::zero(triples.len() * n, pairs.len() * g);
    for (ti, &(i, j, k)) in triples.iter().enumerate() {
        for ((p, q), arg) in [((i, j), k), ((j, k), i), ((k, i), j)] {
            let Some((pi, sign)) = pair_lookup(kind, n, p, q) else {
                continue;
            };
            let s = Scalar::from_int(sign);
            for (a, mat_a) in rep.basis().iter().enumerate() {
                // R(e_p, e_q) e_arg contributes column `arg` of A_a.
                for l in 0..n {
                    if let Some(v) = mat_a.entry(l, arg) {
                        m.add_to(ti * n + l, pi * g + a, &(&s * v));
                    }
                }
            }
        }
    }
    CurvatureSpace {
        kind,
        dim_v: n,
        dim_g: g,
        basis: kernel(&m).basis,
    }
}

/// The exact solution space of the second Bianchi system relative to a
/// computed curvature space: maps `S: V -> cs` with
/// `S_X(Y,Z) + S_Y(Z,X) + S_Z(X,Y) = 0`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerivativeSpace {
    dim_v: usize,
    cs_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl DerivativeSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Coefficients of `S_{e_i}` over the curvature-space basis.
    pub fn coeffs(&self, t: usize, i: usize) -> &[Scalar] {
        &self.basis[t][i * self.cs_dim..(i + 1) * self.cs_dim]
    }
}

/// Compute the derivative space of `cs` (which must have been computed for
/// `rep`).  Unknowns are coefficients of `S_{e_i}` over the basis of `cs`;
/// the cyclic identity is fully symmetric for the odd kind (multiset
/// triples) and fully antisymmetric for the even kind (strict triples).
pub fn derivative_space(rep: &MatrixRep, cs: &CurvatureSpace) -> DerivativeSpace {
    assert_eq!(rep.dim_v(), cs.dim_v);
    assert_eq!(rep.dim_g(), cs.dim_g);
    let n = cs.dim_v;
    let g = cs.dim_g;
    let d = cs.dim();
    if d == 0 {
        return DerivativeSpace {
            dim_v: n,
            cs_dim: 0,
            basis: Vec::new(),
        };
    }
    let triples = match cs.kind {
        CurvatureKind::Odd => multiset_triples(n),
        CurvatureKind::Even => strict_triples(n),
    };
    let mut m = Mat::zero(triples.len() * g, n * d);
    for (ti, &(i, j, k)) in triples.iter().enumerate() {
        for (x, (p, q)) in [(i, (j, k)), (j, (k, i)), (k, (i, j))] {
            let Some((pi, sign)) = pair_lookup(cs.kind, n, p, q) else {
                continue;
            };
            let s = Scalar::from_int(sign);
            for t in 0..d {
                // S_{e_x}(e_p, e_q) = sum_t s[x, t] * R_t(e_p, e_q).
                for (a, v) in cs.basis[t][pi * g..(pi + 1) * g].iter().enumerate() {
                    if !v.is_zero() {
                        m.add_to(ti * g + a, x * d + t, &(&s * v));
                    }
                }
            }
        }
    }
    DerivativeSpace {
        dim_v: n,
        cs_dim: d,
        basis: kernel(&m).basis,
    }
}

/// Natural action of the algebra basis element `a_idx` on a curvature
/// element: `(A.R)(X,Y) = [A, R(X,Y)] - R(AX, Y) - R(X, AY)`, computed
/// exactly in coefficient space via the structure constants.
pub fn g_action(
    rep: &MatrixRep,
    a_idx: usize,
    elem: &CurvatureElement,
) -> Result<CurvatureElement, CurvatureError> {
    assert_eq!(rep.dim_g(), elem.dim_g);
    assert_eq!(rep.dim_v(), elem.dim_v);
    let n = elem.dim_v;
    let g = elem.dim_g;
    let sc = rep.structure_constants()?;
    let a_mat = &rep.basis()[a_idx];
    let pairs = kind_pairs(elem.kind, n);
    let mut coeff = vec![Scalar::zero(); pairs.len() * g];
    for (pi, &(i, j)) in pairs.iter().enumerate() {
        let out = &mut coeff[pi * g..(pi + 1) * g];
        // [A_a, R(e_i, e_j)] via structure constants.
        for (b, c) in elem.coords(i, j).iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, s) in &sc[a_idx][b] {
                out[*t].add_mul_assign(c, s);
            }
        }
        // -R(A e_i, e_j) - R(e_i, A e_j); columns of A give the vectors.
        for (swap, fixed) in [(i, j), (j, i)] {
            let col: Vec<Scalar> = (0..n).map(|r| a_mat.get(r, swap)).collect();
            let coords = elem.coords_vec_left(&col, fixed);
            for (t, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    out[t] = &out[t] - c;
                }
            }
        }
    }
    Ok(CurvatureElement {
        kind: elem.kind,
        dim_v: n,
        dim_g: g,
        coeff,
    })
}

/// Result of the spanning and symmetric tests.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub algebra: String,
    #[serde(rename = "dimV")]
    pub dim_v: usize,
    pub curvature_dim: usize,
    pub derivative_dim: usize,
    pub span_dim: usize,
    pub is_skew_berger: bool,
    pub is_symmetric: bool,
}

impl CurvatureReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Run the spanning test: `rep` is spanned by curvature values iff the
/// span of all `R(e_i, e_j)` over the odd curvature basis equals `g` (the
/// zero algebra passes vacuously).  Also reports whether the algebra is
/// symmetric, i.e. whether the derivative space vanishes.
pub fn skew_berger_test(rep: &MatrixRep) -> Result<CurvatureReport, CurvatureError> {
    let cs = curvature_space(rep, CurvatureKind::Odd);
    let n = rep.dim_v();
    let mut span = RowBasis::new(n * n);
    for t in 0..cs.dim() {
        let elem = cs.element(t);
        for i in 0..n {
            for j in i..n {
                let v = elem.value(rep, i, j).to_dense_vec();
                span.insert(&v)?;
            }
        }
    }
    let span_dim = span.dim();
    let ds = derivative_space(rep, &cs);
    Ok(CurvatureReport {
        algebra: rep.name().to_string(),
        dim_v: n,
        curvature_dim: cs.dim(),
        derivative_dim: ds.dim(),
        span_dim,
        is_skew_berger: span_dim == rep.dim_g(),
        is_symmetric: ds.dim() == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::in_span;
    use crate::liealg::{
        add_center, direct_sum, gl, sl, so_split, so_star, sp, su_pq, tensor_product, trivial,
        u_pq, Field,
    };

    fn check_space(rep: &MatrixRep, cs: &CurvatureSpace) {
        let n = rep.dim_v();
        for t in 0..cs.dim() {
            let elem = cs.element(t);
            // Symmetry is structural; Bianchi must hold on all triples.
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        for d in elem.bianchi_defect(rep, i, j, k) {
                            assert!(d.is_zero(), "Bianchi defect on ({i},{j},{k})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_algebra_has_no_curvature() {
        let rep = trivial(2, Field::Gaussian).unwrap();
        let cs = curvature_space(&rep, CurvatureKind::Odd);
        assert_eq!(cs.dim(), 0);
        let report = skew_berger_test(&rep).unwrap();
        assert!(report.is_skew_berger);
        assert_eq!(report.span_dim, 0);
        assert!(report.is_symmetric);
    }

    #[test]
    fn even_kind_reproduces_classical_counts() {
        // Classical algebraic curvature tensors with values in so(n):
        // dimension n^2 (n^2 - 1) / 12.
        for (n, expect) in [(3usize, 6usize), (4, 20)] {
            let rep = so_split(n, Field::Gaussian).unwrap();
            let cs = curvature_space(&rep, CurvatureKind::Even);
            assert_eq!(cs.dim(), expect, "so({n}) even curvature");
            check_space(&rep, &cs);
        }
    }

    #[test]
    fn so3_sp4_tensor_has_curvature_line() {
        let rep = tensor_product(
            &so_split(3, Field::Gaussian).unwrap(),
            &sp(4, Field::Gaussian).unwrap(),
        )
        .unwrap();
        let cs = curvature_space(&rep, CurvatureKind::Odd);
        assert_eq!(cs.dim(), 1);
        check_space(&rep, &cs);
        let report = skew_berger_test(&rep).unwrap();
        assert!(report.is_skew_berger);
        assert!(report.is_symmetric);
        assert_eq!(report.derivative_dim, 0);
    }

    #[test]
    fn unitary_curvature_dims() {
        let u2 = u_pq(2, 0).unwrap();
        let cs2 = curvature_space(&u2, CurvatureKind::Odd);
        assert_eq!(cs2.dim(), 1);
        check_space(&u2, &cs2);
        let u3 = u_pq(3, 0).unwrap();
        let cs3 = curvature_space(&u3, CurvatureKind::Odd);
        assert_eq!(cs3.dim(), 9);
    }

    #[test]
    fn quaternionic_orthogonal_curvature_line() {
        let rep = so_star(2).unwrap();
        let cs = curvature_space(&rep, CurvatureKind::Odd);
        assert_eq!(cs.dim(), 1);
        let report = skew_berger_test(&rep).unwrap();
        assert!(report.is_skew_berger);
        assert_eq!(report.span_dim, rep.dim_g());
    }

    #[test]
    fn adding_complex_center_breaks_spanning() {
        let rep = so_star(2).unwrap();
        let mut stripped = rep.clone();
        stripped.set_form(None);
        let j = crate::liealg::ComplexStructure::standard(4);
        let ext = add_center(&stripped, j.matrix().clone(), "i").unwrap();
        let report = skew_berger_test(&ext).unwrap();
        assert!(!report.is_skew_berger);
        assert_eq!(report.span_dim, rep.dim_g());
    }

    #[test]
    fn symplectic_standard_symmetry_threshold() {
        // sp(2,R) = sl(2,R) on R^2: the curvature space is exactly the
        // invariant line built from the symplectic form, so the
        // derivative space vanishes and the algebra is symmetric.  The
        // family stops being symmetric at sp(4,R).
        let small = sp(2, Field::Rational).unwrap();
        let report = skew_berger_test(&small).unwrap();
        assert!(report.is_skew_berger);
        assert_eq!(report.curvature_dim, 1);
        assert_eq!(report.derivative_dim, 0);
        assert!(report.is_symmetric);

        let big = sp(4, Field::Rational).unwrap();
        let big_report = skew_berger_test(&big).unwrap();
        assert!(big_report.is_skew_berger);
        assert!(big_report.curvature_dim > 1);
        assert!(big_report.derivative_dim > 0);
        assert!(!big_report.is_symmetric);
    }

    #[test]
    fn special_unitary_small_sizes_have_no_curvature() {
        for n in [2usize, 3] {
            let rep = su_pq(n, 0).unwrap();
            let cs = curvature_space(&rep, CurvatureKind::Odd);
            assert_eq!(cs.dim(), 0, "su({n})");
        }
    }

    #[test]
    fn direct_sum_curvature_counts_cross_prolongations() {
        // For a sum of ideals acting on a sum of modules, the curvature
        // space is the two summands' spaces plus cross maps filling
        // V2* (x) g1^[1] + V1* (x) g2^[1]; plain additivity holds exactly
        // when both first skew prolongations vanish.
        use crate::prolong::{prolongation, ProlongationKind};
        let a = sp(2, Field::Rational).unwrap();
        let b_src = u_pq(2, 0).unwrap();
        let b = MatrixRep::new(
            "u(2) over the rationals",
            Field::Rational,
            b_src.dim_v(),
            b_src.basis().to_vec(),
            None,
        )
        .unwrap();
        let da = curvature_space(&a, CurvatureKind::Odd).dim();
        let db = curvature_space(&b, CurvatureKind::Odd).dim();
        let pa = prolongation(&a, ProlongationKind::Skew, 1).dim();
        let pb = prolongation(&b, ProlongationKind::Skew, 1).dim();
        let mut a_noform = a.clone();
        a_noform.set_form(None);
        let sum = direct_sum(&a_noform, &b).unwrap();
        let dsum = curvature_space(&sum, CurvatureKind::Odd).dim();
        assert_eq!(dsum, da + db + b.dim_v() * pa + a.dim_v() * pb);

        let two = direct_sum(&a_noform, &a_noform).unwrap();
        assert_eq!(pa, 0);
        assert_eq!(curvature_space(&two, CurvatureKind::Odd).dim(), 2 * da);
    }

    #[test]
    fn g_action_preserves_curvature_space() {
        let rep = u_pq(2, 0).unwrap();
        let cs = curvature_space(&rep, CurvatureKind::Odd);
        for t in 0..cs.dim() {
            let elem = cs.element(t);
            for a in 0..rep.dim_g() {
                let acted = g_action(&rep, a, &elem).unwrap();
                assert!(cs.contains(&acted).unwrap(), "action leaves the space");
            }
        }
    }

    #[test]
    fn annihilated_line_for_symmetric_case() {
        let rep = tensor_product(
            &so_split(3, Field::Gaussian).unwrap(),
            &sp(4, Field::Gaussian).unwrap(),
        )
        .unwrap();
        let cs = curvature_space(&rep, CurvatureKind::Odd);
        let elem = cs.element(0);
        for a in 0..rep.dim_g() {
            let acted = g_action(&rep, a, &elem).unwrap();
            assert!(acted.is_zero(), "generator {a} must annihilate the line");
        }
    }

    #[test]
    fn conjugation_invariance_of_the_test() {
        let rep = sp(2, Field::Rational).unwrap();
        let mut stripped = rep.clone();
        stripped.set_form(None);
        let mut p = Mat::identity(2);
        p.set(0, 1, Scalar::from_frac(3, 2));
        p.set(1, 0, Scalar::from_int(-1));
        p.set(1, 1, Scalar::from_int(2));
        let conj = crate::liealg::conjugate(&stripped, &p).unwrap();
        let base = skew_berger_test(&rep).unwrap();
        let moved = skew_berger_test(&conj).unwrap();
        assert_eq!(base.is_skew_berger, moved.is_skew_berger);
        assert_eq!(base.curvature_dim, moved.curvature_dim);
        assert_eq!(base.derivative_dim, moved.derivative_dim);
    }

    #[test]
    fn randomized_assembly_order_is_deterministic() {
        // Reassemble the system with permuted algebra basis order: the
        // computed dimension is unchanged and every old basis element still
        // solves the new system.
        let rep = u_pq(2, 0).unwrap();
        let cs = curvature_space(&rep, CurvatureKind::Odd);
        let permuted = MatrixRep::new(
            "u(2) permuted",
            rep.field(),
            rep.dim_v(),
            rep.basis().iter().rev().cloned().collect(),
            None,
        )
        .unwrap();
        let cs2 = curvature_space(&permuted, CurvatureKind::Odd);
        assert_eq!(cs.dim(), cs2.dim());
        let g = rep.dim_g();
        for t in 0..cs.dim() {
            // Reverse each per-pair coefficient block to match the
            // permuted basis layout.
            let mut v = Vec::with_capacity(cs.basis()[t].len());
            for chunk in cs.basis()[t].chunks(g) {
                v.extend(chunk.iter().rev().cloned());
            }
            assert!(in_span(&v, cs2.basis()).unwrap().is_some());
        }
    }

    #[test]
    fn report_serializes_with_module_dimension_key() {
        let rep = gl(2, Field::Gaussian).unwrap();
        let report = skew_berger_test(&rep).unwrap();
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert!(json.get("dimV").is_some());
        assert!(json.get("curvature_dim").is_some());
        let _ = sl(2, Field::Gaussian).unwrap();
    }
}
