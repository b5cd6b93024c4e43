//! Prolongation spaces of matrix Lie algebra representations.
//!
//! For a representation of an algebra `g` on `V` with basis matrices
//! `A_1 .. A_G`, the first skew prolongation is the space of linear maps
//! `phi: V -> g` with `phi(x)y = -phi(y)x` for all `x, y` in `V`; the first
//! symmetric prolongation uses `phi(x)y = phi(y)x` instead.  Second-order
//! spaces consist of maps `psi: V -> (first-order space)` satisfying the
//! matching symmetry `psi(x)(y) = -psi(y)(x)` (skew) or
//! `psi(x)(y) = psi(y)(x)` (symmetric), with values stored in coordinates
//! relative to the computed first-order basis.
//!
//! Both orders are assembled as sparse linear constraint systems over the
//! chosen exact scalar field and solved with [`crate::exactlin::kernel`],
//! so dimensions and basis vectors are exact and deterministic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactlin::{kernel, Mat, Scalar};
use crate::liealg::MatrixRep;

mod table;

pub use table::{
    verify_prolongation_table, verify_selected_rows, RowStatus, Size, TableReport, TableRow,
};

/// Symmetry type of a prolongation space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProlongationKind {
    /// `phi(x)y = phi(y)x`.
    Symmetric,
    /// `phi(x)y = -phi(y)x`.
    Skew,
}

impl ProlongationKind {
    /// Sign `s` such that the defining equations read
    /// `phi(e_i)e_j + s * phi(e_j)e_i = 0`.
    fn sign(self) -> i64 {
        match self {
            ProlongationKind::Skew => 1,
            ProlongationKind::Symmetric => -1,
        }
    }

    /// Whether the diagonal pairs `(i, i)` yield equations.  For the skew
    /// kind they force `phi(e_i)e_i = 0`; for the symmetric kind they are
    /// vacuous.
    fn includes_diagonal(self) -> bool {
        matches!(self, ProlongationKind::Skew)
    }
}

impl fmt::Display for ProlongationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProlongationKind::Symmetric => write!(f, "sym"),
            ProlongationKind::Skew => write!(f, "skew"),
        }
    }
}

/// An exactly computed prolongation space.
///
/// For `order == 1` every basis element is a coefficient vector of length
/// `dim_v * dim_g`; entry `i * dim_g + a` is the coefficient of the algebra
/// basis matrix `A_a` in `phi(e_i)`.  For `order == 2` every basis element
/// is a coefficient vector of length `dim_v * dim1` over the order-1 basis
/// (entry `i * dim1 + t` is the coefficient of order-1 basis element `t` in
/// `psi(e_i)`), and [`ProlongationSpace::order1`] exposes the underlying
/// order-1 space the coordinates refer to.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProlongationSpace {
    order: u8,
    kind: ProlongationKind,
    dim_g: usize,
    dim_v: usize,
    basis: Vec<Vec<Scalar>>,
    order1: Option<Box<ProlongationSpace>>,
}

impl ProlongationSpace {
    /// Order of the space (1 or 2).
    pub fn order(&self) -> u8 {
        self.order
    }

    /// Symmetry kind.
    pub fn kind(&self) -> ProlongationKind {
        self.kind
    }

    /// Dimension of the computed space.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `(dim g, dim V, dim of this space)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.dim_g, self.dim_v, self.dim())
    }

    /// Raw coefficient vectors (see the type-level docs for the layout).
    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// For an order-2 space, the order-1 space its coordinates refer to.
    pub fn order1(&self) -> Option<&ProlongationSpace> {
        self.order1.as_deref()
    }

    /// Coefficients of `phi_t(e_i)` (order 1, length `dim_g`) or of
    /// `psi_t(e_i)` (order 2, length `dim1`).
    pub fn coeffs(&self, t: usize, i: usize) -> &[Scalar] {
        let stride = self.basis[t].len() / self.dim_v;
        &self.basis[t][i * stride..(i + 1) * stride]
    }

    /// Materialize order-1 basis element `t` as its value matrices
    /// `[phi_t(e_0), .., phi_t(e_{n-1})]`.
    ///
    /// Panics if called on an order-2 space; second-order elements take
    /// values in the order-1 space, not in `g`.
    pub fn value_matrices(&self, rep: &MatrixRep, t: usize) -> Vec<Mat> {
        assert_eq!(self.order, 1, "value matrices exist for order-1 spaces only");
        assert_eq!(self.dim_g, rep.dim_g());
        let n = self.dim_v;
        (0..n)
            .map(|i| {
                let mut m = Mat::zero(n, n);
                for (a, c) in self.coeffs(t, i).iter().enumerate() {
                    if !c.is_zero() {
                        m = m.add(&rep.basis()[a].scale(c));
                    }
                }
                m
            })
            .collect()
    }

    /// Flatten each order-1 basis element into one long dense vector of the
    /// entries of `(phi(e_0), .., phi(e_{n-1}))`.  This view is independent
    /// of the chosen algebra basis, so spaces computed for different
    /// algebras acting on the same `V` become comparable (e.g. for
    /// subalgebra containment checks via spans).
    pub fn flattened_values(&self, rep: &MatrixRep) -> Vec<Vec<Scalar>> {
        (0..self.dim())
            .map(|t| {
                let mut flat = Vec::with_capacity(self.dim_v * self.dim_v * self.dim_v);
                for m in self.value_matrices(rep, t) {
                    flat.extend(m.to_dense_vec());
                }
                flat
            })
            .collect()
    }
}

fn pairs(n: usize, include_diagonal: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        let start = if include_diagonal { i } else { i + 1 };
        for j in start..n {
            out.push((i, j));
        }
    }
    out
}

/// Compute the order-1 or order-2 prolongation space of `rep`.
///
/// The order-1 system has unknowns `c[i, a]` (coefficient of `A_a` in
/// `phi(e_i)`) and one equation per output coordinate of
/// `phi(e_i)e_j + s * phi(e_j)e_i = 0` over the relevant index pairs.  The
/// order-2 system is assembled relative to the computed order-1 basis: the
/// unknowns are coordinates of `psi(e_i)` in that basis and the equations
/// state `psi(e_i)(e_j) + s * psi(e_j)(e_i) = 0` inside `g`-coordinates.
/// Requesting order 2 when the order-1 space is zero returns the zero
/// space.
pub fn prolongation(rep: &MatrixRep, kind: ProlongationKind, order: u8) -> ProlongationSpace {
    assert!(order == 1 || order == 2, "supported orders are 1 and 2");
    let first = prolongation_order1(rep, kind);
    if order == 1 {
        return first;
    }
    prolongation_order2(rep, kind, first)
}

fn prolongation_order1(rep: &MatrixRep, kind: ProlongationKind) -> ProlongationSpace {
    let n = rep.dim_v();
    let g = rep.dim_g();
    let sign = Scalar::from_int(kind.sign());
    let pair_list = pairs(n, kind.includes_diagonal());
    let mut m = Mat::zero(pair_list.len() * n, n * g);
    for (pi, &(i, j)) in pair_list.iter().enumerate() {
        for (a, mat_a) in rep.basis().iter().enumerate() {
            // phi(e_i)e_j contributes column j of A_a at unknown c[i, a];
            // phi(e_j)e_i contributes sign * column i of A_a at c[j, a].
            for l in 0..n {
                let row = pi * n + l;
                if let Some(v) = mat_a.entry(l, j) {
                    m.add_to(row, i * g + a, v);
                }
                if let Some(v) = mat_a.entry(l, i) {
                    m.add_to(row, j * g + a, &(&sign * v));
                }
            }
        }
    }
    let ker = kernel(&m);
    ProlongationSpace {
        order: 1,
        kind,
        dim_g: g,
        dim_v: n,
        basis: ker.basis,
        order1: None,
    }
}

fn prolongation_order2(
    rep: &MatrixRep,
    kind: ProlongationKind,
    first: ProlongationSpace,
) -> ProlongationSpace {
    let n = rep.dim_v();
    let g = rep.dim_g();
    let d1 = first.dim();
    let sign = Scalar::from_int(kind.sign());
    let basis = if d1 == 0 {
        Vec::new()
    } else {
        let pair_list = pairs(n, kind.includes_diagonal());
        let mut m = Mat::zero(pair_list.len() * g, n * d1);
        for (pi, &(i, j)) in pair_list.iter().enumerate() {
            for t in 0..d1 {
                // psi(e_i)(e_j) has g-coordinates c_t[j * g + ..] per unit
                // of the unknown d[i, t]; symmetrically for d[j, t].
                for (a, v) in first.coeffs(t, j).iter().enumerate() {
                    if !v.is_zero() {
                        m.add_to(pi * g + a, i * d1 + t, v);
                    }
                }
                for (a, v) in first.coeffs(t, i).iter().enumerate() {
                    if !v.is_zero() {
                        m.add_to(pi * g + a, j * d1 + t, &(&sign * v));
                    }
                }
            }
        }
        kernel(&m).basis
    };
    ProlongationSpace {
        order: 2,
        kind,
        dim_g: g,
        dim_v: n,
        basis,
        order1: Some(Box::new(first)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{in_span, span_dim, RowBasis};
    use crate::liealg::{
        add_center, adjoint, complexify, conjugate, dual, ext_power, gl, sl, so_pq, so_split, sp,
        tensor_product, trivial, Field,
    };

    fn check_symmetry(rep: &MatrixRep, space: &ProlongationSpace) {
        let n = rep.dim_v();
        for t in 0..space.dim() {
            let mats = space.value_matrices(rep, t);
            for i in 0..n {
                for j in 0..n {
                    let ei: Vec<Scalar> = (0..n)
                        .map(|k| if k == i { Scalar::one() } else { Scalar::zero() })
                        .collect();
                    let ej: Vec<Scalar> = (0..n)
                        .map(|k| if k == j { Scalar::one() } else { Scalar::zero() })
                        .collect();
                    let lhs = mats[i].mul_vec(&ej);
                    let rhs = mats[j].mul_vec(&ei);
                    for l in 0..n {
                        match space.kind() {
                            ProlongationKind::Skew => {
                                assert!((&lhs[l] + &rhs[l]).is_zero(), "skew symmetry violated")
                            }
                            ProlongationKind::Symmetric => {
                                assert!((&lhs[l] - &rhs[l]).is_zero(), "symmetry violated")
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn so4_skew_first_dim_four() {
        let rep = so_split(4, Field::Gaussian).unwrap();
        let p = prolongation(&rep, ProlongationKind::Skew, 1);
        assert_eq!(p.dim(), 4);
        check_symmetry(&rep, &p);
    }

    #[test]
    fn so4_skew_matches_explicit_three_form_intertwiner() {
        // Independent construction: for a symmetric invariant form G, every
        // alternating 3-form w yields phi(x) = G^{-1} S_x with
        // (S_x)_{jl} = w(x, e_j, e_l), and w -> phi is injective into the
        // skew prolongation.  Span equality with the kernel-computed basis
        // pins the solver output, not just its dimension.
        let rep = so_split(4, Field::Gaussian).unwrap();
        let n = rep.dim_v();
        let g_mat = rep.form().unwrap().matrix.clone();
        let g_inv = crate::exactlin::invert(&g_mat).unwrap();
        let mut alg_span = RowBasis::new(n * n);
        for b in rep.basis() {
            alg_span.insert(&b.to_dense_vec()).unwrap();
        }
        let mut images = Vec::new();
        for w in crate::liealg::subsets_lex(n, 3) {
            // Coefficient vector layout matches ProlongationSpace order 1.
            let mut coeff = vec![Scalar::zero(); n * rep.dim_g()];
            for x in 0..n {
                let mut s_x = Mat::zero(n, n);
                // w(e_x, e_j, e_l) for the basis 3-form e_{w0}^e_{w1}^e_{w2}.
                for perm in [
                    ([w[0], w[1], w[2]], 1i64),
                    ([w[0], w[2], w[1]], -1),
                    ([w[1], w[0], w[2]], -1),
                    ([w[1], w[2], w[0]], 1),
                    ([w[2], w[0], w[1]], 1),
                    ([w[2], w[1], w[0]], -1),
                ] {
                    let (idx, sgn) = perm;
                    if idx[0] == x {
                        s_x.add_to(idx[1], idx[2], &Scalar::from_int(sgn));
                    }
                }
                let phi_x = g_inv.mul(&s_x);
                let coords = alg_span
                    .contains(&phi_x.to_dense_vec())
                    .unwrap()
                    .expect("phi(x) must land in the algebra");
                for (a, c) in coords.iter().enumerate() {
                    coeff[x * rep.dim_g() + a] = c.clone();
                }
            }
            images.push(coeff);
        }
        let p = prolongation(&rep, ProlongationKind::Skew, 1);
        assert_eq!(images.len(), p.dim());
        for im in &images {
            assert!(in_span(im, p.basis()).unwrap().is_some());
        }
        assert_eq!(span_dim(&images).unwrap(), p.dim());
    }

    #[test]
    fn sl2_adjoint_skew_first_is_line() {
        let rep = adjoint(&sl(2, Field::Gaussian).unwrap()).unwrap();
        let p = prolongation(&rep, ProlongationKind::Skew, 1);
        assert_eq!(p.dim(), 1);
        check_symmetry(&rep, &p);
        // The line is spanned by the tautological map x -> ad_x, i.e. the
        // coefficient vector with c[i, a] = delta_{ia}.
        let mut taut = vec![Scalar::zero(); 9];
        for i in 0..3 {
            taut[i * 3 + i] = Scalar::one();
        }
        assert!(in_span(&taut, p.basis()).unwrap().is_some());
    }

    #[test]
    fn trivial_algebra_has_zero_prolongation() {
        let rep = trivial(3, Field::Rational).unwrap();
        let p = prolongation(&rep, ProlongationKind::Skew, 1);
        assert_eq!(p.dim(), 0);
        let p2 = prolongation(&rep, ProlongationKind::Skew, 2);
        assert_eq!(p2.dim(), 0);
        assert_eq!(p2.order(), 2);
    }

    #[test]
    fn so3_first_and_second_orders() {
        let rep = so_split(3, Field::Gaussian).unwrap();
        let p1 = prolongation(&rep, ProlongationKind::Skew, 1);
        assert_eq!(p1.dim(), 1);
        let p2 = prolongation(&rep, ProlongationKind::Skew, 2);
        assert_eq!(p2.dim(), 0);
        assert_eq!(p2.order1().unwrap().dim(), 1);
    }

    #[test]
    fn gl_std_orders_match_module_dims() {
        // gl(n) std: first space has dim n * C(n,2), second n * C(n,3).
        for n in [2usize, 3] {
            let rep = gl(n, Field::Gaussian).unwrap();
            let p1 = prolongation(&rep, ProlongationKind::Skew, 1);
            let lam2 = ext_power(2, &dual(&rep)).unwrap();
            assert_eq!(p1.dim(), n * lam2.dim_v());
            let p2 = prolongation(&rep, ProlongationKind::Skew, 2);
            let expect2 = if n >= 3 {
                n * ext_power(3, &dual(&rep)).unwrap().dim_v()
            } else {
                0
            };
            assert_eq!(p2.dim(), expect2);
            check_symmetry(&rep, &p1);
        }
    }

    #[test]
    fn sp4_center_needed_for_nonzero_skew_space() {
        let rep = sp(4, Field::Gaussian).unwrap();
        let bare = prolongation(&rep, ProlongationKind::Skew, 1);
        assert_eq!(bare.dim(), 0);
        let mut stripped = rep.clone();
        stripped.set_form(None);
        let with_center = add_center(&stripped, Mat::identity(4), "center").unwrap();
        let p = prolongation(&with_center, ProlongationKind::Skew, 1);
        assert_eq!(p.dim(), 4);
        check_symmetry(&with_center, &p);
    }

    #[test]
    fn subalgebra_prolongation_is_contained() {
        let sub = so_split(4, Field::Gaussian).unwrap();
        let amb = gl(4, Field::Gaussian).unwrap();
        let p_sub = prolongation(&sub, ProlongationKind::Skew, 1);
        let p_amb = prolongation(&amb, ProlongationKind::Skew, 1);
        let amb_flat = p_amb.flattened_values(&amb);
        for v in p_sub.flattened_values(&sub) {
            assert!(in_span(&v, &amb_flat).unwrap().is_some());
        }
    }

    #[test]
    fn conjugation_preserves_dims() {
        let rep = sl(3, Field::Gaussian).unwrap();
        let mut p = Mat::identity(3);
        p.set(0, 1, Scalar::from_int(2));
        p.set(1, 2, Scalar::from_frac(-1, 3));
        p.set(0, 2, Scalar::i());
        let conj = conjugate(&rep, &p).unwrap();
        for kind in [ProlongationKind::Skew, ProlongationKind::Symmetric] {
            let a = prolongation(&rep, kind, 1);
            let b = prolongation(&conj, kind, 1);
            assert_eq!(a.dim(), b.dim());
        }
    }

    #[test]
    fn complexification_preserves_dim() {
        // Absolutely irreducible real rep: so(4) standard on R^4.
        let rep = so_pq(4, 0).unwrap();
        let real_dim = prolongation(&rep, ProlongationKind::Skew, 1).dim();
        let cx_rep = complexify(&rep).unwrap();
        let cx_dim = prolongation(&cx_rep, ProlongationKind::Skew, 1).dim();
        assert_eq!(real_dim, cx_dim);
        assert_eq!(real_dim, 4);
    }

    #[test]
    fn tensor_row_small_case() {
        // sl(3)+sl(2)+center on C^3 (x) C^2: first space has dim
        // dim V* = 6, second is zero.
        let a = sl(3, Field::Gaussian).unwrap();
        let b = sl(2, Field::Gaussian).unwrap();
        let t = tensor_product(&a, &b).unwrap();
        let rep = add_center(&t, Mat::identity(6), "center").unwrap();
        let p1 = prolongation(&rep, ProlongationKind::Skew, 1);
        assert_eq!(p1.dim(), dual(&rep).dim_v());
        assert_eq!(prolongation(&rep, ProlongationKind::Skew, 2).dim(), 0);
    }

    #[test]
    fn symmetric_kind_sl3_std_positive() {
        let rep = sl(3, Field::Gaussian).unwrap();
        let p = prolongation(&rep, ProlongationKind::Symmetric, 1);
        // Classical count: sym^2(V^*) (x) V minus the trace conditions.
        assert_eq!(p.dim(), 15);
        check_symmetry(&rep, &p);
    }
}
