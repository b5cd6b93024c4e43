//! Lagrangian-pair analysis of symplectic doublings and construction of
//! symmetric-pair Lie superalgebras from invariant curvature elements.

use serde::{Deserialize, Serialize};

use crate::exactlin::{kernel, Mat, RowBasis, Scalar};
use crate::liealg::{diag_dual_symplectic, is_irreducible, MatrixRep};
use crate::prolong::{prolongation, ProlongationKind};

use super::{
    curvature_space, g_action, kind_pairs, multiset_triples, CurvatureElement, CurvatureError,
    CurvatureKind, CurvatureSpace,
};

/// Outcome of analysing the symplectic doubling `L + L*` of an irreducible
/// action on a Lagrangian factor `L`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LagrangianPairReport {
    pub algebra: String,
    pub dim_l: usize,
    pub dim_first_prolongation: usize,
    pub curvature_dim: usize,
    /// Every computed curvature element vanishes on argument pairs taken
    /// from the same Lagrangian summand.
    pub vanishes_on_lagrangian_pairs: bool,
}

/// Analyse the diagonal-plus-dual symplectic extension of `rep`.
///
/// Requires the action on the Lagrangian factor to be irreducible.  The
/// odd curvature space of the doubling is computed along with the first
/// skew prolongation of the factor action; a nonzero curvature space
/// forces a nonzero prolongation, and a violation is reported as an
/// internal error rather than silently returned.
pub fn lagrangian_pair_analysis(rep: &MatrixRep) -> Result<LagrangianPairReport, CurvatureError> {
    let irr = is_irreducible(rep)?;
    if !irr.irreducible {
        return Err(CurvatureError::Precondition(
            "the action on the Lagrangian factor must be irreducible".into(),
        ));
    }
    let dds = diag_dual_symplectic(rep);
    let cs = curvature_space(&dds, CurvatureKind::Odd);
    let p1 = prolongation(rep, ProlongationKind::Skew, 1);
    let n = rep.dim_v();
    let mut vanishes = true;
    for t in 0..cs.dim() {
        let elem = cs.element(t);
        for i in 0..2 * n {
            for j in i..2 * n {
                if (i < n) == (j < n) && elem.coords(i, j).iter().any(|c| !c.is_zero()) {
                    vanishes = false;
                }
            }
        }
    }
    if cs.dim() > 0 && p1.dim() == 0 {
        return Err(CurvatureError::Internal(
            "nonzero curvature space with vanishing first prolongation".into(),
        ));
    }
    Ok(LagrangianPairReport {
        algebra: rep.name().to_string(),
        dim_l: n,
        dim_first_prolongation: p1.dim(),
        curvature_dim: cs.dim(),
        vanishes_on_lagrangian_pairs: vanishes,
    })
}

/// Basis (as curvature elements) of the subspace of `cs` annihilated by
/// the natural action of every algebra basis element.
pub fn annihilated_curvature(
    rep: &MatrixRep,
    cs: &CurvatureSpace,
) -> Result<Vec<CurvatureElement>, CurvatureError> {
    let d = cs.dim();
    if d == 0 {
        return Ok(Vec::new());
    }
    let len = cs.basis()[0].len();
    let g = rep.dim_g();
    let mut m = Mat::zero(g * len, d);
    for t in 0..d {
        let elem = cs.element(t);
        for a in 0..g {
            let acted = g_action(rep, a, &elem)?;
            for (u, c) in acted.coeff().iter().enumerate() {
                if !c.is_zero() {
                    m.add_to(a * len + u, t, c);
                }
            }
        }
    }
    Ok(kernel(&m).basis.into_iter().map(|c| cs.combine(&c)).collect())
}

/// A Lie superalgebra `g + (odd module)` with odd-odd bracket given by an
/// invariant curvature element.
#[derive(Clone, Debug)]
pub struct SuperPair {
    even: MatrixRep,
    odd_dim: usize,
    bracket: CurvatureElement,
    span_dim: usize,
    spans: bool,
}

impl SuperPair {
    /// The even part acting on the odd module.
    pub fn even(&self) -> &MatrixRep {
        &self.even
    }

    pub fn odd_dim(&self) -> usize {
        self.odd_dim
    }

    /// The curvature element defining the odd-odd bracket.
    pub fn bracket(&self) -> &CurvatureElement {
        &self.bracket
    }

    /// Whether the odd-odd brackets span the whole even part.
    pub fn spans(&self) -> bool {
        self.spans
    }

    pub fn span_dim(&self) -> usize {
        self.span_dim
    }
}

fn matrix_from_coords(rep: &MatrixRep, coords: &[Scalar]) -> Mat {
    let n = rep.dim_v();
    let mut m = Mat::zero(n, n);
    for (a, c) in coords.iter().enumerate() {
        if !c.is_zero() {
            m = m.add(&rep.basis()[a].scale(c));
        }
    }
    m
}

/// Build the Lie superalgebra with even part `rep`, odd part the module,
/// and odd-odd bracket `r`, verifying every graded Jacobi identity
/// exactly.
///
/// `r` must be a symmetric curvature element for `rep` satisfying the
/// first Bianchi identity and annihilated by the algebra; those two
/// preconditions are re-checked here (they are exactly the odd-odd-odd and
/// even-odd-odd Jacobi identities).  The even-even identities are verified
/// as well; their failure would indicate corrupted bracket data and is
/// reported as an internal error.
pub fn build_symmetric_pair(
    rep: &MatrixRep,
    r: &CurvatureElement,
) -> Result<SuperPair, CurvatureError> {
    if r.kind() != CurvatureKind::Odd {
        return Err(CurvatureError::InvalidCurvature(
            "the odd-odd bracket must be a symmetric (odd-kind) element".into(),
        ));
    }
    let n = rep.dim_v();
    let g = rep.dim_g();
    if r.dim_v != n || r.dim_g != g {
        return Err(CurvatureError::InvalidCurvature(
            "curvature element shaped for a different representation".into(),
        ));
    }

    // Odd-odd-odd Jacobi: the cyclic sum of [[Px,Py],Pz] = P(R(x,y)z) is
    // the first Bianchi sum.
    for (i, j, k) in multiset_triples(n) {
        if r.bianchi_defect(rep, i, j, k).iter().any(|d| !d.is_zero()) {
            return Err(CurvatureError::InvalidCurvature(format!(
                "first Bianchi identity fails on basis triple ({i},{j},{k})"
            )));
        }
    }

    // Even-odd-odd Jacobi: [A,[Px,Py]] = [[A,Px],Py] + [Px,[A,Py]], i.e.
    // [A, R(x,y)] = R(Ax,y) + R(x,Ay).  Checked at the matrix level,
    // independently of the coefficient-space action used elsewhere.
    for (a, a_mat) in rep.basis().iter().enumerate() {
        for (i, j) in kind_pairs(CurvatureKind::Odd, n) {
            let lhs = a_mat.commutator(&r.value(rep, i, j));
            let mut rhs = Mat::zero(n, n);
            for (moved, fixed) in [(i, j), (j, i)] {
                let col: Vec<Scalar> = (0..n).map(|row| a_mat.get(row, moved)).collect();
                rhs = rhs.add(&matrix_from_coords(rep, &r.coords_vec_left(&col, fixed)));
            }
            if !lhs.sub(&rhs).is_zero() {
                return Err(CurvatureError::InvalidCurvature(format!(
                    "algebra basis element {a} does not annihilate the bracket"
                )));
            }
        }
    }

    // Even-even-even Jacobi on strictly increasing algebra triples.
    for a in 0..g {
        for b in (a + 1)..g {
            for c in (b + 1)..g {
                let (ma, mb, mc) = (&rep.basis()[a], &rep.basis()[b], &rep.basis()[c]);
                let sum = ma
                    .commutator(mb)
                    .commutator(mc)
                    .add(&mb.commutator(mc).commutator(ma))
                    .add(&mc.commutator(ma).commutator(mb));
                if !sum.is_zero() {
                    return Err(CurvatureError::Internal(format!(
                        "even Jacobi identity fails on triple ({a},{b},{c})"
                    )));
                }
            }
        }
    }

    // Even-even-odd Jacobi: [[A,B],Px] = [A,[B,Px]] - [B,[A,Px]] as
    // module vectors.
    for a in 0..g {
        for b in (a + 1)..g {
            let (ma, mb) = (&rep.basis()[a], &rep.basis()[b]);
            let comm = ma.commutator(mb);
            for x in 0..n {
                let e: Vec<Scalar> = (0..n)
                    .map(|u| if u == x { Scalar::one() } else { Scalar::zero() })
                    .collect();
                let lhs = comm.mul_vec(&e);
                let via_a = ma.mul_vec(&mb.mul_vec(&e));
                let via_b = mb.mul_vec(&ma.mul_vec(&e));
                let ok = lhs
                    .iter()
                    .zip(via_a.iter().zip(via_b.iter()))
                    .all(|(l, (p, q))| (l - &(p - q)).is_zero());
                if !ok {
                    return Err(CurvatureError::Internal(format!(
                        "mixed Jacobi identity fails on ({a},{b}) at vector {x}"
                    )));
                }
            }
        }
    }

    let mut span = RowBasis::new(n * n);
    for (i, j) in kind_pairs(CurvatureKind::Odd, n) {
        span.insert(&r.value(rep, i, j).to_dense_vec())?;
    }
    let span_dim = span.dim();
    Ok(SuperPair {
        even: rep.clone(),
        odd_dim: n,
        bracket: r.clone(),
        span_dim,
        spans: span_dim == g,
    })
}
