//! Changing the base field: realification, complexification, and
//! splitting a real module along a commuting complex structure.

use num::Zero;

use crate::exactlin::{kernel, Mat, Scalar};

use super::derived::restrict_to_invariant;
use super::families::standard_j;
use super::rep::{Field, InvariantForm, MatrixRep};
use super::LiealgError;

/// A real matrix `J` with `J² = -I`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexStructure {
    j: Mat,
}

impl ComplexStructure {
    pub fn new(j: Mat) -> Result<Self, LiealgError> {
        if !j.is_square() {
            return Err(LiealgError::InvalidStructure(
                "complex structure must be square".into(),
            ));
        }
        if let Some((r, c, _)) = j.iter().find(|(_, _, v)| !v.is_real()) {
            return Err(LiealgError::InvalidStructure(format!(
                "complex structure has an imaginary entry at ({r}, {c})"
            )));
        }
        let n = j.rows();
        if j.mul(&j) != Mat::identity(n).neg() {
            return Err(LiealgError::InvalidStructure(
                "complex structure must square to -I".into(),
            ));
        }
        Ok(ComplexStructure { j })
    }

    /// The standard structure `[[0, -I], [I, 0]]` on `R^{2n}`.
    pub fn standard(n: usize) -> Self {
        ComplexStructure { j: standard_j(n) }
    }

    pub fn matrix(&self) -> &Mat {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }
}

/// Views a rational representation as a Gaussian one (same matrices).
pub fn complexify(rep: &MatrixRep) -> Result<MatrixRep, LiealgError> {
    if !rep.field().is_real() {
        return Err(LiealgError::FieldMismatch(format!(
            "complexify expects a real representation, got {}",
            rep.field()
        )));
    }
    Ok(MatrixRep::new_unchecked(
        format!("cx({})", rep.name()),
        Field::Gaussian,
        rep.dim_v(),
        rep.basis().to_vec(),
        rep.form().cloned(),
    ))
}

/// `realify(X + iY) = [[X, -Y], [Y, X]]` under `z = x + iy ↦ (x, y)`.
pub(crate) fn realify_mat(a: &Mat) -> Mat {
    let n = a.rows();
    let mut out = Mat::zero(2 * n, 2 * n);
    for (r, c, v) in a.iter() {
        let (x, y) = (v.re(), v.im());
        if !x.is_zero() {
            out.set(r, c, Scalar::from_rat(x.clone()));
            out.set(n + r, n + c, Scalar::from_rat(x.clone()));
        }
        if !y.is_zero() {
            out.set(r, n + c, Scalar::from_rat(-y.clone()));
            out.set(n + r, c, Scalar::from_rat(y.clone()));
        }
    }
    out
}

/// Realifies a Gaussian representation: each complex basis element `A`
/// contributes the real matrices for `A` and for `iA`, in that order
/// (first all `A`s, then all `iA`s). Returns the representation together
/// with the multiplication-by-`i` structure on the doubled module.
///
/// An invariant complex bilinear form `G = X + iY` descends to its real
/// part `[[X, -Y], [-Y, -X]]`, which keeps the same symmetry type.
pub fn realify(rep: &MatrixRep) -> Result<(MatrixRep, ComplexStructure), LiealgError> {
    if rep.field() != Field::Gaussian {
        return Err(LiealgError::FieldMismatch(format!(
            "realify expects a Gaussian representation, got {}",
            rep.field()
        )));
    }
    let n = rep.dim_v();
    let mut basis: Vec<Mat> = rep.basis().iter().map(realify_mat).collect();
    basis.extend(
        rep.basis()
            .iter()
            .map(|a| realify_mat(&a.scale(&Scalar::i()))),
    );
    let form = rep.form().map(|f| {
        let mut g = Mat::zero(2 * n, 2 * n);
        for (r, c, v) in f.matrix.iter() {
            let (x, y) = (v.re(), v.im());
            if !x.is_zero() {
                g.set(r, c, Scalar::from_rat(x.clone()));
                g.set(n + r, n + c, Scalar::from_rat(-x.clone()));
            }
            if !y.is_zero() {
                g.set(r, n + c, Scalar::from_rat(-y.clone()));
                g.set(n + r, c, Scalar::from_rat(-y.clone()));
            }
        }
        InvariantForm {
            kind: f.kind,
            matrix: g,
        }
    });
    let out = MatrixRep::new_unchecked(
        format!("realify({})", rep.name()),
        Field::GaussianAsReal,
        2 * n,
        basis,
        form,
    );
    Ok((out, ComplexStructure::standard(n)))
}

/// The two halves of splitting a real module along a commuting complex
/// structure: the `±i` eigenspace representations (over the Gaussian
/// field) and the eigenspace bases inside the original module.
pub struct SplitReps {
    pub plus: MatrixRep,
    pub minus: MatrixRep,
    pub basis_plus: Vec<Vec<Scalar>>,
    pub basis_minus: Vec<Vec<Scalar>>,
}

/// Splits a real representation along a complex structure `J` commuting
/// with every basis matrix, by restricting to the `±i` eigenspaces of `J`
/// inside the complexified module.
pub fn split_by_complex_structure(
    rep: &MatrixRep,
    j: &ComplexStructure,
) -> Result<SplitReps, LiealgError> {
    if !rep.field().is_real() {
        return Err(LiealgError::FieldMismatch(
            "split expects a real representation".into(),
        ));
    }
    let n = rep.dim_v();
    if j.dim() != n {
        return Err(LiealgError::InvalidStructure(format!(
            "complex structure has size {}, module has {}",
            j.dim(),
            n
        )));
    }
    for (k, a) in rep.basis().iter().enumerate() {
        if !a.commutator(j.matrix()).is_zero() {
            return Err(LiealgError::InvalidStructure(format!(
                "basis matrix {k} does not commute with the complex structure"
            )));
        }
    }
    let eigenspace = |sign_plus: bool| {
        // kernel of J ∓ i·I
        let shift = if sign_plus { -Scalar::i() } else { Scalar::i() };
        let mut m = j.matrix().clone();
        for d in 0..n {
            m.add_to(d, d, &shift);
        }
        kernel(&m).basis
    };
    let basis_plus = eigenspace(true);
    let basis_minus = eigenspace(false);
    if basis_plus.len() != n / 2 || basis_minus.len() != n / 2 {
        return Err(LiealgError::InvalidStructure(
            "eigenspaces of the complex structure have unexpected dimensions".into(),
        ));
    }
    let cx_view = MatrixRep::new_unchecked(
        rep.name().to_string(),
        Field::Gaussian,
        n,
        rep.basis().to_vec(),
        None,
    );
    let plus = restrict_to_invariant(&cx_view, &basis_plus, format!("split+({})", rep.name()))?;
    let minus = restrict_to_invariant(&cx_view, &basis_minus, format!("split-({})", rep.name()))?;
    Ok(SplitReps {
        plus,
        minus,
        basis_plus,
        basis_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::families::{sl, u_pq};
    use crate::liealg::{are_equivalent, conjugate};

    #[test]
    fn realify_doubles_and_validates() {
        let rep = sl(2, Field::Gaussian).unwrap();
        let (real, j) = realify(&rep).unwrap();
        assert_eq!(real.dim_g(), 6);
        assert_eq!(real.dim_v(), 4);
        MatrixRep::new("chk", real.field(), real.dim_v(), real.basis().to_vec(), None).unwrap();
        for a in real.basis() {
            assert!(a.commutator(j.matrix()).is_zero());
        }
    }

    #[test]
    fn split_of_a_realified_module_recovers_the_module_and_its_conjugate() {
        let rep = sl(2, Field::Gaussian).unwrap();
        let (real, j) = realify(&rep).unwrap();
        let split = split_by_complex_structure(&real, &j).unwrap();
        assert_eq!(split.plus.dim_v(), 2);
        assert_eq!(split.minus.dim_v(), 2);
        // The realified basis is A_1..A_d, iA_1..iA_d; on the +i eigenspace
        // the first half acts as the original module again.
        let plus_first: Vec<Mat> = split.plus.basis()[..rep.dim_g()].to_vec();
        let candidate = MatrixRep::new_unchecked(
            "first-half",
            Field::Gaussian,
            2,
            plus_first,
            None,
        );
        assert!(are_equivalent(&rep, &candidate).unwrap());
    }

    #[test]
    fn unitary_split_halves_commute_with_nothing_unexpected() {
        let rep = u_pq(2, 0).unwrap();
        let j = ComplexStructure::standard(2);
        let split = split_by_complex_structure(&rep, &j).unwrap();
        assert_eq!(split.plus.dim_v(), 2);
        // u(2) on the +i eigenspace is the full 2x2 antihermitian picture;
        // its complex span is all of gl(2), so the split representation has
        // four independent matrices.
        let vecs: Vec<Vec<Scalar>> = split.plus.basis().iter().map(|m| m.to_dense_vec()).collect();
        assert_eq!(crate::exactlin::span_dim(&vecs).unwrap(), 4);
    }

    #[test]
    fn conjugation_by_a_singular_matrix_fails() {
        let rep = sl(2, Field::Rational).unwrap();
        assert!(conjugate(&rep, &Mat::zero(2, 2)).is_err());
    }
}
