use serde::{Deserialize, Serialize};

use crate::exactlin::{rank, InsertOutcome, Mat, MatEntry, RowBasis, Scalar};

use super::LiealgError;

/// Coefficient field of a representation.
///
/// `Rational` and `Gaussian` are the two actual fields. `GaussianAsReal`
/// tags a representation whose entries are rational but which remembers
/// that it arose by viewing a complex module as a real one (so twice the
/// complex dimension); algorithms treat it exactly like `Rational`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Field {
    Rational,
    Gaussian,
    GaussianAsReal,
}

impl Field {
    /// True when scalars from the imaginary axis are allowed in entries.
    pub fn allows_imaginary(self) -> bool {
        matches!(self, Field::Gaussian)
    }

    /// True when the representation should be treated as a real one
    /// (irreducibility over R, real spans, ...).
    pub fn is_real(self) -> bool {
        !self.allows_imaginary()
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Field::Rational => "rational",
            Field::Gaussian => "gaussian",
            Field::GaussianAsReal => "gaussian-as-real",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symmetric,
    Skew,
}

/// A nondegenerate bilinear form preserved by every basis matrix:
/// `Aᵀ G + G A = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantForm {
    pub kind: FormKind,
    pub matrix: Mat,
}

/// A Lie algebra given by a basis of matrices acting on a fixed module.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRep {
    name: String,
    field: Field,
    dim_v: usize,
    basis: Vec<Mat>,
    form: Option<InvariantForm>,
}

impl MatrixRep {
    /// Builds and fully validates a representation: square matrices of the
    /// right size, entries compatible with the field, linear independence,
    /// bracket closure, and (when present) invariance and symmetry type of
    /// the form.
    pub fn new(
        name: impl Into<String>,
        field: Field,
        dim_v: usize,
        basis: Vec<Mat>,
        form: Option<InvariantForm>,
    ) -> Result<Self, LiealgError> {
        let name = name.into();
        let rep = MatrixRep {
            name,
            field,
            dim_v,
            basis,
            form,
        };
        rep.validate()?;
        Ok(rep)
    }

    /// Same as [`MatrixRep::new`] but skips validation. For internal
    /// constructions whose output is checked by the caller or by tests.
    pub(crate) fn new_unchecked(
        name: impl Into<String>,
        field: Field,
        dim_v: usize,
        basis: Vec<Mat>,
        form: Option<InvariantForm>,
    ) -> Self {
        MatrixRep {
            name: name.into(),
            field,
            dim_v,
            basis,
            form,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Dimension of the module the algebra acts on.
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    /// Dimension of the algebra (number of basis matrices).
    pub fn dim_g(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn form(&self) -> Option<&InvariantForm> {
        self.form.as_ref()
    }

    pub fn take_form(&mut self) -> Option<InvariantForm> {
        self.form.take()
    }

    pub fn set_form(&mut self, form: Option<InvariantForm>) {
        self.form = form;
    }

    /// The commutator `[basis[i], basis[j]]`.
    pub fn bracket(&self, i: usize, j: usize) -> Mat {
        self.basis[i].commutator(&self.basis[j])
    }

    /// A [`RowBasis`] over the flattened basis matrices; insertion order is
    /// the basis order, so `contains` coordinates are bracket coefficients.
    pub fn span_basis(&self) -> Result<RowBasis, LiealgError> {
        let mut rb = RowBasis::new(self.dim_v * self.dim_v);
        for (k, a) in self.basis.iter().enumerate() {
            match rb.insert(&a.to_dense_vec())? {
                InsertOutcome::Extended => {}
                InsertOutcome::InSpan(_) => {
                    return Err(LiealgError::InvalidStructure(format!(
                        "basis matrix {} of {} is a combination of earlier ones",
                        k, self.name
                    )))
                }
            }
        }
        Ok(rb)
    }

    /// Structure constants: `c[i][j]` lists `(k, coeff)` with
    /// `[A_i, A_j] = Σ coeff · A_k`, for all pairs (antisymmetry is used to
    /// fill `j < i`).
    pub fn structure_constants(&self) -> Result<Vec<Vec<Vec<(usize, Scalar)>>>, LiealgError> {
        let rb = self.span_basis()?;
        let d = self.dim_g();
        let mut table = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in (i + 1)..d {
                let b = self.bracket(i, j);
                let coords = rb.contains(&b.to_dense_vec())?.ok_or_else(|| {
                    LiealgError::InvalidStructure(format!(
                        "[{}] bracket ({}, {}) escapes the span",
                        self.name, i, j
                    ))
                })?;
                let sparse: Vec<(usize, Scalar)> = coords
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, c.clone()))
                    .collect();
                table[j][i] = sparse.iter().map(|(k, c)| (*k, -c)).collect();
                table[i][j] = sparse;
            }
        }
        Ok(table)
    }

    fn validate(&self) -> Result<(), LiealgError> {
        for (k, a) in self.basis.iter().enumerate() {
            if a.rows() != self.dim_v || a.cols() != self.dim_v {
                return Err(LiealgError::InvalidStructure(format!(
                    "[{}] basis matrix {} is {}x{}, expected {}x{}",
                    self.name,
                    k,
                    a.rows(),
                    a.cols(),
                    self.dim_v,
                    self.dim_v
                )));
            }
            if self.field.is_real() {
                if let Some((r, c, _)) = a.iter().find(|(_, _, v)| !v.is_real()) {
                    return Err(LiealgError::FieldMismatch(format!(
                        "[{}] basis matrix {} has imaginary entry at ({}, {}) over {}",
                        self.name, k, r, c, self.field
                    )));
                }
            }
        }
        let rb = self.span_basis()?;
        for i in 0..self.dim_g() {
            for j in (i + 1)..self.dim_g() {
                let b = self.bracket(i, j);
                if rb.contains(&b.to_dense_vec())?.is_none() {
                    return Err(LiealgError::InvalidStructure(format!(
                        "[{}] not closed under bracket at pair ({}, {})",
                        self.name, i, j
                    )));
                }
            }
        }
        if let Some(form) = &self.form {
            let g = &form.matrix;
            if g.rows() != self.dim_v || g.cols() != self.dim_v {
                return Err(LiealgError::InvalidStructure(format!(
                    "[{}] form matrix has wrong shape",
                    self.name
                )));
            }
            let gt = g.transpose();
            let symmetric_ok = match form.kind {
                FormKind::Symmetric => gt == *g,
                FormKind::Skew => gt == g.neg(),
            };
            if !symmetric_ok {
                return Err(LiealgError::InvalidStructure(format!(
                    "[{}] form matrix does not have the declared symmetry",
                    self.name
                )));
            }
            if rank(g) != self.dim_v {
                return Err(LiealgError::InvalidStructure(format!(
                    "[{}] form matrix is degenerate",
                    self.name
                )));
            }
            for (k, a) in self.basis.iter().enumerate() {
                let lhs = a.transpose().mul(g).add(&g.mul(a));
                if !lhs.is_zero() {
                    return Err(LiealgError::InvalidStructure(format!(
                        "[{}] basis matrix {} does not preserve the form",
                        self.name, k
                    )));
                }
            }
        }
        Ok(())
    }

    /// Serializes to the on-disk JSON layout (entry-triple lists).
    pub fn to_json(&self) -> String {
        let json = RepJson {
            name: self.name.clone(),
            field: self.field,
            dim_v: self.dim_v,
            basis: self.basis.iter().map(|m| m.to_entry_list()).collect(),
            form: self.form.as_ref().map(|f| FormJson {
                kind: f.kind,
                matrix: f.matrix.to_entry_list(),
            }),
        };
        serde_json::to_string_pretty(&json).expect("representation serializes")
    }

    /// Parses and validates the JSON layout produced by [`MatrixRep::to_json`].
    pub fn from_json(text: &str) -> Result<Self, LiealgError> {
        let json: RepJson = serde_json::from_str(text)
            .map_err(|e| LiealgError::InvalidStructure(format!("bad representation JSON: {e}")))?;
        let basis = json
            .basis
            .into_iter()
            .map(|entries| Mat::from_entry_list(json.dim_v, json.dim_v, &entries))
            .collect::<Result<Vec<_>, _>>()?;
        let form = match json.form {
            None => None,
            Some(f) => Some(InvariantForm {
                kind: f.kind,
                matrix: Mat::from_entry_list(json.dim_v, json.dim_v, &f.matrix)?,
            }),
        };
        MatrixRep::new(json.name, json.field, json.dim_v, basis, form)
    }
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    name: String,
    field: Field,
    #[serde(rename = "dimV")]
    dim_v: usize,
    basis: Vec<Vec<MatEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    form: Option<FormJson>,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    kind: FormKind,
    matrix: Vec<MatEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar;

    fn sl2_basis() -> Vec<Mat> {
        vec![
            Mat::from_int_rows(&[&[0, 1], &[0, 0]]),
            Mat::from_int_rows(&[&[0, 0], &[1, 0]]),
            Mat::from_int_rows(&[&[1, 0], &[0, -1]]),
        ]
    }

    #[test]
    fn accepts_sl2_and_reports_structure_constants() {
        let rep = MatrixRep::new("sl(2)", Field::Rational, 2, sl2_basis(), None).unwrap();
        assert_eq!(rep.dim_g(), 3);
        let sc = rep.structure_constants().unwrap();
        // [e, f] = h, [h, e] = 2e, [h, f] = -2f
        assert_eq!(sc[0][1], vec![(2, Scalar::one())]);
        assert_eq!(sc[2][0], vec![(0, scalar("2"))]);
        assert_eq!(sc[2][1], vec![(1, scalar("-2"))]);
        assert_eq!(sc[1][0], vec![(2, scalar("-1"))]);
    }

    #[test]
    fn rejects_dependent_basis() {
        let mut basis = sl2_basis();
        basis.push(Mat::from_int_rows(&[&[0, 2], &[0, 0]]));
        let err = MatrixRep::new("bad", Field::Rational, 2, basis, None);
        assert!(matches!(err, Err(LiealgError::InvalidStructure(_))));
    }

    #[test]
    fn rejects_non_closed_set() {
        // { e, f } alone: [e, f] = h is outside the span.
        let basis = vec![
            Mat::from_int_rows(&[&[0, 1], &[0, 0]]),
            Mat::from_int_rows(&[&[0, 0], &[1, 0]]),
        ];
        let err = MatrixRep::new("open", Field::Rational, 2, basis, None);
        assert!(matches!(err, Err(LiealgError::InvalidStructure(_))));
    }

    #[test]
    fn rejects_imaginary_entries_over_rational() {
        let mut m = Mat::zero(2, 2);
        m.set(0, 1, Scalar::i());
        m.set(1, 0, Scalar::i());
        let err = MatrixRep::new("bad-field", Field::Rational, 2, vec![m], None);
        assert!(matches!(err, Err(LiealgError::FieldMismatch(_))));
    }

    #[test]
    fn validates_invariant_form() {
        // sl(2) preserves the symplectic area form [[0,1],[-1,0]].
        let form = InvariantForm {
            kind: FormKind::Skew,
            matrix: Mat::from_int_rows(&[&[0, 1], &[-1, 0]]),
        };
        let rep = MatrixRep::new("sp(2)", Field::Rational, 2, sl2_basis(), Some(form)).unwrap();
        assert_eq!(rep.form().unwrap().kind, FormKind::Skew);

        let bad = InvariantForm {
            kind: FormKind::Symmetric,
            matrix: Mat::identity(2),
        };
        let err = MatrixRep::new("bad-form", Field::Rational, 2, sl2_basis(), Some(bad));
        assert!(matches!(err, Err(LiealgError::InvalidStructure(_))));
    }

    #[test]
    fn json_round_trip() {
        let form = InvariantForm {
            kind: FormKind::Skew,
            matrix: Mat::from_int_rows(&[&[0, 1], &[-1, 0]]),
        };
        let rep = MatrixRep::new("sp(2)", Field::Rational, 2, sl2_basis(), Some(form)).unwrap();
        let text = rep.to_json();
        let back = MatrixRep::from_json(&text).unwrap();
        assert_eq!(rep, back);
    }
}
