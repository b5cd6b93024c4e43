//! The holonomy algebra of an odd Riemannian supermetric at its base
//! point.

use serde_json::json;

use crate::exactlin::{Mat, RowBasis, Scalar};
use crate::liealg::{is_irreducible, Field, MatrixRep};

use super::tensor::{covariant_derivative, curvature, SuperTensor};
use super::{levi_civita, SuperConnection, SuperMetric, SupergeoError};

/// The computed holonomy data: generator values `∇^r R(∂_β, ∂_γ)` at the
/// point, a basis of their span, and structural flags.
#[derive(Clone)]
pub struct HolonomyReport {
    pub m: usize,
    /// All nonzero generator values, in enumeration order (derivative
    /// order, then index set, then argument pair).
    pub generators: Vec<Mat>,
    /// Echelon basis of the span of the generators.
    pub basis: Vec<Mat>,
    pub dim: usize,
    /// Every generator `G` satisfies `Gᵀω + ωG = 0`.
    pub contained_in_sp: bool,
    /// The span is closed under the matrix commutator.
    pub bracket_closed: bool,
    /// The span acts irreducibly on the odd directions.
    pub irreducible: bool,
}

impl HolonomyReport {
    pub fn to_json(&self) -> String {
        let mats = |list: &[Mat]| -> Vec<Vec<Vec<String>>> {
            list.iter().map(dense_strings).collect()
        };
        let value = json!({
            "m": self.m,
            "dim": self.dim,
            "contained_in_sp": self.contained_in_sp,
            "bracket_closed": self.bracket_closed,
            "irreducible": self.irreducible,
            "generators": mats(&self.generators),
            "basis": mats(&self.basis),
        });
        serde_json::to_string_pretty(&value).expect("report serialization cannot fail")
    }
}

fn dense_strings(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
        .collect()
}

/// The curvature tensor and its covariant derivatives up to order `2m`.
fn derivative_levels(
    metric: &SuperMetric,
) -> Result<(SuperConnection, Vec<SuperTensor>), SupergeoError> {
    let conn = levi_civita(metric)?;
    let n = metric.n();
    let mut levels = vec![curvature(&conn)];
    for _ in 1..=n {
        let next = covariant_derivative(&conn, levels.last().expect("nonempty"));
        levels.push(next);
    }
    Ok((conn, levels))
}

/// Value at the point of `∇^r R(∂_β, ∂_γ)` as an endomorphism matrix; the
/// derivative slots are filled with `slots` as given.
fn value_matrix(level: &SuperTensor, slots: &[usize], beta: usize, gamma: usize) -> Mat {
    let n = level.gens();
    let mut lows = Vec::with_capacity(slots.len() + 3);
    lows.extend_from_slice(slots);
    lows.extend_from_slice(&[beta, gamma, 0]);
    Mat::from_fn(n, n, |delta, lambda| {
        *lows.last_mut().expect("nonempty") = lambda;
        Scalar::from_rat(level.get(delta, &lows).body())
    })
}

/// Subsets of `{0..n}` of size `r` as ascending index lists, enumerated in
/// ascending bitmask order.
fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    (0u64..(1 << n))
        .filter(|m| m.count_ones() as usize == r)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect()
}

/// Compute the holonomy algebra of `metric` at the base point: the span of
/// all `∇^r_{∂_{α_r}, …, ∂_{α_1}} R(∂_β, ∂_γ)` with `α_1 < … < α_r`,
/// `r ≤ 2m`, evaluated at the point.
pub fn holonomy(metric: &SuperMetric) -> Result<HolonomyReport, SupergeoError> {
    let n = metric.n();
    let (_, levels) = derivative_levels(metric)?;
    let omega = metric.body_matrix();

    let mut generators = Vec::new();
    let mut span = RowBasis::new(n * n);
    for (r, level) in levels.iter().enumerate() {
        for subset in subsets(n, r) {
            // Outermost derivative first: the tensor slots are
            // `(α_r, …, α_1, β, γ, argument)`.
            let slots: Vec<usize> = subset.iter().rev().copied().collect();
            for beta in 0..n {
                for gamma in beta..n {
                    let g = value_matrix(level, &slots, beta, gamma);
                    if g.is_zero() {
                        continue;
                    }
                    span.insert(&g.to_dense_vec())?;
                    generators.push(g);
                }
            }
        }
    }

    let basis: Vec<Mat> = span
        .dense_rows()
        .into_iter()
        .map(|row| Mat::from_dense_vec(n, n, &row))
        .collect();

    let contained_in_sp = generators
        .iter()
        .all(|g| g.transpose().mul(&omega).add(&omega.mul(g)).is_zero());

    let mut bracket_closed = true;
    'outer: for (i, a) in basis.iter().enumerate() {
        for b in basis.iter().skip(i + 1) {
            if span.contains(&a.commutator(b).to_dense_vec())?.is_none() {
                bracket_closed = false;
                break 'outer;
            }
        }
    }

    let rep = MatrixRep::new_unchecked("holonomy", Field::Rational, n, basis.clone(), None);
    let irreducible = is_irreducible(&rep)?.irreducible;

    Ok(HolonomyReport {
        m: metric.m(),
        generators,
        basis,
        dim: span.dim(),
        contained_in_sp,
        bracket_closed,
        irreducible,
    })
}

/// Debugging variant of the span: derivative multi-indices range over all
/// tuples (repetitions and arbitrary order allowed) instead of strictly
/// increasing sets.  Nilpotency of the odd coordinates makes the two spans
/// agree; this function lets tests confirm that instead of assuming it.
pub fn unrestricted_span_dim(metric: &SuperMetric) -> Result<usize, SupergeoError> {
    let n = metric.n();
    let (_, levels) = derivative_levels(metric)?;
    let mut span = RowBasis::new(n * n);
    for (r, level) in levels.iter().enumerate() {
        let tuples = n.pow(r as u32);
        for code in 0..tuples {
            let mut slots = Vec::with_capacity(r);
            let mut rest = code;
            for _ in 0..r {
                slots.push(rest % n);
                rest /= n;
            }
            for beta in 0..n {
                for gamma in beta..n {
                    let g = value_matrix(level, &slots, beta, gamma);
                    if !g.is_zero() {
                        span.insert(&g.to_dense_vec())?;
                    }
                }
            }
        }
    }
    Ok(span.dim())
}

#[cfg(test)]
mod tests {
    use super::super::{product_metric, random_metric, GrassmannElement};
    use super::*;
    use crate::curvature::{curvature_space, CurvatureElement, CurvatureKind};
    use crate::exactlin::Rat;
    use crate::liealg::{sp, FormKind, InvariantForm};

    fn rat(v: i64) -> Rat {
        Rat::from_integer(v.into())
    }

    /// `g(∂_1, ∂_2) = 1 + c ξ¹ξ²` on two odd coordinates.
    fn quadratic_metric(c: i64) -> SuperMetric {
        let e = &GrassmannElement::one(2)
            + &GrassmannElement::monomial(2, &[0, 1], rat(c)).unwrap();
        SuperMetric::new(1, vec![((0, 1), e)]).unwrap()
    }

    #[test]
    fn standard_metric_has_trivial_holonomy() {
        let report = holonomy(&SuperMetric::standard(2)).unwrap();
        assert_eq!(report.dim, 0);
        assert!(report.generators.is_empty());
        assert!(report.contained_in_sp);
        assert!(report.bracket_closed);
        assert!(!report.irreducible);
    }

    #[test]
    fn quadratic_metric_fills_the_symplectic_algebra() {
        // For g(∂_1,∂_2) = 1 + c ξ¹ξ², the zeroth-order values already
        // span all of sp(2,R): the computed dimension is exactly 3.
        let report = holonomy(&quadratic_metric(3)).unwrap();
        assert_eq!(report.dim, 3);
        assert!(report.contained_in_sp);
        assert!(report.bracket_closed);
        assert!(report.irreducible);
        let c = 3;
        let expected = [
            Mat::from_int_rows(&[&[0, 2 * c], &[0, 0]]),
            Mat::from_int_rows(&[&[-c, 0], &[0, c]]),
            Mat::from_int_rows(&[&[0, 0], &[-2 * c, 0]]),
        ];
        assert_eq!(&report.generators[..3], &expected[..]);
    }

    #[test]
    fn strict_and_unrestricted_derivative_spans_agree() {
        for seed in 0..3 {
            let g = random_metric(1, seed, 2);
            assert_eq!(holonomy(&g).unwrap().dim, unrestricted_span_dim(&g).unwrap());
        }
        let g = random_metric(2, 0, 4);
        assert_eq!(holonomy(&g).unwrap().dim, unrestricted_span_dim(&g).unwrap());
    }

    #[test]
    fn product_metric_holonomy_decomposes_into_blocks() {
        let a = quadratic_metric(3);
        let b = quadratic_metric(5);
        let p = product_metric(&a, &b);
        let report = holonomy(&p).unwrap();
        let da = holonomy(&a).unwrap().dim;
        let db = holonomy(&b).unwrap().dim;
        assert_eq!((da, db), (3, 3));
        assert_eq!(report.dim, da + db);
        assert!(report.contained_in_sp);
        assert!(report.bracket_closed);
        assert!(!report.irreducible);
        let in_first = |i: usize| i < 2;
        for g in &report.generators {
            for r in 0..4 {
                for c in 0..4 {
                    if in_first(r) != in_first(c) {
                        assert!(g.get(r, c).is_zero(), "cross-block entry");
                    }
                }
            }
        }

        // The block split matches the invariant-summand decomposition of
        // the spanned symplectic representation.
        let rep = MatrixRep::new_unchecked(
            "holonomy of a product metric",
            Field::Rational,
            4,
            report.basis.clone(),
            Some(InvariantForm { kind: FormKind::Skew, matrix: p.body_matrix() }),
        );
        let blocks = crate::curvature::wu_decompose(&rep).unwrap();
        assert_eq!(blocks.len(), 2);
        for block in &blocks {
            assert!(!block.trivial());
            let support: Vec<bool> = (0..4)
                .map(|i| block.vectors().iter().any(|v| !v[i].is_zero()))
                .collect();
            let first = support[0] || support[1];
            let second = support[2] || support[3];
            assert!(first != second, "block mixes the two factors");
        }
    }

    #[test]
    fn curvature_value_lies_in_the_symplectic_curvature_space() {
        // The body of R is a symmetric g-valued pairing with the first
        // Bianchi identity, i.e. an element of the curvature space of
        // sp(2,R) — checked against the algebraic solver.
        let metric = quadratic_metric(3);
        let report = holonomy(&metric).unwrap();
        let rep = sp(2, Field::Rational).unwrap();
        let sb = rep.span_basis().unwrap();
        let mut coeff = Vec::new();
        for g in &report.generators[..3] {
            let coords = sb
                .contains(&g.to_dense_vec())
                .unwrap()
                .expect("curvature value must lie in sp(2)");
            coeff.extend(coords);
        }
        let elem = CurvatureElement::from_coeff(CurvatureKind::Odd, 2, 3, coeff).unwrap();
        let cs = curvature_space(&rep, CurvatureKind::Odd);
        assert!(cs.contains(&elem).unwrap());
    }

    #[test]
    fn report_serializes_with_flags_and_matrices() {
        let report = holonomy(&quadratic_metric(1)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(value["m"], 1);
        assert_eq!(value["dim"], 3);
        assert_eq!(value["contained_in_sp"], true);
        assert_eq!(value["generators"][0][0][1], "2");
        assert_eq!(value["basis"].as_array().unwrap().len(), 3);
    }
}
