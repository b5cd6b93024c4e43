//! The Levi-Civita superconnection of an odd Riemannian supermetric.

use num::One;

use crate::exactlin::{rank, solve, Mat, Rat, Scalar};

use super::{GrassmannElement, SuperMetric, SupergeoError};

/// Christoffel symbols `Γ^δ_{αβ}` of a torsion-free metric
/// superconnection: `∇_{∂_α} ∂_β = Σ_δ Γ^δ_{αβ} ∂_δ`.
///
/// Because the frame fields are odd, the symbols are odd Grassmann
/// elements and vanishing torsion makes them antisymmetric in the lower
/// index pair (the coordinate super-bracket `[∂_α, ∂_β]` is the
/// anticommutator, which vanishes).
#[derive(Clone, Debug, PartialEq)]
pub struct SuperConnection {
    m: usize,
    /// `n³` symbols, index `(upper·n + a)·n + b`.
    gamma: Vec<GrassmannElement>,
}

impl SuperConnection {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of odd coordinates, `2m`.
    pub fn n(&self) -> usize {
        2 * self.m
    }

    /// The symbol `Γ^upper_{a b}` (0-based).
    pub fn gamma(&self, upper: usize, a: usize, b: usize) -> &GrassmannElement {
        let n = self.n();
        &self.gamma[(upper * n + a) * n + b]
    }

    /// Whether every symbol vanishes (the metric is flat to first order).
    pub fn is_zero(&self) -> bool {
        self.gamma.iter().all(GrassmannElement::is_zero)
    }
}

/// All bitmasks over `n` generators with odd popcount, ascending, plus a
/// position lookup table.
fn odd_masks(n: usize) -> (Vec<u64>, Vec<usize>) {
    let mut masks = Vec::new();
    let mut lookup = vec![usize::MAX; 1 << n];
    for mask in 0u64..(1 << n) {
        if mask.count_ones() % 2 == 1 {
            lookup[mask as usize] = masks.len();
            masks.push(mask);
        }
    }
    (masks, lookup)
}

/// Compute the Levi-Civita superconnection by solving the defining linear
/// system — metricity `∂_α g(∂_β,∂_γ) = g(∇_α ∂_β, ∂_γ) - g(∂_β, ∇_α ∂_γ)`
/// expanded in components, with vanishing torsion built into the unknowns
/// — and checking that the solution is unique.
pub fn levi_civita(metric: &SuperMetric) -> Result<SuperConnection, SupergeoError> {
    let n = metric.n();
    if rank(&metric.body_matrix()) != n {
        return Err(SupergeoError::Precondition(
            "metric body is degenerate".into(),
        ));
    }

    let (masks, mask_idx) = odd_masks(n);
    let n_odd = masks.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .collect();
    let npairs = pairs.len();
    let pair_of = |a: usize, b: usize| -> Option<(usize, i64)> {
        use std::cmp::Ordering;
        match a.cmp(&b) {
            Ordering::Equal => None,
            Ordering::Less => Some((a * (2 * n - a - 1) / 2 + (b - a - 1), 1)),
            Ordering::Greater => Some((b * (2 * n - b - 1) / 2 + (a - b - 1), -1)),
        }
    };

    // Unknowns: the coefficient of odd monomial `s` in `Γ^eps_{pair}`.
    let unk = |pair: usize, eps: usize, s: usize| (pair * n + eps) * n_odd + s;
    let total = npairs * n * n_odd;
    let mut a_mat = Mat::zero(n * npairs * n_odd, total);
    let mut rhs = vec![Scalar::zero(); n * npairs * n_odd];

    for alpha in 0..n {
        for (pi, &(beta, gamma)) in pairs.iter().enumerate() {
            let eq_base = (alpha * npairs + pi) * n_odd;
            for (idx, c) in metric.entry(beta, gamma).deriv(alpha).terms() {
                let mask = idx.iter().fold(0u64, |m, &i| m | (1 << i));
                rhs[eq_base + mask_idx[mask as usize]] = Scalar::from_rat(c.clone());
            }
            // `Σ_eps Γ^eps_{α β} g_{eps γ} + Σ_eps Γ^eps_{α γ} g_{β eps}`:
            // multiply each odd unknown monomial by the relevant metric
            // component and collect the coefficient per odd monomial.
            let contributions = [
                (pair_of(alpha, beta), gamma, false),
                (pair_of(alpha, gamma), beta, true),
            ];
            for (pair, other, other_first) in contributions {
                let Some((p_idx, sign)) = pair else { continue };
                for eps in 0..n {
                    let g_part = if other_first {
                        metric.entry(other, eps)
                    } else {
                        metric.entry(eps, other)
                    };
                    for (s_idx, &s_mask) in masks.iter().enumerate() {
                        let col = unk(p_idx, eps, s_idx);
                        let idx: Vec<usize> =
                            (0..n).filter(|i| s_mask & (1 << i) != 0).collect();
                        let basis = GrassmannElement::monomial(n, &idx, Rat::one())
                            .expect("mask indices are sorted and in range");
                        for (t_idx, c) in (&basis * g_part).terms() {
                            let t_mask = t_idx.iter().fold(0u64, |m, &i| m | (1 << i));
                            let coeff = Scalar::from_rat(if sign < 0 { -c } else { c.clone() });
                            a_mat.add_to(eq_base + mask_idx[t_mask as usize], col, &coeff);
                        }
                    }
                }
            }
        }
    }

    let solution = solve(&a_mat, &rhs).ok_or_else(|| {
        SupergeoError::Internal("the metricity system is inconsistent".into())
    })?;
    if solution.nullity != 0 {
        return Err(SupergeoError::Internal(
            "the defining system does not determine the connection uniquely".into(),
        ));
    }

    let mut gamma = vec![GrassmannElement::zero(n); n * n * n];
    for (pi, &(a, b)) in pairs.iter().enumerate() {
        for eps in 0..n {
            let mut e = GrassmannElement::zero(n);
            for (s_idx, &s_mask) in masks.iter().enumerate() {
                let v = &solution.particular[unk(pi, eps, s_idx)];
                if v.is_zero() {
                    continue;
                }
                let idx: Vec<usize> = (0..n).filter(|i| s_mask & (1 << i) != 0).collect();
                e = &e + &GrassmannElement::monomial(n, &idx, v.re().clone())?;
            }
            gamma[(eps * n + b) * n + a] = -&e;
            gamma[(eps * n + a) * n + b] = e;
        }
    }
    Ok(SuperConnection { m: metric.m(), gamma })
}

#[cfg(test)]
mod tests {
    use super::super::{product_metric, random_metric};
    use super::*;
    use crate::exactlin::Rat;

    fn rat(v: i64) -> Rat {
        Rat::from_integer(v.into())
    }

    /// Metricity defect `∂_α g_{βγ} - Σ Γ^ε_{αβ} g_{εγ} - Σ Γ^ε_{αγ} g_{βε}`.
    fn metricity_defect(
        g: &SuperMetric,
        conn: &SuperConnection,
        alpha: usize,
        beta: usize,
        gamma: usize,
    ) -> GrassmannElement {
        let n = g.n();
        let mut defect = g.entry(beta, gamma).deriv(alpha);
        for eps in 0..n {
            defect = &defect - &(conn.gamma(eps, alpha, beta) * g.entry(eps, gamma));
            defect = &defect - &(conn.gamma(eps, alpha, gamma) * g.entry(beta, eps));
        }
        defect
    }

    #[test]
    fn standard_metric_has_zero_connection() {
        for m in [1, 2] {
            let conn = levi_civita(&SuperMetric::standard(m)).unwrap();
            assert!(conn.is_zero());
        }
    }

    #[test]
    fn quadratic_term_connection_matches_the_hand_solution() {
        // g(∂_1,∂_2) = 1 + 3 ξ¹ξ² forces Γ^1_{12} = 3ξ¹ and Γ^2_{12} = 3ξ².
        let e = &GrassmannElement::one(2)
            + &GrassmannElement::monomial(2, &[0, 1], rat(3)).unwrap();
        let g = SuperMetric::new(1, vec![((0, 1), e)]).unwrap();
        let conn = levi_civita(&g).unwrap();
        let xi = |i| GrassmannElement::generator(2, i);
        assert_eq!(conn.gamma(0, 0, 1), &xi(0).scale(&rat(3)));
        assert_eq!(conn.gamma(1, 0, 1), &xi(1).scale(&rat(3)));
        assert_eq!(conn.gamma(0, 1, 0), &xi(0).scale(&rat(-3)));
        assert!(conn.gamma(0, 0, 0).is_zero());
        assert!(conn.gamma(1, 1, 1).is_zero());
    }

    #[test]
    fn metricity_and_torsion_hold_for_random_metrics() {
        let mut cases = Vec::new();
        for seed in 0..4 {
            cases.push(random_metric(1, seed, 2));
        }
        for seed in 0..2 {
            cases.push(random_metric(2, seed, 4));
        }
        for g in cases {
            let n = g.n();
            let conn = levi_civita(&g).unwrap();
            for alpha in 0..n {
                for beta in 0..n {
                    for gamma in 0..n {
                        assert!(
                            metricity_defect(&g, &conn, alpha, beta, gamma).is_zero(),
                            "metricity fails at ({alpha},{beta},{gamma})"
                        );
                    }
                }
            }
            for upper in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        let sum = conn.gamma(upper, a, b) + conn.gamma(upper, b, a);
                        assert!(sum.is_zero(), "torsion does not vanish");
                        assert!(
                            !conn.gamma(upper, a, b).has_even_part(),
                            "symbols must be odd"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn block_metric_connection_decouples() {
        let a = random_metric(1, 11, 2);
        let b = random_metric(1, 12, 2);
        let p = product_metric(&a, &b);
        let conn = levi_civita(&p).unwrap();
        let conn_a = levi_civita(&a).unwrap();
        let in_first = |i: usize| i < 2;
        for upper in 0..4 {
            for x in 0..4 {
                for y in 0..4 {
                    let same_block = in_first(upper) == in_first(x)
                        && in_first(x) == in_first(y);
                    if !same_block {
                        assert!(conn.gamma(upper, x, y).is_zero());
                    }
                }
            }
        }
        assert_eq!(
            conn.gamma(0, 0, 1),
            &conn_a.gamma(0, 0, 1).embed(4, 0).unwrap()
        );
    }
}
