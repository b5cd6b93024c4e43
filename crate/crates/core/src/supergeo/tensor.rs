//! Curvature of a superconnection and iterated covariant derivatives.

use rayon::prelude::*;

use super::{GrassmannElement, SuperConnection, SuperMetric};

/// A tensor on the odd frame with Grassmann-element components: optionally
/// one upper index plus `lower` lower slots, all ranging over the `2m` odd
/// directions.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperTensor {
    gens: usize,
    has_upper: bool,
    lower: usize,
    /// Row-major components, upper index first (if present).
    comps: Vec<GrassmannElement>,
}

impl SuperTensor {
    /// Build componentwise; `f` receives the upper index (0 when there is
    /// none) and the lower index list.  Components are computed in
    /// parallel.
    pub fn from_fn(
        gens: usize,
        has_upper: bool,
        lower: usize,
        f: impl Fn(usize, &[usize]) -> GrassmannElement + Sync,
    ) -> Self {
        let slots = lower + usize::from(has_upper);
        let total = gens.pow(slots as u32);
        let comps: Vec<GrassmannElement> = (0..total)
            .into_par_iter()
            .map(|flat| {
                let (upper, lows) = decode(gens, has_upper, lower, flat);
                f(upper, &lows)
            })
            .collect();
        SuperTensor { gens, has_upper, lower, comps }
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn has_upper(&self) -> bool {
        self.has_upper
    }

    /// Number of lower slots.
    pub fn lower(&self) -> usize {
        self.lower
    }

    /// Component at the given indices; `upper` must be 0 for tensors
    /// without an upper index.
    pub fn get(&self, upper: usize, lows: &[usize]) -> &GrassmannElement {
        assert!(self.has_upper || upper == 0, "tensor has no upper index");
        assert_eq!(lows.len(), self.lower, "wrong number of lower indices");
        let mut flat = if self.has_upper { upper } else { 0 };
        for &i in lows {
            debug_assert!(i < self.gens);
            flat = flat * self.gens + i;
        }
        &self.comps[flat]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(GrassmannElement::is_zero)
    }
}

fn decode(gens: usize, has_upper: bool, lower: usize, mut flat: usize) -> (usize, Vec<usize>) {
    let mut lows = vec![0usize; lower];
    for slot in (0..lower).rev() {
        lows[slot] = flat % gens;
        flat /= gens;
    }
    (if has_upper { flat } else { 0 }, lows)
}

/// The metric as a `(0,2)` tensor, for feeding to
/// [`covariant_derivative`].
pub fn metric_tensor(metric: &SuperMetric) -> SuperTensor {
    let n = metric.n();
    SuperTensor::from_fn(n, false, 2, |_, l| metric.entry(l[0], l[1]).clone())
}

/// The curvature tensor `R(∂_α, ∂_β)∂_γ = Σ_δ R^δ_{αβγ} ∂_δ` of a
/// torsion-free superconnection.  With both vector-field arguments odd the
/// curvature operator is the anticommutator `∇_α∇_β + ∇_β∇_α`, so the
/// components are even and symmetric in `(α, β)`:
///
/// `R^δ_{αβγ} = ∂_α Γ^δ_{βγ} + ∂_β Γ^δ_{αγ}
///              - Σ_ε Γ^ε_{βγ} Γ^δ_{αε} - Σ_ε Γ^ε_{αγ} Γ^δ_{βε}`.
pub fn curvature(conn: &SuperConnection) -> SuperTensor {
    let n = conn.n();
    SuperTensor::from_fn(n, true, 3, |delta, l| {
        let (alpha, beta, gamma) = (l[0], l[1], l[2]);
        let mut acc = &conn.gamma(delta, beta, gamma).deriv(alpha)
            + &conn.gamma(delta, alpha, gamma).deriv(beta);
        for eps in 0..n {
            acc = &acc - &(conn.gamma(eps, beta, gamma) * conn.gamma(delta, alpha, eps));
            acc = &acc - &(conn.gamma(eps, alpha, gamma) * conn.gamma(delta, beta, eps));
        }
        acc
    })
}

/// Covariant derivative of a tensor with homogeneous components; the new
/// derivative slot is prepended:
///
/// `(∇T)^δ_{μ i_1 … i_s} = ∂_μ T^δ_{i…} + Σ_ε Γ^δ_{με} T^ε_{i…}
///                          - Σ_j Σ_ε Γ^ε_{μ i_j} T^δ_{… ε at j …}`.
///
/// For an odd derivative direction, odd slots, and homogeneous components
/// the super-signs of the Leibniz rule and of moving the symbols past
/// earlier arguments cancel pairwise, which is why no explicit signs
/// appear beyond the classical pattern.
pub fn covariant_derivative(conn: &SuperConnection, t: &SuperTensor) -> SuperTensor {
    assert_eq!(conn.n(), t.gens(), "connection and tensor sizes differ");
    let n = t.gens();
    SuperTensor::from_fn(n, t.has_upper(), t.lower() + 1, |delta, l| {
        let mu = l[0];
        let rest = &l[1..];
        let mut acc = t.get(delta, rest).deriv(mu);
        if t.has_upper() {
            for eps in 0..n {
                acc = &acc + &(conn.gamma(delta, mu, eps) * t.get(eps, rest));
            }
        }
        let mut modified = rest.to_vec();
        for j in 0..rest.len() {
            let orig = modified[j];
            for eps in 0..n {
                modified[j] = eps;
                acc = &acc - &(conn.gamma(eps, mu, orig) * t.get(delta, &modified));
            }
            modified[j] = orig;
        }
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::super::{levi_civita, product_metric, random_metric};
    use super::*;

    fn curvature_of(metric: &SuperMetric) -> (SuperConnection, SuperTensor) {
        let conn = levi_civita(metric).unwrap();
        let r = curvature(&conn);
        (conn, r)
    }

    #[test]
    fn standard_metric_is_flat() {
        for m in [1, 2] {
            let (_, r) = curvature_of(&SuperMetric::standard(m));
            assert!(r.is_zero());
        }
    }

    #[test]
    fn covariant_derivative_of_the_metric_vanishes() {
        for (m, seed, deg) in [(1, 0, 2), (1, 1, 2), (2, 0, 4)] {
            let g = random_metric(m, seed, deg);
            let conn = levi_civita(&g).unwrap();
            let nabla_g = covariant_derivative(&conn, &metric_tensor(&g));
            assert!(nabla_g.is_zero(), "metric is not parallel (seed {seed})");
        }
    }

    #[test]
    fn curvature_is_symmetric_even_and_satisfies_bianchi() {
        let g = random_metric(1, 2, 2);
        let h = random_metric(2, 1, 4);
        for metric in [g, h] {
            let n = metric.n();
            let (_, r) = curvature_of(&metric);
            for d in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            assert_eq!(r.get(d, &[a, b, c]), r.get(d, &[b, a, c]));
                            assert!(!r.get(d, &[a, b, c]).has_odd_part());
                            let cyclic = &(r.get(d, &[a, b, c]) + r.get(d, &[b, c, a]))
                                + r.get(d, &[c, a, b]);
                            assert!(cyclic.is_zero(), "first Bianchi fails");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn component_parity_alternates_with_derivative_order() {
        let g = random_metric(1, 4, 2);
        let (conn, r) = curvature_of(&g);
        let dr = covariant_derivative(&conn, &r);
        let ddr = covariant_derivative(&conn, &dr);
        let n = g.n();
        for d in 0..n {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assert!(!dr.get(d, &[a, a, b, c]).has_even_part());
                        assert!(!ddr.get(d, &[a, b, a, b, c]).has_odd_part());
                    }
                }
            }
        }
    }

    #[test]
    fn lowering_the_upper_index_commutes_with_the_derivative() {
        // With ∇g = 0 the metric-lowered curvature (0,4)-tensor must have
        // the same covariant derivative as the lowered derivative; this
        // pins every sign in the derivative formula, in particular the
        // upper-index term.
        for (m, seed, deg) in [(1, 5, 2), (1, 6, 2), (2, 2, 4)] {
            let metric = random_metric(m, seed, deg);
            let n = metric.n();
            let (conn, r) = curvature_of(&metric);
            let lower = |t: &SuperTensor| {
                SuperTensor::from_fn(n, false, t.lower() + 1, |_, l| {
                    let (head, last) = l.split_at(t.lower());
                    let mut acc = GrassmannElement::zero(n);
                    for eps in 0..n {
                        acc = &acc + &(t.get(eps, head) * metric.entry(eps, last[0]));
                    }
                    acc
                })
            };
            let flat_then_derive = covariant_derivative(&conn, &lower(&r));
            let derive_then_flat = lower(&covariant_derivative(&conn, &r));
            assert!(
                flat_then_derive == derive_then_flat,
                "index lowering and differentiation disagree (m={m}, seed {seed})"
            );
        }
    }

    #[test]
    fn product_metric_curvature_has_no_cross_terms() {
        let p = product_metric(&random_metric(1, 7, 2), &random_metric(1, 8, 2));
        let (_, r) = curvature_of(&p);
        let in_first = |i: usize| i < 2;
        for d in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        let same = in_first(d) == in_first(a)
                            && in_first(a) == in_first(b)
                            && in_first(b) == in_first(c);
                        if !same {
                            assert!(r.get(d, &[a, b, c]).is_zero());
                        }
                    }
                }
            }
        }
    }
}
