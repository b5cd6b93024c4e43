//! Odd Riemannian supermetrics on `2m` odd coordinates.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exactlin::{rank, Mat, Rat, Scalar};

use super::{GrassmannElement, SupergeoError};

/// An even supersymmetric metric on the odd frame `∂_1, …, ∂_{2m}`: an
/// antisymmetric `2m × 2m` matrix of even Grassmann elements whose body
/// (constant-term matrix) is an invertible skew form `ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperMetric {
    m: usize,
    /// Full `n × n` component matrix, row-major; `g[a*n+b] = -g[b*n+a]`.
    g: Vec<GrassmannElement>,
}

#[derive(Serialize, Deserialize)]
struct MetricFile {
    m: usize,
    g: Vec<MetricEntry>,
}

#[derive(Serialize, Deserialize)]
struct MetricEntry {
    a: usize,
    b: usize,
    terms: Vec<MetricTerm>,
}

#[derive(Serialize, Deserialize)]
struct MetricTerm {
    subset: Vec<usize>,
    coeff: String,
}

impl SuperMetric {
    /// Build a metric from its strictly-upper-triangular entries
    /// (`a < b`, 0-based); missing pairs are zero.  Validates evenness of
    /// every component and invertibility of the body.
    pub fn new(
        m: usize,
        upper: Vec<((usize, usize), GrassmannElement)>,
    ) -> Result<Self, SupergeoError> {
        if m == 0 {
            return Err(SupergeoError::Precondition(
                "a metric needs at least one pair of odd coordinates".into(),
            ));
        }
        let n = 2 * m;
        let mut g = vec![GrassmannElement::zero(n); n * n];
        let mut seen = vec![false; n * n];
        for ((a, b), e) in upper {
            if a >= b || b >= n {
                return Err(SupergeoError::Precondition(format!(
                    "entry ({a},{b}) is not strictly upper triangular in size {n}"
                )));
            }
            if seen[a * n + b] {
                return Err(SupergeoError::Precondition(format!(
                    "entry ({a},{b}) given twice"
                )));
            }
            seen[a * n + b] = true;
            if e.generators() != n {
                return Err(SupergeoError::Mismatch(format!(
                    "entry ({a},{b}) lives in Λ({}), metric needs Λ({n})",
                    e.generators()
                )));
            }
            if e.has_odd_part() {
                return Err(SupergeoError::Precondition(format!(
                    "entry ({a},{b}) has odd-degree terms; the metric is even"
                )));
            }
            g[b * n + a] = -&e;
            g[a * n + b] = e;
        }
        let metric = SuperMetric { m, g };
        if rank(&metric.body_matrix()) != n {
            return Err(SupergeoError::Precondition(
                "metric body is degenerate".into(),
            ));
        }
        Ok(metric)
    }

    /// The constant metric whose matrix is the standard symplectic form
    /// `ω(e_i, e_{m+i}) = 1`; its Levi-Civita connection vanishes.
    pub fn standard(m: usize) -> Self {
        let n = 2 * m;
        let upper = (0..m)
            .map(|i| ((i, m + i), GrassmannElement::one(n)))
            .collect();
        Self::new(m, upper).expect("the standard form is invertible")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of odd coordinates, `2m`.
    pub fn n(&self) -> usize {
        2 * self.m
    }

    /// Component `g(∂_a, ∂_b)` (0-based).
    pub fn entry(&self, a: usize, b: usize) -> &GrassmannElement {
        &self.g[a * self.n() + b]
    }

    /// The value `ω` of the metric at the point: the matrix of bodies.
    pub fn body_matrix(&self) -> Mat {
        let n = self.n();
        Mat::from_fn(n, n, |a, b| Scalar::from_rat(self.entry(a, b).body()))
    }

    /// Parse the JSON metric format: `{"m": 1, "g": [{"a": 1, "b": 2,
    /// "terms": [{"subset": [], "coeff": "1"}, {"subset": [1, 2],
    /// "coeff": "3/2"}]}]}` with 1-based indices, entries `a < b` only.
    pub fn from_json(text: &str) -> Result<Self, SupergeoError> {
        let file: MetricFile =
            serde_json::from_str(text).map_err(|e| SupergeoError::Parse(e.to_string()))?;
        let n = 2 * file.m;
        let mut upper = Vec::new();
        for entry in file.g {
            if entry.a == 0 || entry.b == 0 {
                return Err(SupergeoError::Parse(
                    "metric indices are 1-based; got 0".into(),
                ));
            }
            let mut e = GrassmannElement::zero(n);
            for term in entry.terms {
                let coeff = Rat::from_str(&term.coeff).map_err(|_| {
                    SupergeoError::Parse(format!("bad rational coefficient {:?}", term.coeff))
                })?;
                for &i in &term.subset {
                    if i == 0 {
                        return Err(SupergeoError::Parse(
                            "subset indices are 1-based; got 0".into(),
                        ));
                    }
                }
                let subset: Vec<usize> = term.subset.iter().map(|&i| i - 1).collect();
                e = &e + &GrassmannElement::monomial(n, &subset, coeff)?;
            }
            upper.push(((entry.a - 1, entry.b - 1), e));
        }
        Self::new(file.m, upper)
    }

    /// Serialize to the JSON metric format (1-based indices, `a < b`
    /// entries with at least one term, deterministic order).
    pub fn to_json(&self) -> String {
        let n = self.n();
        let mut entries = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                let e = self.entry(a, b);
                if e.is_zero() {
                    continue;
                }
                let terms = e
                    .terms()
                    .map(|(idx, c)| MetricTerm {
                        subset: idx.iter().map(|i| i + 1).collect(),
                        coeff: c.to_string(),
                    })
                    .collect();
                entries.push(MetricEntry { a: a + 1, b: b + 1, terms });
            }
        }
        let file = MetricFile { m: self.m, g: entries };
        serde_json::to_string_pretty(&file).expect("metric serialization cannot fail")
    }
}

/// Reproducible pseudorandom metric: an invertible integer skew body plus
/// even-degree terms up to `max_degree` with small rational coefficients.
/// The same `(m, seed, max_degree)` always yields the same metric.
pub fn random_metric(m: usize, seed: u64, max_degree: usize) -> SuperMetric {
    assert!(m >= 1, "need at least one pair of odd coordinates");
    let n = 2 * m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let body = loop {
        let mut b = Mat::zero(n, n);
        for a in 0..n {
            for c in (a + 1)..n {
                let v = rng.gen_range(-3i64..=3);
                b.set(a, c, Scalar::from_int(v));
                b.set(c, a, Scalar::from_int(-v));
            }
        }
        if rank(&b) == n {
            break b;
        }
    };
    let mut upper = Vec::new();
    for a in 0..n {
        for c in (a + 1)..n {
            let mut e = GrassmannElement::constant(n, body.get(a, c).re().clone());
            let bound = max_degree.min(n);
            for deg in (2..=bound).step_by(2) {
                for mask in 0u64..(1 << n) {
                    if mask.count_ones() as usize != deg {
                        continue;
                    }
                    if !rng.gen_bool(0.5) {
                        continue;
                    }
                    let num = rng.gen_range(-3i64..=3);
                    let den = rng.gen_range(1i64..=2);
                    if num == 0 {
                        continue;
                    }
                    let idx: Vec<usize> =
                        (0..n).filter(|i| mask & (1 << i) != 0).collect();
                    let c = Rat::new(num.into(), den.into());
                    e = &e + &GrassmannElement::monomial(n, &idx, c).unwrap();
                }
            }
            upper.push(((a, c), e));
        }
    }
    SuperMetric::new(m, upper).expect("body was checked invertible")
}

/// The product metric: `a` on the first `2·a.m()` odd coordinates, `b` on
/// the rest, no cross terms.
pub fn product_metric(a: &SuperMetric, b: &SuperMetric) -> SuperMetric {
    let (na, nb) = (a.n(), b.n());
    let n = na + nb;
    let mut upper = Vec::new();
    for i in 0..na {
        for j in (i + 1)..na {
            let e = a.entry(i, j);
            if !e.is_zero() {
                upper.push(((i, j), e.embed(n, 0).expect("first factor fits")));
            }
        }
    }
    for i in 0..nb {
        for j in (i + 1)..nb {
            let e = b.entry(i, j);
            if !e.is_zero() {
                upper.push(((na + i, na + j), e.embed(n, na).expect("second factor fits")));
            }
        }
    }
    SuperMetric::new(a.m() + b.m(), upper).expect("block-diagonal body is invertible")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    const EXAMPLE: &str = r#"{
        "m": 1,
        "g": [{"a": 1, "b": 2, "terms": [
            {"subset": [], "coeff": "1"},
            {"subset": [1, 2], "coeff": "3/2"}
        ]}]
    }"#;

    #[test]
    fn json_round_trip_preserves_entries() {
        let g = SuperMetric::from_json(EXAMPLE).unwrap();
        let expected = &GrassmannElement::one(2)
            + &GrassmannElement::monomial(2, &[0, 1], Rat::new(3.into(), 2.into())).unwrap();
        assert_eq!(g.entry(0, 1), &expected);
        assert_eq!(g.entry(1, 0), &-&expected);
        assert!(g.entry(0, 0).is_zero());
        let again = SuperMetric::from_json(&g.to_json()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn body_matrix_reads_constant_terms() {
        let g = SuperMetric::from_json(EXAMPLE).unwrap();
        let body = g.body_matrix();
        assert_eq!(body.get(0, 1), Scalar::from_int(1));
        assert_eq!(body.get(1, 0), Scalar::from_int(-1));
    }

    #[test]
    fn degenerate_body_is_rejected() {
        let e = GrassmannElement::monomial(2, &[0, 1], rat(1)).unwrap();
        let err = SuperMetric::new(1, vec![((0, 1), e)]).unwrap_err();
        assert!(matches!(err, SupergeoError::Precondition(_)));
    }

    #[test]
    fn odd_degree_terms_are_rejected() {
        let e = &GrassmannElement::one(2) + &GrassmannElement::generator(2, 0);
        let err = SuperMetric::new(1, vec![((0, 1), e)]).unwrap_err();
        assert!(matches!(err, SupergeoError::Precondition(_)));
    }

    #[test]
    fn misplaced_entries_are_rejected() {
        let one = GrassmannElement::one(2);
        assert!(SuperMetric::new(1, vec![((1, 0), one.clone())]).is_err());
        assert!(SuperMetric::new(1, vec![((0, 0), one.clone())]).is_err());
        assert!(
            SuperMetric::new(1, vec![((0, 1), one.clone()), ((0, 1), one)]).is_err()
        );
    }

    #[test]
    fn random_metric_is_reproducible_and_invertible() {
        for seed in 0..6 {
            let a = random_metric(1, seed, 2);
            let b = random_metric(1, seed, 2);
            assert_eq!(a.to_json(), b.to_json());
            assert_eq!(rank(&a.body_matrix()), 2);
        }
        let a = random_metric(2, 7, 4);
        let b = random_metric(2, 7, 4);
        assert_eq!(a.to_json(), b.to_json());
        assert_ne!(
            random_metric(1, 0, 2).to_json(),
            random_metric(1, 1, 2).to_json()
        );
    }

    #[test]
    fn product_metric_is_block_diagonal() {
        let a = random_metric(1, 3, 2);
        let b = random_metric(1, 4, 2);
        let p = product_metric(&a, &b);
        assert_eq!(p.m(), 2);
        for i in 0..2 {
            for j in 2..4 {
                assert!(p.entry(i, j).is_zero());
            }
        }
        assert_eq!(p.entry(0, 1).body(), a.entry(0, 1).body());
        assert_eq!(p.entry(2, 3).body(), b.entry(0, 1).body());
    }

    #[test]
    fn standard_metric_matches_the_symplectic_form() {
        let g = SuperMetric::standard(2);
        let body = g.body_matrix();
        for i in 0..2 {
            assert_eq!(body.get(i, 2 + i), Scalar::from_int(1));
            assert_eq!(body.get(2 + i, i), Scalar::from_int(-1));
        }
    }
}
