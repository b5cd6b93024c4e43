//! Irreducibility, commutants, envelopes, and intertwiners.
//!
//! Verdicts are *field-correct*: for Gaussian representations
//! "irreducible" means irreducible over the complex numbers (decided by
//! the enveloping-algebra dimension, which is stable under base change),
//! and for rational ones it means irreducible over the reals (decided by
//! the envelope when it is full, and otherwise by the signature of the
//! trace form on the commutant, which detects whether the commutant is a
//! division algebra). The reducible direction is always certified when a
//! rational witness subspace can be found; the witness is optional because
//! a reducible module need not contain a rational invariant subspace.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactlin::{invert, kernel, symmetric_signature, InsertOutcome, Mat, RowBasis, Scalar};

use super::rep::MatrixRep;
use super::LiealgError;

/// Basis of the commutant `{X : [A_i, X] = 0 for all i}` over the
/// representation's own field (canonical kernel order).
pub fn commutant(rep: &MatrixRep) -> Result<Vec<Mat>, LiealgError> {
    let n = rep.dim_v();
    let d = rep.dim_g();
    let mut sys = Mat::zero(d * n * n, n * n);
    for (idx, a) in rep.basis().iter().enumerate() {
        let base = idx * n * n;
        // (A X - X A)_{rc} = Σ_k A_{rk} X_{kc} - X_{rk} A_{kc}
        for r in 0..n {
            for c in 0..n {
                let row = base + r * n + c;
                for k in 0..n {
                    if let Some(v) = a.entry(r, k) {
                        sys.add_to(row, k * n + c, v);
                    }
                    if let Some(v) = a.entry(k, c) {
                        sys.add_to(row, r * n + k, &-v);
                    }
                }
            }
        }
    }
    Ok(kernel(&sys)
        .basis
        .iter()
        .map(|v| Mat::from_dense_vec(n, n, v))
        .collect())
}

/// Dimension (over the representation's field) of the unital associative
/// algebra generated by the basis matrices, computed by a worklist span
/// closure starting from the identity.
pub fn envelope_dim(rep: &MatrixRep) -> Result<usize, LiealgError> {
    let n = rep.dim_v();
    let mut span = RowBasis::new(n * n);
    let mut queue: Vec<Mat> = Vec::new();
    let id = Mat::identity(n);
    span.insert(&id.to_dense_vec())?;
    queue.push(id);
    while let Some(m) = queue.pop() {
        for a in rep.basis() {
            let p = a.mul(&m);
            if let InsertOutcome::Extended = span.insert(&p.to_dense_vec())? {
                queue.push(p);
            }
        }
    }
    Ok(span.dim())
}

/// Orbit span of a vector under repeated application of the basis
/// matrices (the smallest invariant subspace containing it).
fn spin_up(rep: &MatrixRep, seed: &[Scalar]) -> Result<RowBasis, LiealgError> {
    let mut span = RowBasis::new(rep.dim_v());
    let mut queue: Vec<Vec<Scalar>> = Vec::new();
    if let InsertOutcome::Extended = span.insert(seed)? {
        queue.push(seed.to_vec());
    }
    while let Some(v) = queue.pop() {
        for a in rep.basis() {
            let w = a.mul_vec(&v);
            if let InsertOutcome::Extended = span.insert(&w)? {
                queue.push(w);
            }
        }
    }
    Ok(span)
}

/// Outcome of the irreducibility decision.
#[derive(Debug)]
pub struct Irreducibility {
    pub irreducible: bool,
    /// Basis of a proper nonzero invariant subspace when one with entries
    /// in the representation's field was found.
    pub witness: Option<Vec<Vec<Scalar>>>,
    /// Envelope dimension, when the decision needed it.
    pub envelope_dim: Option<usize>,
    /// Commutant dimension, when the decision needed it.
    pub commutant_dim: Option<usize>,
}

/// Decides irreducibility over the representation's base field (complex
/// for Gaussian entries, real otherwise). Assumes the module is
/// semisimple when it falls through to the commutant trace-form test,
/// which is the case for all the reductive families this crate builds.
pub fn is_irreducible(rep: &MatrixRep) -> Result<Irreducibility, LiealgError> {
    let n = rep.dim_v();
    if n == 0 {
        return Err(LiealgError::UnsupportedConstruction(
            "irreducibility of a zero module".into(),
        ));
    }

    // Cheap sufficient test for reducibility: the orbit of a standard
    // basis vector is a proper subspace.
    for i in 0..n {
        let mut seed = vec![Scalar::zero(); n];
        seed[i] = Scalar::one();
        let orbit = spin_up(rep, &seed)?;
        if orbit.dim() < n {
            return Ok(Irreducibility {
                irreducible: false,
                witness: Some(orbit.dense_rows()),
                envelope_dim: None,
                commutant_dim: None,
            });
        }
    }

    let env = envelope_dim(rep)?;
    if env == n * n {
        return Ok(Irreducibility {
            irreducible: true,
            witness: None,
            envelope_dim: Some(env),
            commutant_dim: None,
        });
    }

    if !rep.field().is_real() {
        // Complex module with a small envelope: reducible over C. Try to
        // exhibit a rational witness through the commutant.
        let comm = commutant(rep)?;
        let witness = witness_from_commutant(rep, &comm)?;
        return Ok(Irreducibility {
            irreducible: false,
            witness,
            envelope_dim: Some(env),
            commutant_dim: Some(comm.len()),
        });
    }

    // Real module, envelope not full: irreducible exactly when the
    // commutant is a division algebra (C or H), which the trace form
    // detects by its signature (1, d-1).
    let comm = commutant(rep)?;
    let d = comm.len();
    let mut tr = Mat::zero(d, d);
    for i in 0..d {
        for j in i..d {
            let t = comm[i].mul(&comm[j]).trace();
            tr.set(i, j, t.clone());
            if i != j {
                tr.set(j, i, t);
            }
        }
    }
    let (pos, neg, zero) = symmetric_signature(&tr);
    let division = zero == 0 && pos == 1 && neg == d - 1 && (d == 2 || d == 4);
    if division {
        Ok(Irreducibility {
            irreducible: true,
            witness: None,
            envelope_dim: Some(env),
            commutant_dim: Some(d),
        })
    } else {
        let witness = witness_from_commutant(rep, &comm)?;
        Ok(Irreducibility {
            irreducible: false,
            witness,
            envelope_dim: Some(env),
            commutant_dim: Some(d),
        })
    }
}

/// Best-effort extraction of an invariant subspace from the commutant:
/// the kernel of any singular non-scalar commuting matrix is invariant,
/// and shifted candidates `X - X_{00}·I`, `X - tr(X)/n·I` catch
/// projector-like elements with small spectrum.
fn witness_from_commutant(
    rep: &MatrixRep,
    comm: &[Mat],
) -> Result<Option<Vec<Vec<Scalar>>>, LiealgError> {
    let n = rep.dim_v();
    for x in comm {
        let mut candidates = vec![x.clone()];
        let mut shifted = x.clone();
        let x00 = x.get(0, 0);
        for dd in 0..n {
            shifted.add_to(dd, dd, &-&x00);
        }
        candidates.push(shifted);
        let tr_over_n = &x.trace() * &Scalar::from_frac(1, n as i64);
        let mut shifted2 = x.clone();
        for dd in 0..n {
            shifted2.add_to(dd, dd, &-&tr_over_n);
        }
        candidates.push(shifted2);
        for cand in candidates {
            let ker = kernel(&cand).basis;
            if !ker.is_empty() && ker.len() < n {
                // Kernel of a commuting matrix is invariant; double-check
                // and hand it out.
                let rb = {
                    let mut rb = RowBasis::new(n);
                    for v in &ker {
                        rb.insert(v)?;
                    }
                    rb
                };
                let invariant = rep.basis().iter().all(|a| {
                    ker.iter()
                        .all(|v| rb.contains(&a.mul_vec(v)).map(|o| o.is_some()).unwrap_or(false))
                });
                if invariant {
                    return Ok(Some(ker));
                }
            }
        }
    }
    Ok(None)
}

/// Basis of the intertwiner space `{T : T A_i = B_i T}` between two
/// representations of the same algebra (matching basis order).
pub fn intertwiners(a: &MatrixRep, b: &MatrixRep) -> Result<Vec<Mat>, LiealgError> {
    if a.dim_g() != b.dim_g() {
        return Err(LiealgError::UnsupportedConstruction(format!(
            "intertwiners need equal algebra dimensions, got {} and {}",
            a.dim_g(),
            b.dim_g()
        )));
    }
    let (na, nb) = (a.dim_v(), b.dim_v());
    let mut sys = Mat::zero(a.dim_g() * nb * na, nb * na);
    for (idx, (am, bm)) in a.basis().iter().zip(b.basis()).enumerate() {
        let base = idx * nb * na;
        // (T A - B T)_{rc} = Σ_k T_{rk} A_{kc} - B_{rk} T_{kc}
        for r in 0..nb {
            for c in 0..na {
                let row = base + r * na + c;
                for k in 0..na {
                    if let Some(v) = am.entry(k, c) {
                        sys.add_to(row, r * na + k, v);
                    }
                }
                for k in 0..nb {
                    if let Some(v) = bm.entry(r, k) {
                        sys.add_to(row, k * na + c, &-v);
                    }
                }
            }
        }
    }
    Ok(kernel(&sys)
        .basis
        .iter()
        .map(|v| Mat::from_dense_vec(nb, na, v))
        .collect())
}

/// Whether two modules of the same algebra are isomorphic, decided by
/// searching the intertwiner space for an invertible element (basis
/// elements, their running sums, then seeded small random combinations).
/// Exact for the modules this crate compares (with an irreducible side any
/// nonzero intertwiner between equal dimensions is already invertible).
pub fn are_equivalent(a: &MatrixRep, b: &MatrixRep) -> Result<bool, LiealgError> {
    if a.dim_v() != b.dim_v() {
        return Ok(false);
    }
    let hom = intertwiners(a, b)?;
    if hom.is_empty() {
        return Ok(false);
    }
    for t in &hom {
        if invert(t).is_some() {
            return Ok(true);
        }
    }
    let mut running = Mat::zero(b.dim_v(), a.dim_v());
    for t in &hom {
        running = running.add(t);
        if invert(&running).is_some() {
            return Ok(true);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..16 {
        let mut combo = Mat::zero(b.dim_v(), a.dim_v());
        for t in &hom {
            let c = Scalar::from_int(rng.gen_range(-4i64..=4));
            combo = combo.add(&t.scale(&c));
        }
        if invert(&combo).is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::derived::{direct_sum_same_algebra, dual, sym_power2};
    use crate::liealg::families::{sl, so_pq, so_star, sp, spin7, su_pq, u_pq};
    use crate::liealg::rep::Field;

    #[test]
    fn standard_modules_are_irreducible() {
        for rep in [
            sl(2, Field::Rational).unwrap(),
            sl(3, Field::Gaussian).unwrap(),
            sp(4, Field::Rational).unwrap(),
            so_pq(3, 0).unwrap(),
            spin7().unwrap(),
        ] {
            let out = is_irreducible(&rep).unwrap();
            assert!(out.irreducible, "{} should be irreducible", rep.name());
        }
    }

    #[test]
    fn direct_sums_are_reducible_with_witness() {
        let rep = sl(2, Field::Rational).unwrap();
        let sum = direct_sum_same_algebra(&rep, &rep).unwrap();
        let out = is_irreducible(&sum).unwrap();
        assert!(!out.irreducible);
        let w = out.witness.expect("block sums have rational witnesses");
        assert!(!w.is_empty() && w.len() < 4);
    }

    #[test]
    fn unitary_standard_module_is_real_irreducible_with_complex_commutant() {
        let rep = u_pq(2, 0).unwrap();
        let out = is_irreducible(&rep).unwrap();
        assert!(out.irreducible);
        assert_eq!(out.commutant_dim, Some(2));
    }

    #[test]
    fn su2_on_r4_has_quaternionic_commutant() {
        let rep = su_pq(2, 0).unwrap();
        let out = is_irreducible(&rep).unwrap();
        assert!(out.irreducible);
        assert_eq!(out.commutant_dim, Some(4));
    }

    #[test]
    fn so_star_two_standard_module_is_irreducible() {
        let rep = so_star(2).unwrap();
        let out = is_irreducible(&rep).unwrap();
        assert!(out.irreducible);
    }

    #[test]
    fn sym2_contains_no_surprise_for_sl2_but_so3_tensor_does() {
        // S²(C²) for sl(2) is irreducible.
        let rep = sl(2, Field::Gaussian).unwrap();
        let s = sym_power2(&rep);
        assert!(is_irreducible(&s).unwrap().irreducible);
        // S²(R³) for so(3) splits off the invariant metric: reducible.
        let so3 = so_pq(3, 0).unwrap();
        let s2 = sym_power2(&so3);
        let out = is_irreducible(&s2).unwrap();
        assert!(!out.irreducible);
    }

    #[test]
    fn standard_and_dual_of_sl2_are_equivalent_but_sl3_not() {
        let a2 = sl(2, Field::Rational).unwrap();
        assert!(are_equivalent(&a2, &dual(&a2)).unwrap());
        let a3 = sl(3, Field::Rational).unwrap();
        assert!(!are_equivalent(&a3, &dual(&a3)).unwrap());
    }

    #[test]
    fn envelope_of_standard_sl2_is_full() {
        let rep = sl(2, Field::Rational).unwrap();
        assert_eq!(envelope_dim(&rep).unwrap(), 4);
    }
}
