//! Homomorphic rank precheck modulo a word-sized prime.
//!
//! Scalars map into GF(p²) = GF(p)[x]/(x²+1) for p = 2⁶¹−1 (which is
//! ≡ 3 mod 4, so x²+1 is irreducible and i has a faithful image). The rank
//! over GF(p²) is a fast lower bound for the exact rank; the exact
//! elimination always recomputes the real answer, and the mod-p profile is
//! used as a cross-check. Scalars whose denominators vanish mod p make the
//! precheck unavailable (`None`), never wrong.

use num::bigint::Sign;
use num::{BigInt, Zero};

use super::{Mat, Scalar};

pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

fn add_p(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn sub_p(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn mul_p(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_p(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_p(acc, b, p);
        }
        b = mul_p(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_p(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        None
    } else {
        Some(pow_p(a, p - 2, p))
    }
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let m = (x.magnitude() % p).to_u64_digits();
    let r = m.first().copied().unwrap_or(0);
    if x.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

fn rat_mod(numer: &BigInt, denom: &BigInt, p: u64) -> Option<u64> {
    let d = inv_p(bigint_mod(denom, p), p)?;
    Some(mul_p(bigint_mod(numer, p), d, p))
}

/// An element a + b·x of GF(p²).
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Fp2 {
    pub a: u64,
    pub b: u64,
}

impl Fp2 {
    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    fn mul(self, o: Fp2, p: u64) -> Fp2 {
        Fp2 {
            a: sub_p(mul_p(self.a, o.a, p), mul_p(self.b, o.b, p), p),
            b: add_p(mul_p(self.a, o.b, p), mul_p(self.b, o.a, p), p),
        }
    }

    fn sub(self, o: Fp2, p: u64) -> Fp2 {
        Fp2 { a: sub_p(self.a, o.a, p), b: sub_p(self.b, o.b, p) }
    }

    fn inv(self, p: u64) -> Option<Fp2> {
        let n = add_p(mul_p(self.a, self.a, p), mul_p(self.b, self.b, p), p);
        let ninv = inv_p(n, p)?;
        Some(Fp2 { a: mul_p(self.a, ninv, p), b: mul_p(sub_p(0, self.b, p), ninv, p) })
    }
}

/// Reduce a scalar mod p; `None` if a denominator is divisible by p.
pub fn scalar_mod(s: &Scalar, p: u64) -> Option<Fp2> {
    if s.is_zero() {
        return Some(Fp2 { a: 0, b: 0 });
    }
    let re = s.re();
    let im = s.im();
    let a = if re.is_zero() { 0 } else { rat_mod(re.numer(), re.denom(), p)? };
    let b = if im.is_zero() { 0 } else { rat_mod(im.numer(), im.denom(), p)? };
    Some(Fp2 { a, b })
}

/// Left-to-right rank profile over GF(p²).
///
/// Returns `(rank, pivot_columns)`, or `None` if some entry cannot be
/// reduced mod p. `rank` is always ≤ the exact rank, with equality except
/// for unlucky primes.
pub fn rank_profile_mod(m: &Mat, p: u64) -> Option<(usize, Vec<usize>)> {
    let ncols = m.cols();
    let mut rows: Vec<Vec<(u32, Fp2)>> = Vec::new();
    for r in 0..m.rows() {
        let mut row = Vec::new();
        for (c, v) in m.row_iter(r) {
            let f = scalar_mod(v, p)?;
            if !f.is_zero() {
                row.push((c as u32, f));
            }
        }
        if !row.is_empty() {
            rows.push(row);
        }
    }

    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    for (idx, row) in rows.iter().enumerate() {
        buckets[row[0].0 as usize].push(idx);
    }
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let mut bucket = std::mem::take(&mut buckets[c]);
        if bucket.is_empty() {
            continue;
        }
        let pivot_pos = bucket
            .iter()
            .enumerate()
            .min_by_key(|(_, &idx)| rows[idx].len())
            .map(|(pos, _)| pos)
            .unwrap();
        let pivot_idx = bucket.swap_remove(pivot_pos);
        let pivot_row = std::mem::take(&mut rows[pivot_idx]);
        let lead_inv = pivot_row[0].1.inv(p).unwrap();
        for idx in bucket {
            let row = std::mem::take(&mut rows[idx]);
            let factor = row[0].1.mul(lead_inv, p);
            let mut out: Vec<(u32, Fp2)> = Vec::with_capacity(row.len() + pivot_row.len());
            let (mut i, mut j) = (1, 1);
            while i < row.len() || j < pivot_row.len() {
                let cl = row.get(i).map(|e| e.0).unwrap_or(u32::MAX);
                let cr = pivot_row.get(j).map(|e| e.0).unwrap_or(u32::MAX);
                if cl < cr {
                    out.push(row[i]);
                    i += 1;
                } else if cr < cl {
                    out.push((cr, Fp2 { a: 0, b: 0 }.sub(factor.mul(pivot_row[j].1, p), p)));
                    j += 1;
                } else {
                    let v = row[i].1.sub(factor.mul(pivot_row[j].1, p), p);
                    if !v.is_zero() {
                        out.push((cl, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            if !out.is_empty() {
                buckets[out[0].0 as usize].push(idx);
                rows[idx] = out;
            }
        }
        pivots.push(c);
    }
    Some((pivots.len(), pivots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Mat;

    #[test]
    fn small_prime_field_arithmetic() {
        let p = 251; // ≡ 3 mod 4
        let x = Fp2 { a: 7, b: 13 };
        let y = x.inv(p).unwrap();
        let one = x.mul(y, p);
        assert_eq!((one.a, one.b), (1, 0));
    }

    #[test]
    fn rank_profile_matches_obvious_rank() {
        let m = Mat::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let (rank, pivots) = rank_profile_mod(&m, DEFAULT_PRIME).unwrap();
        assert_eq!(rank, 2);
        assert_eq!(pivots, vec![0, 1]);
    }

    #[test]
    fn unlucky_prime_underestimates_rank() {
        // Over GF(5) this matrix drops rank; the profile must still return
        // a (smaller) answer rather than an error.
        let m = Mat::from_int_rows(&[&[1, 2], &[2, 4 + 5]]);
        let (rank5, _) = rank_profile_mod(&m, 7).unwrap();
        assert_eq!(rank5, 2);
        let (rank_unlucky, _) = rank_profile_mod(&m, 5).unwrap();
        assert_eq!(rank_unlucky, 1);
    }
}
