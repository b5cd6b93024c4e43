//! Exact arithmetic in the Grassmann algebra on finitely many odd
//! generators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Zero};

use crate::exactlin::Rat;

use super::SupergeoError;

/// An element of the Grassmann algebra `Λ(k)` on `k` odd generators
/// `ξ_0, …, ξ_{k-1}` with rational coefficients.
///
/// Terms are stored as a map from index subsets (bitmasks, so canonically
/// sorted) to nonzero coefficients; equality is therefore exact structural
/// equality.  The graded product follows `ξ_i ξ_j = -ξ_j ξ_i`, and the
/// derivation `∂_α` acts from the left, picking up one sign per generator
/// it passes.
#[derive(Clone, PartialEq, Eq)]
pub struct GrassmannElement {
    gens: usize,
    terms: BTreeMap<u64, Rat>,
}

/// Parity of the permutation merging two disjoint sorted subsets: counts
/// pairs `(i ∈ s1, j ∈ s2)` with `j < i`.
fn merge_sign(s1: u64, s2: u64) -> bool {
    let mut odd = false;
    let mut rest = s1;
    while rest != 0 {
        let i = rest.trailing_zeros();
        if (s2 & ((1u64 << i) - 1)).count_ones() % 2 == 1 {
            odd = !odd;
        }
        rest &= rest - 1;
    }
    odd
}

impl GrassmannElement {
    /// The zero element of `Λ(gens)`.
    pub fn zero(gens: usize) -> Self {
        assert!(gens <= 63, "too many odd generators");
        GrassmannElement { gens, terms: BTreeMap::new() }
    }

    /// The constant `1`.
    pub fn one(gens: usize) -> Self {
        Self::constant(gens, Rat::one())
    }

    /// The constant `c`.
    pub fn constant(gens: usize, c: Rat) -> Self {
        let mut e = Self::zero(gens);
        e.insert_term(0, c);
        e
    }

    /// The generator `ξ_i` (0-based).
    pub fn generator(gens: usize, i: usize) -> Self {
        assert!(i < gens, "generator index out of range");
        let mut e = Self::zero(gens);
        e.insert_term(1u64 << i, Rat::one());
        e
    }

    /// `c · ξ_{i_1} ⋯ ξ_{i_r}` for a strictly increasing index list.
    pub fn monomial(gens: usize, indices: &[usize], c: Rat) -> Result<Self, SupergeoError> {
        let mut mask = 0u64;
        let mut prev: Option<usize> = None;
        for &i in indices {
            if i >= gens {
                return Err(SupergeoError::Precondition(format!(
                    "generator index {i} out of range for {gens} generators"
                )));
            }
            if prev.is_some_and(|p| p >= i) {
                return Err(SupergeoError::Precondition(
                    "monomial indices must be strictly increasing".into(),
                ));
            }
            prev = Some(i);
            mask |= 1u64 << i;
        }
        let mut e = Self::zero(gens);
        e.insert_term(mask, c);
        Ok(e)
    }

    /// Number of odd generators of the ambient algebra.
    pub fn generators(&self) -> usize {
        self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant term (the value of the function at the underlying
    /// point).
    pub fn body(&self) -> Rat {
        self.terms.get(&0).cloned().unwrap_or_else(Rat::zero)
    }

    /// Whether any stored term has even degree.
    pub fn has_even_part(&self) -> bool {
        self.terms.keys().any(|m| m.count_ones() % 2 == 0)
    }

    /// Whether any stored term has odd degree.
    pub fn has_odd_part(&self) -> bool {
        self.terms.keys().any(|m| m.count_ones() % 2 == 1)
    }

    /// `Some(0)` / `Some(1)` for homogeneous elements (zero counts as
    /// even), `None` for mixed parity.
    pub fn parity(&self) -> Option<u8> {
        match (self.has_even_part(), self.has_odd_part()) {
            (_, false) => Some(0),
            (false, true) => Some(1),
            (true, true) => None,
        }
    }

    /// Terms as `(sorted 0-based indices, coefficient)`, ordered by subset
    /// bitmask.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Rat)> + '_ {
        self.terms.iter().map(|(mask, c)| {
            let mut idx = Vec::with_capacity(mask.count_ones() as usize);
            let mut rest = *mask;
            while rest != 0 {
                idx.push(rest.trailing_zeros() as usize);
                rest &= rest - 1;
            }
            (idx, c)
        })
    }

    /// Checked sum; errors when the generator counts differ.
    pub fn try_add(&self, other: &Self) -> Result<Self, SupergeoError> {
        self.check_gens(other)?;
        Ok(self + other)
    }

    /// Checked difference; errors when the generator counts differ.
    pub fn try_sub(&self, other: &Self) -> Result<Self, SupergeoError> {
        self.check_gens(other)?;
        Ok(self - other)
    }

    /// Checked graded product; errors when the generator counts differ.
    pub fn try_mul(&self, other: &Self) -> Result<Self, SupergeoError> {
        self.check_gens(other)?;
        Ok(self * other)
    }

    fn check_gens(&self, other: &Self) -> Result<(), SupergeoError> {
        if self.gens != other.gens {
            return Err(SupergeoError::Mismatch(format!(
                "elements live in Λ({}) and Λ({})",
                self.gens, other.gens
            )));
        }
        Ok(())
    }

    /// Rescale by a rational constant.
    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.gens);
        }
        let mut out = Self::zero(self.gens);
        for (mask, v) in &self.terms {
            out.terms.insert(*mask, v * c);
        }
        out
    }

    /// The odd left derivation `∂_α`: kills terms without `ξ_α`, removes
    /// `ξ_α` from the rest with sign `(-1)^{#\{j ∈ S : j < α\}}`.
    pub fn deriv(&self, alpha: usize) -> Self {
        assert!(alpha < self.gens, "derivation index out of range");
        let bit = 1u64 << alpha;
        let mut out = Self::zero(self.gens);
        for (mask, c) in &self.terms {
            if mask & bit == 0 {
                continue;
            }
            let passed = (mask & (bit - 1)).count_ones();
            let coeff = if passed % 2 == 1 { -c } else { c.clone() };
            out.insert_term(mask & !bit, coeff);
        }
        out
    }

    /// Reinterpret in `Λ(new_gens)` with every generator index shifted up
    /// by `offset` (used to place factors side by side in a product).
    pub fn embed(&self, new_gens: usize, offset: usize) -> Result<Self, SupergeoError> {
        if self.gens + offset > new_gens {
            return Err(SupergeoError::Precondition(format!(
                "cannot shift Λ({}) by {offset} into Λ({new_gens})",
                self.gens
            )));
        }
        let mut out = Self::zero(new_gens);
        for (mask, c) in &self.terms {
            out.terms.insert(mask << offset, c.clone());
        }
        Ok(out)
    }

    fn insert_term(&mut self, mask: u64, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }
}

impl Add for &GrassmannElement {
    type Output = GrassmannElement;

    fn add(self, other: &GrassmannElement) -> GrassmannElement {
        assert_eq!(self.gens, other.gens, "generator count mismatch");
        let mut out = self.clone();
        for (mask, c) in &other.terms {
            out.insert_term(*mask, c.clone());
        }
        out
    }
}

impl Sub for &GrassmannElement {
    type Output = GrassmannElement;

    fn sub(self, other: &GrassmannElement) -> GrassmannElement {
        assert_eq!(self.gens, other.gens, "generator count mismatch");
        let mut out = self.clone();
        for (mask, c) in &other.terms {
            out.insert_term(*mask, -c);
        }
        out
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;

    fn neg(self) -> GrassmannElement {
        let mut out = GrassmannElement::zero(self.gens);
        for (mask, c) in &self.terms {
            out.terms.insert(*mask, -c);
        }
        out
    }
}

impl Mul for &GrassmannElement {
    type Output = GrassmannElement;

    fn mul(self, other: &GrassmannElement) -> GrassmannElement {
        assert_eq!(self.gens, other.gens, "generator count mismatch");
        let mut out = GrassmannElement::zero(self.gens);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if m1 & m2 != 0 {
                    continue;
                }
                let prod = c1 * c2;
                out.insert_term(m1 | m2, if merge_sign(*m1, *m2) { -prod } else { prod });
            }
        }
        out
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (idx, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if idx.is_empty() {
                write!(f, "{c}")?;
            } else {
                if !c.is_one() {
                    write!(f, "{c}·")?;
                }
                for i in idx {
                    write!(f, "ξ{}", i + 1)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigInt;
    use proptest::prelude::*;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(BigInt::from(n))
    }

    fn xi(gens: usize, i: usize) -> GrassmannElement {
        GrassmannElement::generator(gens, i)
    }

    #[test]
    fn generators_anticommute_and_square_to_zero() {
        let a = xi(2, 0);
        let b = xi(2, 1);
        assert_eq!(&a * &b, -&(&b * &a));
        assert!((&a * &a).is_zero());
        assert!((&b * &b).is_zero());
    }

    #[test]
    fn derivation_removes_a_generator_with_sign() {
        let prod = &xi(2, 0) * &xi(2, 1);
        assert_eq!(prod.deriv(0), xi(2, 1));
        assert_eq!(prod.deriv(1), -&xi(2, 0));
        assert!(xi(2, 0).deriv(1).is_zero());
    }

    #[test]
    fn body_reads_the_constant_term() {
        let f = &GrassmannElement::constant(2, rat(3))
            + &(&xi(2, 0) * &xi(2, 1)).scale(&rat(5));
        assert_eq!(f.body(), rat(3));
        assert_eq!(xi(2, 0).body(), rat(0));
    }

    #[test]
    fn parity_classification() {
        let even = &GrassmannElement::one(3) + &(&xi(3, 0) * &xi(3, 1));
        let odd = &xi(3, 0) + &xi(3, 2);
        let mixed = &even + &odd;
        assert_eq!(even.parity(), Some(0));
        assert_eq!(odd.parity(), Some(1));
        assert_eq!(mixed.parity(), None);
        assert_eq!(GrassmannElement::zero(3).parity(), Some(0));
    }

    #[test]
    fn mismatched_generator_counts_error() {
        let a = xi(2, 0);
        let b = xi(3, 0);
        assert!(matches!(a.try_mul(&b), Err(SupergeoError::Mismatch(_))));
        assert!(matches!(a.try_add(&b), Err(SupergeoError::Mismatch(_))));
        assert!(matches!(a.try_sub(&b), Err(SupergeoError::Mismatch(_))));
    }

    #[test]
    fn monomial_validates_indices() {
        assert!(GrassmannElement::monomial(4, &[0, 2], rat(1)).is_ok());
        assert!(GrassmannElement::monomial(4, &[2, 0], rat(1)).is_err());
        assert!(GrassmannElement::monomial(4, &[1, 1], rat(1)).is_err());
        assert!(GrassmannElement::monomial(2, &[5], rat(1)).is_err());
    }

    #[test]
    fn embedding_shifts_generators() {
        let f = &xi(2, 0) * &xi(2, 1);
        let shifted = f.embed(4, 2).unwrap();
        assert_eq!(shifted, &xi(4, 2) * &xi(4, 3));
        assert!(f.embed(3, 2).is_err());
    }

    #[test]
    fn display_is_readable() {
        let f = &GrassmannElement::one(2) + &(&xi(2, 0) * &xi(2, 1)).scale(&rat(-2));
        assert_eq!(format!("{f}"), "1 + -2·ξ1ξ2");
    }

    /// Arbitrary element of Λ(4) with small coefficients.
    fn arb_elem() -> impl Strategy<Value = GrassmannElement> {
        prop::collection::vec((0u64..16, -4i64..=4), 0..6).prop_map(|terms| {
            let mut e = GrassmannElement::zero(4);
            for (mask, c) in terms {
                e.insert_term(mask, rat(c));
            }
            e
        })
    }

    /// The terms of `f` of the given degree parity.
    fn part(f: &GrassmannElement, parity: usize) -> GrassmannElement {
        let gens = f.generators();
        let mut out = GrassmannElement::zero(gens);
        for (idx, c) in f.terms() {
            if idx.len() % 2 == parity {
                out = &out + &GrassmannElement::monomial(gens, &idx, c.clone()).unwrap();
            }
        }
        out
    }

    proptest! {
        #[test]
        fn product_is_associative(
            f in arb_elem(),
            g in arb_elem(),
            h in arb_elem(),
        ) {
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        }

        #[test]
        fn product_is_graded_commutative(f in arb_elem(), h in arb_elem()) {
            // Check f·h = ±h·f on every pair of homogeneous parts; only
            // odd·odd picks up the sign.
            for pf in 0..2 {
                for ph in 0..2 {
                    let a = part(&f, pf);
                    let b = part(&h, ph);
                    let lhs = &a * &b;
                    let rhs = &b * &a;
                    if pf == 1 && ph == 1 {
                        prop_assert_eq!(lhs, -&rhs);
                    } else {
                        prop_assert_eq!(lhs, rhs);
                    }
                }
            }
        }

        #[test]
        fn derivation_satisfies_the_graded_leibniz_rule(
            f in arb_elem(),
            h in arb_elem(),
            alpha in 0usize..4,
        ) {
            for pf in 0..2 {
                let a = part(&f, pf);
                let lhs = (&a * &h).deriv(alpha);
                let first = &a.deriv(alpha) * &h;
                let second = &a * &h.deriv(alpha);
                let rhs = if pf == 1 { &first - &second } else { &first + &second };
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
