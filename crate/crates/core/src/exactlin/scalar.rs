use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactlinError;

/// Arbitrary-precision rational number.
pub type Rat = BigRational;

/// A Gaussian rational `re + im·i`.
///
/// This is the single scalar type of the toolkit. Values are always kept in
/// canonical (reduced) form by the underlying rational type, so `==` is
/// exact equality and hashing is consistent.
///
/// The display / parse format is `a/b+c/di` with each part optional and
/// denominators of 1 omitted: `0`, `-3`, `1/2`, `i`, `-2i`, `1/2-3/4i`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: Rat,
    im: Rat,
}

impl Scalar {
    pub fn new(re: Rat, im: Rat) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::new(Rat::zero(), Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(Rat::from_integer(BigInt::from(n)), Rat::zero())
    }

    /// `num/den` as a real scalar. Panics if `den == 0`.
    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::new(
            Rat::new(BigInt::from(num), BigInt::from(den)),
            Rat::zero(),
        )
    }

    pub fn from_rat(r: Rat) -> Self {
        Scalar::new(r, Rat::zero())
    }

    pub fn re(&self) -> &Rat {
        &self.re
    }

    pub fn im(&self) -> &Rat {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar::new(self.re.clone(), -self.im.clone())
    }

    /// `re² + im²`, a nonnegative rational, zero iff the scalar is zero.
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Scalar::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Fused `self += c * x`, the inner-loop operation of elimination.
    pub fn add_mul_assign(&mut self, c: &Scalar, x: &Scalar) {
        self.re += &c.re * &x.re - &c.im * &x.im;
        self.im += &c.re * &x.im + &c.im * &x.re;
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_rat(r: &Rat, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_rat(&self.re, f);
        }
        if !self.re.is_zero() {
            fmt_rat(&self.re, f)?;
            if self.im.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.im.is_one() {
            return write!(f, "i");
        }
        if (-&self.im).is_one() {
            return write!(f, "-i");
        }
        fmt_rat(&self.im, f)?;
        write!(f, "i")
    }
}

fn parse_rat(s: &str) -> Result<Rat, ExactlinError> {
    let s = s.strip_prefix('+').unwrap_or(s);
    Rat::from_str(s).map_err(|_| ExactlinError::Parse(s.to_string()))
}

impl FromStr for Scalar {
    type Err = ExactlinError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let s = compact.as_str();
        if s.is_empty() {
            return Err(ExactlinError::Parse(input.to_string()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(Scalar::from_rat(parse_rat(s)?));
        };
        // Split off the imaginary summand: the last sign not at position 0.
        let split = if body.len() > 1 {
            body[1..]
                .rfind(|c: char| c == '+' || c == '-')
                .map(|idx| idx + 1)
        } else {
            None
        };
        let (re_str, im_str) = match split {
            Some(idx) => body.split_at(idx),
            None => ("", body),
        };
        let im = match im_str {
            "" | "+" => Rat::one(),
            "-" => -Rat::one(),
            other => parse_rat(other)?,
        };
        let re = if re_str.is_empty() {
            Rat::zero()
        } else {
            parse_rat(re_str)?
        };
        Ok(Scalar::new(re, im))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}
forward_binop!(Add, add);

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}
forward_binop!(Sub, sub);

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}
forward_binop!(Mul, mul);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * rhs.inv().expect("division by zero scalar")
    }
}
forward_binop!(Div, div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.re, -self.im)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = (&*self) * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn arithmetic_identities() {
        let x = s("1/2-3/4i");
        let y = s("-2+i");
        assert_eq!(&x + &y, s("-3/2+1/4i"));
        assert_eq!(&x * &y, s("-1/4+2i"));
        assert_eq!(&(&x * &y) / &y, x);
        assert_eq!(Scalar::i() * Scalar::i(), Scalar::from_int(-1));
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn inverse_of_zero_is_none() {
        assert!(Scalar::zero().inv().is_none());
        assert_eq!(s("i").inv().unwrap(), s("-i"));
    }

    #[test]
    fn display_canonical_forms() {
        for text in ["0", "1", "-3", "1/2", "i", "-i", "2i", "-1/3i", "1+i", "1/2-3/4i", "-5+2i"] {
            assert_eq!(s(text).to_string(), text);
        }
    }

    #[test]
    fn parse_accepts_spaces_and_plus() {
        assert_eq!(s("1/2 + 3/4 i"), s("1/2+3/4i"));
        assert_eq!(s("+2"), Scalar::from_int(2));
        assert_eq!(s("0+1i"), Scalar::i());
    }

    #[test]
    fn parse_rejects_garbage() {
        for text in ["", "one", "1//2", "1+2j", "i1", "--3"] {
            assert!(text.parse::<Scalar>().is_err(), "{text:?} parsed");
        }
    }
}
