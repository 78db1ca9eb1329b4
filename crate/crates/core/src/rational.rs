//! Arbitrary-precision rational numbers with exact arithmetic.
//!
//! `Rational` wraps [`num_rational::BigRational`], which keeps every value in
//! lowest terms with a positive denominator. The text form is `p/q`, or just
//! `p` when the denominator is one, with an optional leading minus on `p`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// An exact rational number, always stored in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, Error> {
        if denom.is_zero() {
            return Err(Error::ParseRational("denominator is zero".into()));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Rational(BigRational::from_integer(n.clone()))
    }

    /// `p/q` from machine integers; panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rational(self.0.recip())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::ParseRational(s.to_string());
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let numer = parse_int(num_str, true).ok_or_else(bad)?;
        let denom = match den_str {
            Some(d) => {
                let d = parse_int(d, false).ok_or_else(bad)?;
                if d.is_zero() {
                    return Err(bad());
                }
                d
            }
            None => BigInt::one(),
        };
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

/// Plain decimal integer; a leading minus is allowed only when `signed`.
fn parse_int(s: &str, signed: bool) -> Option<BigInt> {
    let digits = match s.strip_prefix('-') {
        Some(rest) if signed => rest,
        Some(_) => return None,
        None => s,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_integer_without_denominator() {
        assert_eq!(Rational::from_int(7).to_string(), "7");
        assert_eq!(Rational::ratio(-6, 3).to_string(), "-2");
        assert_eq!(Rational::ratio(1, 2).to_string(), "1/2");
        assert_eq!(Rational::ratio(2, -4).to_string(), "-1/2");
    }

    #[test]
    fn parses_text_forms() {
        assert_eq!("5/7".parse::<Rational>().unwrap(), Rational::ratio(5, 7));
        assert_eq!("-3/4".parse::<Rational>().unwrap(), Rational::ratio(-3, 4));
        assert_eq!("12".parse::<Rational>().unwrap(), Rational::from_int(12));
        assert_eq!("0/9".parse::<Rational>().unwrap(), Rational::zero());
        assert!("3/-4".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("a/b".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
    }

    #[test]
    fn arithmetic_is_exact_and_normalized() {
        let a = Rational::ratio(1, 6);
        let b = Rational::ratio(1, 3);
        let s = a.clone() + b.clone();
        assert_eq!(s, Rational::ratio(1, 2));
        assert_eq!(s.numer(), &BigInt::from(1));
        assert_eq!(s.denom(), &BigInt::from(2));
        assert_eq!(a.clone() * b.clone(), Rational::ratio(1, 18));
        assert_eq!(a.clone() - b.clone(), Rational::ratio(-1, 6));
        assert_eq!(b / a, Rational::from_int(2));
    }

    #[test]
    fn recip_and_pow() {
        assert_eq!(Rational::ratio(2, 3).recip(), Rational::ratio(3, 2));
        assert_eq!(Rational::ratio(-1, 2).pow(3), Rational::ratio(-1, 8));
        assert_eq!(Rational::zero().pow(0), Rational::one());
    }
}
