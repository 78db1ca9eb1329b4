//! The coefficient-ring contract shared by numeric and symbolic computation.
//!
//! Everything downstream (x-polynomials, truncated series, triangles, identity
//! checks) is generic over [`Scalar`], so the same code runs over exact
//! rationals (numeric `lam`, `r`) and over `Q[lam, r]` (symbolic `lam`, `r`).

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::lampoly::LamRPoly;
use crate::rational::Rational;

/// A commutative ring element with exact arithmetic and a rational embedding.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + Sized
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_integer(n: i64) -> Self;
    fn from_bigint(n: &BigInt) -> Self;
    fn from_rational(q: &Rational) -> Self;
    /// Exact multiplication by a rational factor.
    fn scale(&self, q: &Rational) -> Self;

    fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }

    fn one() -> Self {
        Rational::one()
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn from_integer(n: i64) -> Self {
        Rational::from_int(n)
    }

    fn from_bigint(n: &BigInt) -> Self {
        Rational::from_bigint(n)
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn scale(&self, q: &Rational) -> Self {
        self.clone() * q.clone()
    }
}

impl Scalar for LamRPoly {
    fn zero() -> Self {
        LamRPoly::zero()
    }

    fn one() -> Self {
        LamRPoly::one()
    }

    fn is_zero(&self) -> bool {
        LamRPoly::is_zero(self)
    }

    fn from_integer(n: i64) -> Self {
        LamRPoly::constant(Rational::from_int(n))
    }

    fn from_bigint(n: &BigInt) -> Self {
        LamRPoly::constant(Rational::from_bigint(n))
    }

    fn from_rational(q: &Rational) -> Self {
        LamRPoly::constant(q.clone())
    }

    fn scale(&self, q: &Rational) -> Self {
        LamRPoly::scale(self, q)
    }
}
