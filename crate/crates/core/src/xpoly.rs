//! Dense polynomials in the indeterminate `x` over a [`Scalar`] ring.
//!
//! [`expand_linear_product`] multiplies out products of linear factors from
//! first principles; it is the ground-truth oracle the recurrence and
//! generating-function paths are validated against.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;
use crate::scalar::Scalar;

/// A polynomial in `x`; `coeffs[k]` is the coefficient of `x^k` and trailing
/// zeros are trimmed, so the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XPoly<R: Scalar> {
    coeffs: Vec<R>,
}

impl<R: Scalar> XPoly<R> {
    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        XPoly {
            coeffs: vec![R::one()],
        }
    }

    pub fn constant(c: R) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// Build from ascending-power coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        let mut p = XPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k`; zero beyond the degree.
    pub fn coefficient(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c.scale(q)).collect())
    }

    /// Multiply by the linear factor `a*x + b`.
    pub fn mul_linear(&self, a: &R, b: &R) -> Self {
        let mut out = vec![R::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] = out[i].clone() + c.clone() * b.clone();
            out[i + 1] = out[i + 1].clone() + c.clone() * a.clone();
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }

    /// Substitute a ring value for `x`.
    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }
}

/// The monic product `prod_i (x + constants[i])`; the empty product is 1.
pub fn expand_linear_product<R: Scalar>(constants: &[R]) -> XPoly<R> {
    let mut p = XPoly::one();
    for c in constants {
        p = p.mul_linear(&R::one(), c);
    }
    p
}

impl<R: Scalar> Add for XPoly<R> {
    type Output = XPoly<R>;
    fn add(self, rhs: XPoly<R>) -> XPoly<R> {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            long[i] = long[i].clone() + c;
        }
        XPoly::from_coeffs(long)
    }
}

impl<R: Scalar> Sub for XPoly<R> {
    type Output = XPoly<R>;
    fn sub(self, rhs: XPoly<R>) -> XPoly<R> {
        self + (-rhs)
    }
}

impl<R: Scalar> Neg for XPoly<R> {
    type Output = XPoly<R>;
    fn neg(self) -> XPoly<R> {
        XPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<R: Scalar> Mul for XPoly<R> {
    type Output = XPoly<R>;
    fn mul(self, rhs: XPoly<R>) -> XPoly<R> {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        XPoly::from_coeffs(out)
    }
}

impl<R: Scalar> fmt::Display for XPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}
