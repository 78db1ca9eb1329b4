//! Truncated formal power series in `t` over a [`Scalar`] ring.
//!
//! Coefficients are stored as ordinary (non-factorial-scaled) values; EGF
//! values are recovered through [`TruncatedSeries::egf_coefficient`], which
//! multiplies by `n!` at read time. This keeps Cauchy products plain.
//!
//! The series built here are the second, independent computation path for the
//! number families: `(log(1+lam*t)/lam)^k (1+lam*t)^(r/lam)` for the
//! r-Stirling values and `(log(1+t)/t)^k (1+t)^x` for the Daehee values. Both
//! the `log(1+lam*t)/lam` coefficients and the binomial power `(1+lam*t)^(r/lam)`
//! come from closed forms, so no ring division by `lam` (or symbolic quotient
//! `r/lam`) ever occurs and `lam = 0` stays valid.

use crate::binomial::factorial;
use crate::families::falling_factorial_lambda;
use crate::rational::Rational;
use crate::scalar::Scalar;

/// A power series truncated at a fixed order: terms `t^0 ..= t^order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries<R: Scalar> {
    coeffs: Vec<R>,
}

impl<R: Scalar> TruncatedSeries<R> {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![R::zero(); order + 1],
        }
    }

    /// The multiplicative identity series 1.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = R::one();
        s
    }

    /// Build from ascending-power coefficients; the order is `len - 1`.
    pub fn from_coeffs(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the t^0 term");
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Ordinary coefficient of `t^n`.
    pub fn coefficient(&self, n: usize) -> R {
        assert!(n <= self.order(), "coefficient beyond truncation order");
        self.coeffs[n].clone()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// EGF coefficient: `n! * coeffs[n]`, exactly.
    pub fn egf_coefficient(&self, n: usize) -> R {
        assert!(n <= self.order(), "coefficient beyond truncation order");
        self.coeffs[n].scale(&Rational::from_bigint(&factorial(n as u64)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| self.coeffs[i].clone() + other.coeffs[i].clone())
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Truncated Cauchy product; mismatched orders truncate to the smaller.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![R::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] =
                    coeffs[i + j].clone() + self.coeffs[i].clone() * other.coeffs[j].clone();
            }
        }
        TruncatedSeries { coeffs }
    }

    /// k-th power by repeated multiplication.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect(),
        }
    }
}

/// `log(1 + lam*t)/lam` with the closed-form coefficients
/// `c_0 = 0`, `c_j = (-1)^(j-1) lam^(j-1) / j`; at `lam = 0` this is `t`.
pub fn log1p_over_lambda<R: Scalar>(lam: &R, order: usize) -> TruncatedSeries<R> {
    let mut s = TruncatedSeries::zero(order);
    for j in 1..=order {
        let sign = if j % 2 == 0 { -1 } else { 1 };
        let q = Rational::ratio(sign, j as i64);
        s.coeffs[j] = lam.pow(j as u32 - 1).scale(&q);
    }
    s
}

/// `(1 + lam*t)^(r/lam)`: the coefficient of `t^l` is the lambda-binomial
/// value `(r)_{l,lam} / l!`, taken directly from the falling-factorial
/// closed form rather than via exp of a log.
pub fn lambda_binomial_series<R: Scalar>(r: &R, lam: &R, order: usize) -> TruncatedSeries<R> {
    let mut s = TruncatedSeries::zero(order);
    for l in 0..=order {
        let ff = falling_factorial_lambda(r, l as u64, lam);
        s.coeffs[l] = ff.scale(&Rational::from_bigint(&factorial(l as u64)).recip());
    }
    s
}

/// `(1/k!) (log(1+lam*t)/lam)^k (1+lam*t)^(r/lam)`; its EGF coefficient at
/// `t^n` is the r-Stirling value with upper index `n` and lower index `k`.
pub fn r_stirling_gf<R: Scalar>(k: u32, lam: &R, r: &R, order: usize) -> TruncatedSeries<R> {
    let log_pow = log1p_over_lambda(lam, order).pow(k);
    let binom = lambda_binomial_series(r, lam, order);
    log_pow
        .mul(&binom)
        .scale(&Rational::from_bigint(&factorial(k as u64)).recip())
}

/// `(log(1+t)/t)^k (1+t)^x`; its EGF coefficient at `t^n` is the higher-order
/// Daehee polynomial value of order `k` at `x` (the Daehee number for `x = 0`).
pub fn daehee_gf<R: Scalar>(k: u32, x: &R, order: usize) -> TruncatedSeries<R> {
    let mut log_over_t = TruncatedSeries::zero(order);
    for j in 0..=order {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        log_over_t.coeffs[j] = R::from_rational(&Rational::ratio(sign, j as i64 + 1));
    }
    let binom = lambda_binomial_series(x, &R::one(), order);
    log_over_t.pow(k).mul(&binom)
}
