//! The number families: lambda-analogue (r-)Stirling numbers of the first
//! kind, their unsigned variant, classical Stirling numbers of both kinds,
//! higher-order Daehee numbers and polynomials, r-Whitney numbers and the
//! Whitney-type coefficients.
//!
//! The primary computation path is the row recurrence
//! `S(n+1, k) = S(n, k-1) - (n*lam - r) * S(n, k)` with `S(0, 0) = 1` and
//! zero outside `0 <= k <= n`, memoized in [`Triangle`] rows. The k = 0
//! column is produced by the same recurrence (with `S(n, -1) = 0`) and then
//! checked against its closed form `(r)_{n,lam}`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::binomial::binomial;
use crate::lampoly::LamRPoly;
use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::series::daehee_gf;
use crate::xpoly::{expand_linear_product, XPoly};
use crate::Error;

/// The lambda-falling factorial `(x)_{n,lam} = x (x-lam) ... (x-(n-1)lam)`,
/// with `(x)_{0,lam} = 1`.
pub fn falling_factorial_lambda<R: Scalar>(x: &R, n: u64, lam: &R) -> R {
    let mut acc = R::one();
    let mut factor = x.clone();
    for _ in 0..n {
        acc = acc * factor.clone();
        factor = factor - lam.clone();
    }
    acc
}

/// Memoized triangle of r-Stirling values for one `(lam, r)` parameter pair.
///
/// Completed rows are never mutated; deeper queries only append rows, so
/// values are identical whether a triangle is filled row by row or by one
/// deep query.
#[derive(Clone, Debug)]
pub struct Triangle<R: Scalar> {
    lam: R,
    r: R,
    rows: Vec<Vec<R>>,
}

impl<R: Scalar> Triangle<R> {
    pub fn new(lam: R, r: R) -> Self {
        Triangle {
            lam,
            r,
            rows: vec![vec![R::one()]],
        }
    }

    fn ensure_rows(&mut self, n: usize) {
        while self.rows.len() <= n {
            let m = self.rows.len(); // building row m from row m - 1
            let prev = &self.rows[m - 1];
            let factor = self.lam.scale(&Rational::from_int(m as i64 - 1)) - self.r.clone();
            let mut row = Vec::with_capacity(m + 1);
            for k in 0..=m {
                let above_left = if k >= 1 { prev[k - 1].clone() } else { R::zero() };
                let above = if k < m {
                    prev[k].clone() * factor.clone()
                } else {
                    R::zero()
                };
                row.push(above_left - above);
            }
            debug_assert!(row[m] == R::one());
            debug_assert!(
                row[0] == falling_factorial_lambda(&self.r, m as u64, &self.lam),
                "k = 0 column must equal the lambda-falling factorial of r"
            );
            self.rows.push(row);
        }
    }

    /// Triangle entry; zero outside `0 <= k <= n`.
    pub fn value(&mut self, n: i64, k: i64) -> R {
        if n < 0 || k < 0 || k > n {
            return R::zero();
        }
        self.ensure_rows(n as usize);
        self.rows[n as usize][k as usize].clone()
    }

    /// All entries of row `n`.
    pub fn row(&mut self, n: usize) -> &[R] {
        self.ensure_rows(n);
        &self.rows[n]
    }

    pub fn computed_rows(&self) -> usize {
        self.rows.len()
    }
}

/// Thread-safe store of [`Triangle`]s keyed by `(lam, r)`. Readers block
/// while a row is being extended, so a partially computed row is never
/// observable.
pub struct TriangleCache<R: Scalar> {
    inner: Mutex<HashMap<(R, R), Triangle<R>>>,
}

impl<R: Scalar> TriangleCache<R> {
    pub fn new() -> Self {
        TriangleCache {
            inner: Mutex::new(HashMap::new()),
        }
    }

    pub fn value(&self, lam: &R, r: &R, n: i64, k: i64) -> R {
        if n < 0 || k < 0 || k > n {
            return R::zero();
        }
        let mut map = self.inner.lock().unwrap();
        map.entry((lam.clone(), r.clone()))
            .or_insert_with(|| Triangle::new(lam.clone(), r.clone()))
            .value(n, k)
    }

    pub fn row(&self, lam: &R, r: &R, n: usize) -> Vec<R> {
        let mut map = self.inner.lock().unwrap();
        map.entry((lam.clone(), r.clone()))
            .or_insert_with(|| Triangle::new(lam.clone(), r.clone()))
            .row(n)
            .to_vec()
    }
}

impl<R: Scalar> Default for TriangleCache<R> {
    fn default() -> Self {
        Self::new()
    }
}

/// Lambda-analogue r-Stirling number of the first kind, by recurrence.
pub fn r_stirling1_lambda<R: Scalar>(n: i64, k: i64, lam: &R, r: &R) -> R {
    Triangle::new(lam.clone(), r.clone()).value(n, k)
}

/// Lambda-analogue Stirling number of the first kind (`r = 0`).
pub fn stirling1_lambda<R: Scalar>(n: i64, k: i64, lam: &R) -> R {
    r_stirling1_lambda(n, k, lam, &R::zero())
}

/// Unsigned lambda-analogue r-Stirling bracket, via the sign relation
/// `(-1)^(n-k) S^(-r)(n, k)`. The defining product `prod_i (x + r + i*lam)`
/// is available separately as [`unsigned_bracket_poly`].
pub fn unsigned_r_stirling1_lambda<R: Scalar>(n: i64, k: i64, lam: &R, r: &R) -> R {
    let signed = r_stirling1_lambda(n, k, lam, &-r.clone());
    if (n - k) % 2 == 0 {
        signed
    } else {
        -signed
    }
}

/// Expansion-oracle polynomial `(x + r)_{n,lam} = prod_i (x + r - i*lam)`.
pub fn r_stirling_oracle_poly<R: Scalar>(n: u32, lam: &R, r: &R) -> XPoly<R> {
    let constants: Vec<R> = (0..n)
        .map(|i| r.clone() - lam.scale(&Rational::from_int(i as i64)))
        .collect();
    expand_linear_product(&constants)
}

/// Expansion-oracle polynomial `prod_i (x + r + i*lam)` for the unsigned
/// bracket.
pub fn unsigned_bracket_poly<R: Scalar>(n: u32, lam: &R, r: &R) -> XPoly<R> {
    let constants: Vec<R> = (0..n)
        .map(|i| r.clone() + lam.scale(&Rational::from_int(i as i64)))
        .collect();
    expand_linear_product(&constants)
}

/// Expansion-oracle polynomial `(m*x + r)_{n,lam} = prod_i (m*x + r - i*lam)`.
pub fn whitney_t_oracle_poly<R: Scalar>(n: u32, m: &Rational, lam: &R, r: &R) -> XPoly<R> {
    let m_elem = R::from_rational(m);
    let mut p = XPoly::one();
    for i in 0..n {
        let b = r.clone() - lam.scale(&Rational::from_int(i as i64));
        p = p.mul_linear(&m_elem, &b);
    }
    p
}

/// Classical signed Stirling numbers of the first kind.
pub fn stirling1_classical(n: u64, k: i64) -> BigInt {
    int_triangle_value(n, k, |m, prev, row| {
        for (j, slot) in row.iter_mut().enumerate() {
            let left = if j >= 1 { prev[j - 1].clone() } else { BigInt::zero() };
            let right = if j < m as usize {
                &prev[j] * BigInt::from(m - 1)
            } else {
                BigInt::zero()
            };
            *slot = left - right;
        }
    })
}

/// Classical Stirling numbers of the second kind.
pub fn stirling2_classical(n: u64, k: i64) -> BigInt {
    int_triangle_value(n, k, |m, prev, row| {
        for (j, slot) in row.iter_mut().enumerate() {
            let left = if j >= 1 { prev[j - 1].clone() } else { BigInt::zero() };
            let right = if j < m as usize {
                &prev[j] * BigInt::from(j)
            } else {
                BigInt::zero()
            };
            *slot = left + right;
        }
    })
}

fn int_triangle_value(
    n: u64,
    k: i64,
    step: impl Fn(u64, &[BigInt], &mut [BigInt]),
) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let mut prev = vec![BigInt::one()];
    for m in 1..=n {
        let mut row = vec![BigInt::zero(); m as usize + 1];
        step(m, &prev, &mut row);
        prev = row;
    }
    prev[k as usize].clone()
}

/// Higher-order Daehee number `D_n^(k)`.
pub fn daehee_number(n: u32, k: u32) -> Rational {
    daehee_polynomial(n, k, &Rational::zero())
}

/// Higher-order Daehee polynomial value `D_n^(k)(x)` via the series path.
pub fn daehee_polynomial(n: u32, k: u32, x: &Rational) -> Rational {
    daehee_gf(k, x, n as usize + 1).egf_coefficient(n as usize)
}

/// r-Whitney number `W_{m,r}(n, k)`, from the binomial/Stirling-2 expansion
/// of `(m*x + r)^n` over the scaled falling-factorial basis.
pub fn whitney_number(n: u32, k: u32, m: &Rational, r: &Rational) -> Result<Rational, Error> {
    if m.is_zero() {
        return Err(Error::InvalidParams("whitney numbers require m != 0".into()));
    }
    if k > n {
        return Ok(Rational::zero());
    }
    let mut acc = Rational::zero();
    for j in k..=n {
        let c = Rational::from_bigint(&binomial(n as u64, j as i64));
        let s2 = Rational::from_bigint(&stirling2_classical(j as u64, k as i64));
        acc = acc + c * m.pow(j - k) * r.pow(n - j) * s2;
    }
    Ok(acc)
}

/// Whitney-type coefficient `T(n, k | m) = m^k * S^(r)(n, k)`; the defining
/// expansion of `(m*x + r)_{n,lam}` is available as [`whitney_t_oracle_poly`].
pub fn whitney_type_t<R: Scalar>(n: i64, k: i64, m: &Rational, lam: &R, r: &R) -> R {
    if k < 0 {
        return R::zero();
    }
    r_stirling1_lambda(n, k, lam, r).scale(&m.pow(k as u32))
}

/// Which number family a triangle or CLI request refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyKind {
    LambdaStirling1,
    RStirlingLambda,
    UnsignedRStirlingLambda,
    ClassicalStirling1,
    ClassicalStirling2,
    DaeheeNumbers,
    DaeheePolynomial,
    Whitney,
    WhitneyTypeT,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 9] = [
        FamilyKind::LambdaStirling1,
        FamilyKind::RStirlingLambda,
        FamilyKind::UnsignedRStirlingLambda,
        FamilyKind::ClassicalStirling1,
        FamilyKind::ClassicalStirling2,
        FamilyKind::DaeheeNumbers,
        FamilyKind::DaeheePolynomial,
        FamilyKind::Whitney,
        FamilyKind::WhitneyTypeT,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::LambdaStirling1 => "lambda-stirling",
            FamilyKind::RStirlingLambda => "r-stirling-lambda",
            FamilyKind::UnsignedRStirlingLambda => "unsigned-r-stirling-lambda",
            FamilyKind::ClassicalStirling1 => "classical-stirling1",
            FamilyKind::ClassicalStirling2 => "classical-stirling2",
            FamilyKind::DaeheeNumbers => "daehee-numbers",
            FamilyKind::DaeheePolynomial => "daehee-polynomial",
            FamilyKind::Whitney => "whitney",
            FamilyKind::WhitneyTypeT => "whitney-type-t",
        }
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        Self::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown family '{s}'")))
    }

    fn uses_lam(&self) -> bool {
        matches!(
            self,
            FamilyKind::LambdaStirling1
                | FamilyKind::RStirlingLambda
                | FamilyKind::UnsignedRStirlingLambda
                | FamilyKind::WhitneyTypeT
        )
    }

    fn uses_r(&self) -> bool {
        matches!(
            self,
            FamilyKind::RStirlingLambda
                | FamilyKind::UnsignedRStirlingLambda
                | FamilyKind::Whitney
                | FamilyKind::WhitneyTypeT
        )
    }

    fn uses_m(&self) -> bool {
        matches!(self, FamilyKind::Whitney | FamilyKind::WhitneyTypeT)
    }

    fn uses_x(&self) -> bool {
        matches!(self, FamilyKind::DaeheePolynomial)
    }
}

/// A `lam` or `r` parameter: the formal symbol, or an exact rational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParamValue {
    Sym,
    Num(Rational),
}

impl ParamValue {
    pub fn parse(s: &str) -> Result<Self, Error> {
        if s == "sym" {
            Ok(ParamValue::Sym)
        } else {
            Ok(ParamValue::Num(s.parse()?))
        }
    }

    pub fn is_sym(&self) -> bool {
        matches!(self, ParamValue::Sym)
    }

    pub fn render(&self) -> String {
        match self {
            ParamValue::Sym => "sym".into(),
            ParamValue::Num(q) => q.to_string(),
        }
    }
}

/// Fully resolved parameters for one family request. Families reject
/// parameters they do not use, and require the ones they do.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyParams {
    pub family: FamilyKind,
    pub lam: Option<ParamValue>,
    pub r: Option<ParamValue>,
    pub m: Option<Rational>,
    pub x: Option<Rational>,
}

impl FamilyParams {
    /// Build from text parameters, defaulting omitted `lam`/`r` to the formal
    /// symbols for families that use them (whitney still needs a numeric r).
    pub fn from_strings(
        family: &str,
        lam: Option<&str>,
        r: Option<&str>,
        m: Option<&str>,
        x: Option<&str>,
    ) -> Result<Self, Error> {
        let family = FamilyKind::parse(family)?;
        let mut lam = lam.map(ParamValue::parse).transpose()?;
        let mut r = r.map(ParamValue::parse).transpose()?;
        if lam.is_none() && family.uses_lam() {
            lam = Some(ParamValue::Sym);
        }
        if r.is_none() && family.uses_r() && family != FamilyKind::Whitney {
            r = Some(ParamValue::Sym);
        }
        let params = FamilyParams {
            family,
            lam,
            r,
            m: m.map(str::parse).transpose()?,
            x: x.map(str::parse).transpose()?,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let fam = self.family;
        let want = |name: &str, used: bool, present: bool| -> Result<(), Error> {
            if used && !present {
                Err(Error::InvalidParams(format!(
                    "family '{}' requires parameter {name}",
                    fam.name()
                )))
            } else if !used && present {
                Err(Error::InvalidParams(format!(
                    "family '{}' does not take parameter {name}",
                    fam.name()
                )))
            } else {
                Ok(())
            }
        };
        want("lam", fam.uses_lam(), self.lam.is_some())?;
        want("r", fam.uses_r(), self.r.is_some())?;
        want("m", fam.uses_m(), self.m.is_some())?;
        want("x", fam.uses_x(), self.x.is_some())?;
        if fam == FamilyKind::Whitney {
            match &self.r {
                Some(ParamValue::Sym) => {
                    return Err(Error::InvalidParams(
                        "family 'whitney' requires a numeric r".into(),
                    ))
                }
                Some(ParamValue::Num(_)) => {}
                None => unreachable!("presence checked above"),
            }
            if self.m.as_ref().is_some_and(Rational::is_zero) {
                return Err(Error::InvalidParams("whitney numbers require m != 0".into()));
            }
        }
        Ok(())
    }

    fn is_symbolic(&self) -> bool {
        self.lam.as_ref().is_some_and(ParamValue::is_sym)
            || self.r.as_ref().is_some_and(ParamValue::is_sym)
    }
}

fn lam_elem<R: Scalar>(v: &Option<ParamValue>, sym: &R) -> R {
    match v {
        None => R::zero(),
        Some(ParamValue::Sym) => sym.clone(),
        Some(ParamValue::Num(q)) => R::from_rational(q),
    }
}

/// Rows `0 ..= n_max` of the requested family, rendered in the canonical
/// text forms (`p/q` rationals, `lam`/`r` polynomials).
pub fn triangle_strings(params: &FamilyParams, n_max: u32) -> Result<Vec<Vec<String>>, Error> {
    params.validate()?;
    let fam = params.family;
    let rows: Vec<Vec<String>> = match fam {
        FamilyKind::ClassicalStirling1 => render_int_rows(n_max, stirling1_classical),
        FamilyKind::ClassicalStirling2 => render_int_rows(n_max, stirling2_classical),
        FamilyKind::DaeheeNumbers => render_daehee_rows(n_max, &Rational::zero()),
        FamilyKind::DaeheePolynomial => {
            render_daehee_rows(n_max, params.x.as_ref().expect("validated"))
        }
        FamilyKind::Whitney => {
            let m = params.m.as_ref().expect("validated");
            let r = match params.r.as_ref().expect("validated") {
                ParamValue::Num(q) => q.clone(),
                ParamValue::Sym => unreachable!("validated"),
            };
            let mut rows = Vec::new();
            for n in 0..=n_max {
                let mut row = Vec::with_capacity(n as usize + 1);
                for k in 0..=n {
                    row.push(whitney_number(n, k, m, &r)?.to_string());
                }
                rows.push(row);
            }
            rows
        }
        _ if params.is_symbolic() => {
            let lam = lam_elem(&params.lam, &LamRPoly::sym_lam());
            let r = lam_elem(&params.r, &LamRPoly::sym_r());
            render_stirling_like(fam, lam, r, params.m.as_ref(), n_max)
        }
        _ => {
            let lam = lam_elem::<Rational>(&params.lam, &Rational::zero());
            let r = lam_elem::<Rational>(&params.r, &Rational::zero());
            render_stirling_like(fam, lam, r, params.m.as_ref(), n_max)
        }
    };
    Ok(rows)
}

fn render_int_rows(n_max: u32, value: impl Fn(u64, i64) -> BigInt) -> Vec<Vec<String>> {
    (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|k| value(n as u64, k as i64).to_string())
                .collect()
        })
        .collect()
}

fn render_daehee_rows(n_max: u32, x: &Rational) -> Vec<Vec<String>> {
    // Row n lists D_n^(k)(x) for k = 0 ..= n; one series per column suffices.
    let columns: Vec<crate::series::TruncatedSeries<Rational>> = (0..=n_max)
        .map(|k| daehee_gf(k, x, n_max as usize + 1))
        .collect();
    (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|k| columns[k as usize].egf_coefficient(n as usize).to_string())
                .collect()
        })
        .collect()
}

fn render_stirling_like<R: Scalar>(
    fam: FamilyKind,
    lam: R,
    r: R,
    m: Option<&Rational>,
    n_max: u32,
) -> Vec<Vec<String>> {
    let tri_r = match fam {
        FamilyKind::UnsignedRStirlingLambda => -r.clone(),
        _ => r.clone(),
    };
    let mut tri = Triangle::new(lam, tri_r);
    let mut rows = Vec::new();
    for n in 0..=n_max as i64 {
        let mut row = Vec::with_capacity(n as usize + 1);
        for k in 0..=n {
            let base = tri.value(n, k);
            let v = match fam {
                FamilyKind::UnsignedRStirlingLambda => {
                    if (n - k) % 2 == 0 {
                        base
                    } else {
                        -base
                    }
                }
                FamilyKind::WhitneyTypeT => base.scale(&m.expect("validated").pow(k as u32)),
                _ => base,
            };
            row.push(v.to_string());
        }
        rows.push(row);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam() -> LamRPoly {
        LamRPoly::sym_lam()
    }

    fn r() -> LamRPoly {
        LamRPoly::sym_r()
    }

    fn rat(p: i64, q: i64) -> Rational {
        Rational::ratio(p, q)
    }

    #[test]
    fn falling_factorial_examples() {
        // (r)_{2,lam} = r(r - lam)
        assert_eq!(
            falling_factorial_lambda(&r(), 2, &lam()),
            r() * (r() - lam())
        );
        assert_eq!(falling_factorial_lambda(&r(), 0, &lam()), LamRPoly::one());
        // (3)_{3,1} = 3*2*1
        assert_eq!(
            falling_factorial_lambda(&Rational::from_int(3), 3, &Rational::one()),
            Rational::from_int(6)
        );
    }

    #[test]
    fn r_stirling_symbolic_values() {
        assert_eq!(
            r_stirling1_lambda(2, 1, &lam(), &r()),
            "2*r-lam".parse().unwrap()
        );
        assert_eq!(
            r_stirling1_lambda(3, 2, &lam(), &r()),
            "3*r-3*lam".parse().unwrap()
        );
        for n in 0..8 {
            assert_eq!(r_stirling1_lambda(n, n, &lam(), &r()), LamRPoly::one());
        }
        assert_eq!(
            stirling1_lambda(4, 1, &lam()),
            "-6*lam^3".parse().unwrap()
        );
        assert_eq!(stirling1_lambda(3, 1, &lam()), "2*lam^2".parse().unwrap());
    }

    #[test]
    fn r_stirling_out_of_range_is_zero() {
        assert_eq!(r_stirling1_lambda(3, 4, &lam(), &r()), LamRPoly::zero());
        assert_eq!(r_stirling1_lambda(3, -1, &lam(), &r()), LamRPoly::zero());
        assert_eq!(r_stirling1_lambda(-2, 0, &lam(), &r()), LamRPoly::zero());
        for n in 1..8 {
            assert_eq!(stirling1_lambda(n, 0, &lam()), LamRPoly::zero());
        }
    }

    #[test]
    fn k0_column_is_falling_factorial_of_r() {
        let mut tri = Triangle::new(lam(), r());
        for n in 0..10u64 {
            assert_eq!(
                tri.value(n as i64, 0),
                falling_factorial_lambda(&r(), n, &lam())
            );
        }
    }

    #[test]
    fn classical_limit_matches_integer_triangle() {
        let one = Rational::one();
        for n in 0..=10i64 {
            for k in 0..=n {
                assert_eq!(
                    stirling1_lambda(n, k, &one),
                    Rational::from_bigint(&stirling1_classical(n as u64, k))
                );
            }
        }
        // row 4: 0, -6, 11, -6, 1
        let row: Vec<BigInt> = (0..=4).map(|k| stirling1_classical(4, k)).collect();
        let expect: Vec<BigInt> = [0, -6, 11, -6, 1].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(row, expect);
    }

    #[test]
    fn unsigned_examples() {
        assert_eq!(
            unsigned_r_stirling1_lambda(2, 1, &lam(), &r()),
            "2*r+lam".parse().unwrap()
        );
        for n in 0..6 {
            assert_eq!(
                unsigned_r_stirling1_lambda(n, n, &lam(), &r()),
                LamRPoly::one()
            );
        }
        // lam = 1, r = 0: |S1(3, 1)| = 2
        assert_eq!(
            unsigned_r_stirling1_lambda(3, 1, &Rational::one(), &Rational::zero()),
            Rational::from_int(2)
        );
    }

    #[test]
    fn unsigned_matches_its_defining_product() {
        for n in 0..=8u32 {
            let p = unsigned_bracket_poly(n, &lam(), &r());
            for k in 0..=n as i64 {
                assert_eq!(
                    unsigned_r_stirling1_lambda(n as i64, k, &lam(), &r()),
                    p.coefficient(k as usize)
                );
            }
        }
    }

    #[test]
    fn stirling2_examples() {
        assert_eq!(stirling2_classical(3, 2), BigInt::from(3));
        assert_eq!(stirling2_classical(4, 1), BigInt::one());
        for n in 0..8 {
            assert_eq!(stirling2_classical(n, n as i64), BigInt::one());
        }
        assert_eq!(stirling2_classical(5, 3), BigInt::from(25));
        assert_eq!(stirling2_classical(2, 5), BigInt::zero());
    }

    #[test]
    fn daehee_examples() {
        assert_eq!(daehee_number(1, 1), rat(-1, 2));
        assert_eq!(daehee_number(2, 2), rat(11, 6));
        for k in 0..6 {
            assert_eq!(daehee_number(0, k), Rational::one());
        }
        // D_1(x) = x - 1/2 at a few sample points
        for x in [rat(0, 1), rat(3, 1), rat(-1, 2)] {
            assert_eq!(
                daehee_polynomial(1, 1, &x),
                x.clone() - rat(1, 2)
            );
        }
        assert_eq!(daehee_polynomial(2, 1, &Rational::zero()), daehee_number(2, 1));
    }

    #[test]
    fn daehee_connection_instance() {
        // S^(3)(2,1) = 2 * D_1(3) = 5 at lam = 1
        let lhs = r_stirling1_lambda(2, 1, &Rational::one(), &Rational::from_int(3));
        let rhs = Rational::from_int(2) * daehee_polynomial(1, 1, &Rational::from_int(3));
        assert_eq!(lhs, Rational::from_int(5));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn whitney_examples() {
        let m = rat(2, 1);
        let r1 = Rational::one();
        assert_eq!(whitney_number(1, 0, &m, &r1).unwrap(), r1.clone());
        // W(2,1) = 2r + m
        assert_eq!(whitney_number(2, 1, &m, &r1).unwrap(), rat(4, 1));
        for n in 0..6 {
            assert_eq!(whitney_number(n, n, &m, &r1).unwrap(), Rational::one());
        }
        assert!(whitney_number(2, 1, &Rational::zero(), &r1).is_err());
        assert_eq!(whitney_number(2, 5, &m, &r1).unwrap(), Rational::zero());
    }

    #[test]
    fn whitney_type_t_examples() {
        let m = rat(3, 1);
        // T(2,1|m) = m(2r - lam)
        let expect = ("2*r-lam".parse::<LamRPoly>().unwrap()).scale(&m);
        assert_eq!(whitney_type_t(2, 1, &m, &lam(), &r()), expect);
        // k = 0 column is the falling factorial of r
        for n in 0..6u64 {
            assert_eq!(
                whitney_type_t(n as i64, 0, &m, &lam(), &r()),
                falling_factorial_lambda(&r(), n, &lam())
            );
        }
        // m = 1 reduces to the r-Stirling value
        for n in 0..6i64 {
            for k in 0..=n {
                assert_eq!(
                    whitney_type_t(n, k, &Rational::one(), &lam(), &r()),
                    r_stirling1_lambda(n, k, &lam(), &r())
                );
            }
        }
    }

    #[test]
    fn memoization_is_transparent() {
        let mut by_rows = Triangle::new(lam(), r());
        for n in 0..=9 {
            by_rows.row(n);
        }
        let mut deep = Triangle::new(lam(), r());
        assert_eq!(deep.value(9, 4), by_rows.value(9, 4));
        for n in 0..=9i64 {
            for k in 0..=n {
                assert_eq!(deep.value(n, k), by_rows.value(n, k));
            }
        }
    }

    #[test]
    fn cache_shares_across_queries() {
        let cache = TriangleCache::new();
        let a = cache.value(&lam(), &r(), 6, 2);
        let b = cache.value(&lam(), &r(), 6, 2);
        assert_eq!(a, b);
        assert_eq!(cache.value(&lam(), &r(), -1, 0), LamRPoly::zero());
        assert_eq!(cache.row(&lam(), &r(), 2).len(), 3);
    }

    #[test]
    fn params_strict_validation() {
        let ok = FamilyParams {
            family: FamilyKind::RStirlingLambda,
            lam: Some(ParamValue::Sym),
            r: Some(ParamValue::Sym),
            m: None,
            x: None,
        };
        assert!(ok.validate().is_ok());

        let extra_m = FamilyParams {
            m: Some(Rational::one()),
            ..ok.clone()
        };
        assert!(extra_m.validate().is_err());

        let missing_lam = FamilyParams {
            lam: None,
            ..ok.clone()
        };
        assert!(missing_lam.validate().is_err());

        let whitney_sym_r = FamilyParams {
            family: FamilyKind::Whitney,
            lam: None,
            r: Some(ParamValue::Sym),
            m: Some(Rational::one()),
            x: None,
        };
        assert!(whitney_sym_r.validate().is_err());

        let whitney_zero_m = FamilyParams {
            family: FamilyKind::Whitney,
            lam: None,
            r: Some(ParamValue::Num(Rational::one())),
            m: Some(Rational::zero()),
            x: None,
        };
        assert!(whitney_zero_m.validate().is_err());

        let classical_with_lam = FamilyParams {
            family: FamilyKind::ClassicalStirling1,
            lam: Some(ParamValue::Sym),
            r: None,
            m: None,
            x: None,
        };
        assert!(classical_with_lam.validate().is_err());
    }

    #[test]
    fn triangle_strings_examples() {
        let params = FamilyParams {
            family: FamilyKind::RStirlingLambda,
            lam: Some(ParamValue::Sym),
            r: Some(ParamValue::Sym),
            m: None,
            x: None,
        };
        let rows = triangle_strings(&params, 2).unwrap();
        assert_eq!(
            rows,
            vec![
                vec!["1".to_string()],
                vec!["r".to_string(), "1".to_string()],
                vec![
                    "r^2-lam*r".to_string(),
                    "2*r-lam".to_string(),
                    "1".to_string()
                ],
            ]
        );

        let whitney = FamilyParams {
            family: FamilyKind::Whitney,
            lam: None,
            r: Some(ParamValue::Num(Rational::one())),
            m: Some(Rational::from_int(2)),
            x: None,
        };
        let rows = triangle_strings(&whitney, 2).unwrap();
        assert_eq!(
            rows,
            vec![
                vec!["1".to_string()],
                vec!["1".to_string(), "1".to_string()],
                vec!["1".to_string(), "4".to_string(), "1".to_string()],
            ]
        );

        let classical = FamilyParams {
            family: FamilyKind::ClassicalStirling1,
            lam: None,
            r: None,
            m: None,
            x: None,
        };
        let rows = triangle_strings(&classical, 4).unwrap();
        assert_eq!(rows[4], vec!["0", "-6", "11", "-6", "1"]);
    }

    #[test]
    fn triangle_strings_numeric_lambda_stirling() {
        let params = FamilyParams {
            family: FamilyKind::LambdaStirling1,
            lam: Some(ParamValue::Num(Rational::one())),
            r: None,
            m: None,
            x: None,
        };
        let rows = triangle_strings(&params, 4).unwrap();
        assert_eq!(rows[4], vec!["0", "-6", "11", "-6", "1"]);
    }
}
