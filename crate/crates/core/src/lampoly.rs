//! Sparse bivariate polynomials in the formal symbols `lam` and `r` over the
//! rationals.
//!
//! Verifying an identity here proves it for every real choice of the
//! parameters, since all the identities involved are polynomial in both
//! symbols. Terms are keyed by exponent pairs; no zero coefficient is ever
//! stored, so equality is plain coefficient-wise comparison.
//!
//! The canonical text form orders terms by total degree descending, breaking
//! ties toward the lower `lam`-exponent, e.g. `2*r-lam` and `r^2-lam*r`.
//! [`LamRPoly::from_str`] accepts exactly that form (plus arbitrary term
//! order), so rendered values round-trip.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::rational::Rational;
use crate::Error;

/// Exponent pair: `lam^i * r^j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Mono {
    lam: u32,
    r: u32,
}

impl Mono {
    fn total(&self) -> u32 {
        self.lam + self.r
    }
}

// Keys iterate in canonical print order: total degree descending, then
// lam-exponent ascending.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .total()
            .cmp(&self.total())
            .then(self.lam.cmp(&other.lam))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `lam` and `r` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LamRPoly {
    terms: BTreeMap<Mono, Rational>,
}

impl LamRPoly {
    pub fn zero() -> Self {
        LamRPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Mono { lam: 0, r: 0 }, c);
        p
    }

    /// The symbol `lam`.
    pub fn sym_lam() -> Self {
        let mut p = Self::zero();
        p.add_term(Mono { lam: 1, r: 0 }, Rational::one());
        p
    }

    /// The symbol `r`.
    pub fn sym_r() -> Self {
        let mut p = Self::zero();
        p.add_term(Mono { lam: 0, r: 1 }, Rational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True when the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .get(&Mono { lam: 0, r: 0 })
                .cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        LamRPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.clone() * q.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }

    /// Substitute `lam` and `r`, returning the exact rational value.
    pub fn eval(&self, lam: &Rational, r: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc = acc + c.clone() * lam.pow(m.lam) * r.pow(m.r);
        }
        acc
    }
}

impl Add for LamRPoly {
    type Output = LamRPoly;
    fn add(self, rhs: LamRPoly) -> LamRPoly {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.add_term(m, c);
        }
        out
    }
}

impl Sub for LamRPoly {
    type Output = LamRPoly;
    fn sub(self, rhs: LamRPoly) -> LamRPoly {
        self + (-rhs)
    }
}

impl Neg for LamRPoly {
    type Output = LamRPoly;
    fn neg(self) -> LamRPoly {
        LamRPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for LamRPoly {
    type Output = LamRPoly;
    fn mul(self, rhs: LamRPoly) -> LamRPoly {
        let mut out = LamRPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m = Mono {
                    lam: ma.lam + mb.lam,
                    r: ma.r + mb.r,
                };
                out.add_term(m, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl fmt::Display for LamRPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.total() == 0 {
                factors.push(mag.to_string());
            }
            match m.lam {
                0 => {}
                1 => factors.push("lam".into()),
                e => factors.push(format!("lam^{e}")),
            }
            match m.r {
                0 => {}
                1 => factors.push("r".into()),
                e => factors.push(format!("r^{e}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for LamRPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::ParsePoly(s.to_string());
        if s.is_empty() {
            return Err(bad());
        }
        let mut out = LamRPoly::zero();
        // Split into signed terms; '-' only appears as a sign or separator.
        let mut rest = s;
        let mut sign = 1i64;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        }
        loop {
            let split = rest.find(['+', '-']);
            let (term, tail) = match split {
                Some(i) => (&rest[..i], Some((rest.as_bytes()[i], &rest[i + 1..]))),
                None => (rest, None),
            };
            let (mono, coeff) = parse_term(term).ok_or_else(bad)?;
            out.add_term(mono, if sign < 0 { -coeff } else { coeff });
            match tail {
                None => break,
                Some((sep, t)) => {
                    if t.is_empty() {
                        return Err(bad());
                    }
                    sign = if sep == b'-' { -1 } else { 1 };
                    rest = t;
                }
            }
        }
        Ok(out)
    }
}

/// One unsigned term: `[p[/q]*][lam[^i]][*r[^j]]` with at least one factor.
fn parse_term(term: &str) -> Option<(Mono, Rational)> {
    if term.is_empty() {
        return None;
    }
    let mut coeff = Rational::one();
    let mut saw_coeff = false;
    let mut mono = Mono { lam: 0, r: 0 };
    for (i, factor) in term.split('*').enumerate() {
        if let Some(rest) = factor.strip_prefix("lam") {
            if mono.lam != 0 {
                return None;
            }
            mono.lam = parse_exp(rest)?;
        } else if let Some(rest) = factor.strip_prefix('r') {
            if mono.r != 0 {
                return None;
            }
            mono.r = parse_exp(rest)?;
        } else {
            if i != 0 || saw_coeff {
                return None;
            }
            coeff = factor.parse().ok()?;
            saw_coeff = true;
        }
    }
    Some((mono, coeff))
}

fn parse_exp(rest: &str) -> Option<u32> {
    if rest.is_empty() {
        return Some(1);
    }
    let digits = rest.strip_prefix('^')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
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

    fn int(n: i64) -> LamRPoly {
        LamRPoly::constant(Rational::from_int(n))
    }

    #[test]
    fn canonical_rendering() {
        // 2r - lam
        let p = int(2) * r() - lam();
        assert_eq!(p.to_string(), "2*r-lam");
        // r^2 - lam*r
        let q = r() * (r() - lam());
        assert_eq!(q.to_string(), "r^2-lam*r");
        assert_eq!(LamRPoly::zero().to_string(), "0");
        assert_eq!(int(-6) * lam().pow(3), "-6*lam^3".parse().unwrap());
        assert_eq!(
            (lam().pow(2).scale(&Rational::ratio(1, 3))).to_string(),
            "1/3*lam^2"
        );
        let c = r() - LamRPoly::constant(Rational::ratio(1, 2));
        assert_eq!(c.to_string(), "r-1/2");
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "2*r-lam",
            "r^2-lam*r",
            "0",
            "-6*lam^3",
            "1/3*lam^2",
            "r-1/2",
            "3*r^2-6*lam*r+2*lam^2",
            "-3/4",
            "lam*r",
        ] {
            let p: LamRPoly = s.parse().unwrap();
            assert_eq!(p.to_string(), s, "round trip through {s}");
        }
        // Non-canonical term order still parses to the same value.
        let a: LamRPoly = "-lam+2*r".parse().unwrap();
        let b: LamRPoly = "2*r-lam".parse().unwrap();
        assert_eq!(a, b);
        assert!("2**r".parse::<LamRPoly>().is_err());
        assert!("lam^".parse::<LamRPoly>().is_err());
        assert!("x".parse::<LamRPoly>().is_err());
        assert!("".parse::<LamRPoly>().is_err());
        assert!("1+".parse::<LamRPoly>().is_err());
    }

    #[test]
    fn no_zero_terms_stored() {
        let p = lam() - lam();
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        let q = (lam() + r()) * (lam() - r()) - (lam().pow(2) - r().pow(2));
        assert!(q.is_zero());
    }

    #[test]
    fn eval_examples() {
        // lam^2 at lam=1/2 -> 1/4
        let p = lam().pow(2);
        assert_eq!(
            p.eval(&Rational::ratio(1, 2), &Rational::zero()),
            Rational::ratio(1, 4)
        );
        // 2r - lam at lam=1, r=3 -> 5
        let q = int(2) * r() - lam();
        assert_eq!(
            q.eval(&Rational::one(), &Rational::from_int(3)),
            Rational::from_int(5)
        );
        assert_eq!(
            LamRPoly::zero().eval(&Rational::ratio(7, 3), &Rational::from_int(-2)),
            Rational::zero()
        );
    }

    #[test]
    fn constant_detection() {
        assert_eq!(int(5).as_constant(), Some(Rational::from_int(5)));
        assert_eq!(LamRPoly::zero().as_constant(), Some(Rational::zero()));
        assert_eq!(lam().as_constant(), None);
    }
}
