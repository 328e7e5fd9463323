use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::One;

use super::ring::{fmt_rational, rat, Rational, Ring};
use super::AlgebraError;

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Sparse univariate polynomial in `t` over the rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    terms: BTreeMap<u32, Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, e: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(rat(1), 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Integer coefficients given as `(exponent, coefficient)` pairs.
    pub fn from_int_terms(terms: &[(u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    fn add_term(&mut self, e: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.degree(), Degree::NegInfinity | Degree::Finite(0))
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |&e| Degree::Finite(e))
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms.values().next_back().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, e: u32) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn eval<R: Ring>(&self, x: &R) -> R {
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            acc = acc + R::from_rational(c) * x.pow(*e);
        }
        acc
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect() }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly), AlgebraError> {
        let dd = d.degree().finite().ok_or(AlgebraError::DivisionByZero)?;
        let lc = d.leading_coeff();
        let mut q = UniPoly::zero();
        let mut r = self.clone();
        while let Some(rd) = r.degree().finite() {
            if rd < dd {
                break;
            }
            let c = r.leading_coeff() / &lc;
            let m = UniPoly::monomial(c, rd - dd);
            r = &r - &(&m * d);
            q = &q + &m;
        }
        Ok((q, r))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        self.ext_gcd(other).0
    }

    /// Returns `(g, s, u)` with `s*self + u*other = g` and `g` monic (or zero).
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::constant(rat(1)), UniPoly::zero());
        let (mut u0, mut u1) = (UniPoly::zero(), UniPoly::constant(rat(1)));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s2 = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s2);
            let u2 = &u0 - &(&q * &u1);
            u0 = std::mem::replace(&mut u1, u2);
        }
        if r0.is_zero() {
            return (r0, s0, u0);
        }
        let inv = r0.leading_coeff().recip();
        (r0.scale(&inv), s0.scale(&inv), u0.scale(&inv))
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::from_terms(
            self.terms
                .iter()
                .filter(|(e, _)| **e > 0)
                .map(|(e, c)| (e - 1, c * rat(i64::from(*e)))),
        )
    }

    /// Format with a chosen variable name, terms in increasing degree.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            push_term(&mut out, i == 0, c, &mono);
        }
        out
    }
}

/// Append `c*mono` to a sum being printed.
pub(crate) fn push_term(out: &mut String, first: bool, c: &Rational, mono: &str) {
    let neg = c < &Rational::zero();
    let a = if neg { -c.clone() } else { c.clone() };
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if mono.is_empty() {
        out.push_str(&fmt_rational(&a));
    } else if a.is_one() {
        out.push_str(mono);
    } else {
        out.push_str(&fmt_rational(&a));
        out.push('*');
        out.push_str(mono);
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        let mut r = UniPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

crate::algebra::forward_ops!(UniPoly);

impl Ring for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::constant(rat(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(q: &Rational) -> Self {
        UniPoly::constant(q.clone())
    }
    fn scale(&self, q: &Rational) -> Self {
        UniPoly::scale(self, q)
    }
}

