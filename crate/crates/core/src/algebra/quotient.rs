use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::ring::{rat, Field, Rational, Ring};
use super::unipoly::push_term;

/// Element `a + b*k` of the field Q[k]/(k^2 - k + 1).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuotientElem {
    pub a: Rational,
    pub b: Rational,
}

impl QuotientElem {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuotientElem { a, b }
    }

    /// The generator `k`.
    pub fn k() -> Self {
        QuotientElem { a: rat(0), b: rat(1) }
    }

    /// The nontrivial automorphism `k -> 1 - k`.
    pub fn conjugate(&self) -> Self {
        QuotientElem { a: &self.a + &self.b, b: -self.b.clone() }
    }

    /// `(a + bk)(a + b - bk) = a^2 + ab + b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a + &self.a * &self.b + &self.b * &self.b
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        if !self.a.is_zero() {
            push_term(&mut out, true, &self.a, "");
            first = false;
        }
        if !self.b.is_zero() {
            push_term(&mut out, first, &self.b, var);
        }
        out
    }
}

impl fmt::Display for QuotientElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("k"))
    }
}

impl Add for &QuotientElem {
    type Output = QuotientElem;
    fn add(self, o: &QuotientElem) -> QuotientElem {
        QuotientElem { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl Sub for &QuotientElem {
    type Output = QuotientElem;
    fn sub(self, o: &QuotientElem) -> QuotientElem {
        QuotientElem { a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl Mul for &QuotientElem {
    type Output = QuotientElem;
    fn mul(self, o: &QuotientElem) -> QuotientElem {
        let bd = &self.b * &o.b;
        QuotientElem {
            a: &self.a * &o.a - &bd,
            b: &self.a * &o.b + &self.b * &o.a + bd,
        }
    }
}

impl Neg for &QuotientElem {
    type Output = QuotientElem;
    fn neg(self) -> QuotientElem {
        QuotientElem { a: -self.a.clone(), b: -self.b.clone() }
    }
}

crate::algebra::forward_ops!(QuotientElem);

impl Ring for QuotientElem {
    fn zero() -> Self {
        QuotientElem { a: rat(0), b: rat(0) }
    }
    fn one() -> Self {
        QuotientElem { a: rat(1), b: rat(0) }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn from_rational(q: &Rational) -> Self {
        QuotientElem { a: q.clone(), b: rat(0) }
    }
    fn scale(&self, q: &Rational) -> Self {
        QuotientElem { a: &self.a * q, b: &self.b * q }
    }
}

impl Field for QuotientElem {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm().recip();
        Some(self.conjugate().scale(&n))
    }
}
