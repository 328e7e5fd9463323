use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigInt, Signed};

use super::ring::{rat, Rational, Ring};
use super::unipoly::{push_term, Degree, UniPoly};
use super::AlgebraError;

/// Exponent vector. Missing trailing entries count as zero, so monomials over
/// a variable list and over any extension of it compare consistently.
#[derive(Clone, Debug, Default)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn width(&self, o: &Monomial) -> usize {
        self.0.len().max(o.0.len())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        (0..self.width(o)).all(|i| self.exp(i) <= o.exp(i))
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial((0..self.width(o)).map(|i| o.exp(i) - self.exp(i)).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial((0..self.width(o)).map(|i| self.exp(i).max(o.exp(i))).collect())
    }

    pub fn coprime(&self, o: &Monomial) -> bool {
        (0..self.width(o)).all(|i| self.exp(i) == 0 || o.exp(i) == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial((0..self.width(o)).map(|i| self.exp(i) + o.exp(i)).collect())
    }

    fn padded(&self, n: usize) -> Monomial {
        Monomial((0..n.max(self.0.len())).map(|i| self.exp(i)).collect())
    }

    fn trimmed(&self) -> &[u32] {
        let end = self.0.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        &self.0[..end]
    }

    /// Render against a variable list, e.g. `k1^2*k3`.
    pub fn render(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(vars[i].clone()),
                _ => parts.push(format!("{}^{e}", vars[i])),
            }
        }
        parts.join("*")
    }
}

impl PartialEq for Monomial {
    fn eq(&self, o: &Self) -> bool {
        self.trimmed() == o.trimmed()
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.trimmed().hash(h);
    }
}

/// Graded lexicographic order with the first variable most significant.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            for i in 0..self.width(o) {
                match self.exp(i).cmp(&o.exp(i)) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Sparse multivariate polynomial over the rationals in a declared variable list.
///
/// Arithmetic between polynomials whose variable lists are prefixes of one another
/// takes place over the longer list; unrelated lists are a programming error.
#[derive(Clone)]
pub struct MultiPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, Rational>,
}

fn is_prefix(a: &[String], b: &[String]) -> bool {
    a.len() <= b.len() && a.iter().zip(b).all(|(x, y)| x == y)
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { vars: Arc::new(Vec::new()), terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::constant_in(&[], c)
    }

    pub fn constant_in(vars: &[String], c: Rational) -> Self {
        let mut p = MultiPoly { vars: Arc::new(vars.to_vec()), terms: BTreeMap::new() };
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    /// The `i`-th variable of `vars`.
    pub fn var(vars: &[String], i: usize) -> Self {
        let mut m = vec![0; vars.len()];
        m[i] = 1;
        Self::from_terms(vars, [(m, rat(1))])
    }

    pub fn var_named(vars: &[String], name: &str) -> Option<Self> {
        vars.iter().position(|v| v == name).map(|i| Self::var(vars, i))
    }

    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Self {
        let mut p = MultiPoly { vars: Arc::new(vars.to_vec()), terms: BTreeMap::new() };
        for (m, c) in terms {
            assert!(m.len() <= vars.len(), "exponent vector longer than variable list");
            p.add_term(Monomial(m).padded(vars.len()), c);
        }
        p
    }

    pub fn from_univariate(vars: &[String], i: usize, u: &UniPoly) -> Self {
        Self::from_terms(
            vars,
            u.terms().map(|(e, c)| {
                let mut m = vec![0; vars.len()];
                m[i] = e;
                (m, c.clone())
            }),
        )
    }

    /// Parse expressions such as `k1*k2 + 3*k3^2 - 1/2` over `vars`.
    pub fn parse(src: &str, vars: &[String]) -> Result<Self, AlgebraError> {
        let mut p = Parser { toks: tokenize(src)?, pos: 0, vars };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(AlgebraError::Parse(format!("trailing input in {src:?}")));
        }
        Ok(out.extend_vars(vars).expect("parsed over vars"))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// `self += c * m * f`; `f` must live over a prefix of `self`'s variables.
    pub(crate) fn add_scaled_shifted(&mut self, c: &Rational, m: &Monomial, f: &MultiPoly) {
        let n = self.vars.len();
        for (fm, fc) in &f.terms {
            self.add_term(fm.mul(m).padded(n), c * fc);
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Rational)> {
        self.terms.pop_last()
    }

    pub(crate) fn insert_term(&mut self, m: Monomial, c: Rational) {
        let n = self.vars.len();
        self.add_term(m.padded(n), c);
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Re-express over a variable list that extends the current one.
    pub fn extend_vars(&self, vars: &[String]) -> Result<Self, AlgebraError> {
        if !is_prefix(&self.vars, vars) {
            return Err(AlgebraError::IncompatibleVariables(self.vars.to_vec(), vars.to_vec()));
        }
        if self.vars.len() == vars.len() {
            return Ok(self.clone());
        }
        Ok(MultiPoly {
            vars: Arc::new(vars.to_vec()),
            terms: self.terms.iter().map(|(m, c)| (m.padded(vars.len()), c.clone())).collect(),
        })
    }

    fn unify(&self, o: &MultiPoly) -> Arc<Vec<String>> {
        if is_prefix(&self.vars, &o.vars) {
            o.vars.clone()
        } else if is_prefix(&o.vars, &self.vars) {
            self.vars.clone()
        } else {
            panic!("incompatible parameter lists {:?} and {:?}", self.vars, o.vars)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.terms.values().next_back().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.exp(i) > 0)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        let n = self.vars.len().max(m.0.len());
        let mut out = MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        if c.is_zero() {
            return out;
        }
        for (tm, tc) in &self.terms {
            out.terms.insert(tm.mul(m).padded(n), tc * c);
        }
        out
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn content(&self) -> Rational {
        let (g, l) = super::ring::content_parts(self.terms.values());
        if num::Zero::is_zero(&g) {
            return rat(1);
        }
        Rational::new(g, l)
    }

    /// Integer-primitive associate with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Evaluate with `values[i]` substituted for the `i`-th variable.
    pub fn eval<R: Ring>(&self, values: &[R]) -> R {
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = R::from_rational(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t * values[i].pow(e);
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// View as a univariate polynomial in variable `i` if no other variable occurs.
    pub fn as_univariate(&self, i: usize) -> Option<UniPoly> {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            if (0..m.0.len()).any(|j| j != i && m.exp(j) > 0) {
                return None;
            }
            terms.push((m.exp(i), c.clone()));
        }
        Some(UniPoly::from_terms(terms))
    }

    /// True when `self = c * other` for some nonzero rational `c`.
    pub fn is_associate_of(&self, other: &MultiPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.primitive() == other.primitive()
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, o: &Self) -> bool {
        let used_a = self.terms.keys().map(|m| m.trimmed().len()).max().unwrap_or(0);
        let used_b = o.terms.keys().map(|m| m.trimmed().len()).max().unwrap_or(0);
        let common = self.vars.iter().zip(o.vars.iter()).take_while(|(a, b)| a == b).count();
        used_a <= common
            && used_b <= common
            && self.terms.len() == o.terms.len()
            && self.terms.iter().zip(o.terms.iter()).all(|(a, b)| a == b)
    }
}

impl Eq for MultiPoly {}

impl Hash for MultiPoly {
    fn hash<H: Hasher>(&self, h: &mut H) {
        for (m, c) in &self.terms {
            m.hash(h);
            c.hash(h);
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            push_term(&mut out, i == 0, c, &m.render(&self.vars));
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let vars = self.unify(o);
        let n = vars.len();
        let mut r = MultiPoly { vars, terms: BTreeMap::new() };
        for (m, c) in self.terms.iter().chain(o.terms.iter()) {
            r.add_term(m.padded(n), c.clone());
        }
        r
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        let vars = self.unify(o);
        let n = vars.len();
        let mut r = MultiPoly { vars, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            r.add_term(m.padded(n), c.clone());
        }
        for (m, c) in &o.terms {
            r.add_term(m.padded(n), -c.clone());
        }
        r
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let vars = self.unify(o);
        let n = vars.len();
        let mut r = MultiPoly { vars, terms: BTreeMap::new() };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2).padded(n), c1 * c2);
            }
        }
        r
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&rat(-1))
    }
}

crate::algebra::forward_ops!(MultiPoly);

impl std::ops::AddAssign for MultiPoly {
    fn add_assign(&mut self, o: MultiPoly) {
        *self = &*self + &o;
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::constant(rat(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(q: &Rational) -> Self {
        MultiPoly::constant(q.clone())
    }
    fn scale(&self, q: &Rational) -> Self {
        MultiPoly::scale(self, q)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, AlgebraError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = chars[start..i].iter().collect::<String>().parse().expect("digits");
            let mut q = Rational::from_integer(num);
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                let s = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: BigInt = chars[s..i].iter().collect::<String>().parse().expect("digits");
                if num::Zero::is_zero(&den) {
                    return Err(AlgebraError::Parse("zero denominator".into()));
                }
                q /= Rational::from_integer(den);
            }
            toks.push(Tok::Num(q));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            toks.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            toks.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(AlgebraError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek_sym(&self, c: char) -> bool {
        self.toks.get(self.pos) == Some(&Tok::Sym(c))
    }

    fn expr(&mut self) -> Result<MultiPoly, AlgebraError> {
        let mut neg = false;
        if self.peek_sym('-') || self.peek_sym('+') {
            neg = self.peek_sym('-');
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.peek_sym('+') {
                self.pos += 1;
                acc = acc + self.term()?;
            } else if self.peek_sym('-') {
                self.pos += 1;
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, AlgebraError> {
        let mut acc = self.factor()?;
        while self.peek_sym('*') {
            self.pos += 1;
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, AlgebraError> {
        let base = self.atom()?;
        if self.peek_sym('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(Tok::Num(q)) if q.is_integer() && !q.is_negative() => {
                    let e: u32 = q
                        .to_integer()
                        .try_into()
                        .map_err(|_| AlgebraError::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(AlgebraError::Parse("expected exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, AlgebraError> {
        let tok = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Num(q)) => Ok(MultiPoly::constant_in(self.vars, q)),
            Some(Tok::Ident(name)) => MultiPoly::var_named(self.vars, &name)
                .ok_or_else(|| AlgebraError::Parse(format!("unknown variable {name}"))),
            Some(Tok::Sym('(')) => {
                let e = self.expr()?;
                if !self.peek_sym(')') {
                    return Err(AlgebraError::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            other => Err(AlgebraError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grlex_order() {
        let a = Monomial(vec![1, 1, 0]);
        let b = Monomial(vec![0, 0, 1]);
        let c = Monomial(vec![0, 2, 0]);
        assert!(a > b);
        assert!(a > c);
        assert!(Monomial(vec![1, 0]) == Monomial(vec![1, 0, 0]));
    }

    #[test]
    fn parse_and_print() {
        let v = vars(&["k1", "k2", "k3"]);
        let p = MultiPoly::parse("k1*k2*k3 - 1", &v).unwrap();
        assert_eq!(p.to_string(), "k1*k2*k3 - 1");
        let q = MultiPoly::parse("(k1 - 1)^2 + 1/2*k3", &v).unwrap();
        assert_eq!(q.to_string(), "k1^2 - 2*k1 + 1/2*k3 + 1");
        assert!(MultiPoly::parse("k4", &v).is_err());
    }

    #[test]
    fn prefix_variable_lists_mix() {
        let short = vars(&["k1"]);
        let long = vars(&["k1", "k2"]);
        let a = MultiPoly::var(&short, 0);
        let b = MultiPoly::var(&long, 1);
        let s = &a + &b;
        assert_eq!(s.vars(), &long[..]);
        assert_eq!(s - b, a);
        assert_eq!(MultiPoly::constant(rat(3)), MultiPoly::constant_in(&long, rat(3)));
    }

    #[test]
    fn primitive_normalizes_sign_and_content() {
        let v = vars(&["x"]);
        let p = MultiPoly::parse("-2/3*x + 4/3", &v).unwrap();
        assert_eq!(p.primitive().to_string(), "x - 2");
        assert!(p.is_associate_of(&MultiPoly::parse("x - 2", &v).unwrap()));
    }
}
