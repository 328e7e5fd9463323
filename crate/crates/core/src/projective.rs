//! Points and lines of the projective plane over an exact coefficient ring.

use std::fmt;

use num::Signed;
use thiserror::Error;

use crate::algebra::linear::{kernel, solve_combination};
use crate::algebra::ring::content_parts;
use crate::algebra::{Field, Mat3, MultiPoly, QuotientElem, Rational, Ring, UniPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectiveError {
    #[error("coincident lines have no unique meet")]
    CoincidentLines,
    #[error("coincident points have no unique join")]
    CoincidentPoints,
    #[error("zero triple is not a projective element")]
    ZeroTriple,
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

/// Coefficient rings usable for homogeneous coordinates.
pub trait ProjRing: Ring {
    /// Ring tag used in serialized files.
    const TAG: &'static str;

    /// Canonical representative of the scalar class of `v`.
    fn normalize(v: &[Self; 3]) -> [Self; 3];
}

fn divide_by_first<F: Field>(v: &[F; 3]) -> [F; 3] {
    match v.iter().find(|x| !x.is_zero()) {
        Some(p) => {
            let inv = p.inv().expect("nonzero");
            std::array::from_fn(|i| v[i].clone() * inv.clone())
        }
        None => v.clone(),
    }
}

impl ProjRing for Rational {
    const TAG: &'static str = "rational";
    fn normalize(v: &[Self; 3]) -> [Self; 3] {
        divide_by_first(v)
    }
}

impl ProjRing for QuotientElem {
    const TAG: &'static str = "quotient-k2";
    fn normalize(v: &[Self; 3]) -> [Self; 3] {
        divide_by_first(v)
    }
}

impl ProjRing for UniPoly {
    const TAG: &'static str = "unipoly-t";
    fn normalize(v: &[Self; 3]) -> [Self; 3] {
        let (g, l) = content_parts(v.iter().flat_map(|p| p.terms().map(|(_, c)| c)));
        let Some(first) = v.iter().find(|p| !p.is_zero()) else {
            return v.clone();
        };
        let mut c = Rational::new(g, l);
        if first.leading_coeff().is_negative() {
            c = -c;
        }
        let inv = c.recip();
        std::array::from_fn(|i| v[i].scale(&inv))
    }
}

impl ProjRing for MultiPoly {
    const TAG: &'static str = "multipoly";
    fn normalize(v: &[Self; 3]) -> [Self; 3] {
        let (g, l) = content_parts(v.iter().flat_map(|p| p.terms().map(|(_, c)| c)));
        let Some(first) = v.iter().find(|p| !p.is_zero()) else {
            return v.clone();
        };
        let mut c = Rational::new(g, l);
        if first.leading_coeff().is_negative() {
            c = -c;
        }
        let inv = c.recip();
        std::array::from_fn(|i| v[i].scale(&inv))
    }
}

/// Point `(a:b:c)`.
#[derive(Clone, PartialEq, Debug)]
pub struct ProjPoint<R>(pub [R; 3]);

/// Line `[d:e:f]`, the locus `dx + ey + fz = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct ProjLine<R>(pub [R; 3]);

macro_rules! triple_common {
    ($t:ident) => {
        impl<R: ProjRing> $t<R> {
            pub fn new(v: [R; 3]) -> Result<Self, ProjectiveError> {
                if v.iter().all(Ring::is_zero) {
                    return Err(ProjectiveError::ZeroTriple);
                }
                Ok($t(v))
            }

            pub fn coords(&self) -> &[R; 3] {
                &self.0
            }

            pub fn canonical(&self) -> Self {
                $t(R::normalize(&self.0))
            }

            /// Equal up to a nonzero scalar.
            pub fn projective_eq(&self, o: &Self) -> bool {
                proportional(&self.0, &o.0)
            }

            pub fn map<S: ProjRing>(&self, f: impl Fn(&R) -> S) -> $t<S> {
                $t(std::array::from_fn(|i| f(&self.0[i])))
            }
        }

        impl<R: ProjRing> fmt::Display for $t<R> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let [a, b, c] = &self.0;
                write_triple(f, stringify!($t), a, b, c)
            }
        }
    };
}

fn write_triple<R: fmt::Display>(f: &mut fmt::Formatter<'_>, kind: &str, a: &R, b: &R, c: &R) -> fmt::Result {
    if kind == "ProjPoint" {
        write!(f, "({a} : {b} : {c})")
    } else {
        write!(f, "[{a} : {b} : {c}]")
    }
}

triple_common!(ProjPoint);
triple_common!(ProjLine);

impl<R: ProjRing> ProjPoint<R> {
    pub fn from_ints(v: [i64; 3]) -> Self {
        ProjPoint(v.map(R::from_int))
    }
}

impl<R: ProjRing> ProjLine<R> {
    pub fn from_ints(v: [i64; 3]) -> Self {
        ProjLine(v.map(R::from_int))
    }
}

/// All 2x2 minors vanish and neither triple is zero.
pub fn proportional<R: Ring>(a: &[R; 3], b: &[R; 3]) -> bool {
    let nz = |v: &[R; 3]| v.iter().any(|x| !x.is_zero());
    nz(a) && nz(b) && cross(a, b).iter().all(Ring::is_zero)
}

pub fn cross<R: Ring>(a: &[R; 3], b: &[R; 3]) -> [R; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn dot<R: Ring>(a: &[R; 3], b: &[R; 3]) -> R {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub fn incident<R: ProjRing>(p: &ProjPoint<R>, l: &ProjLine<R>) -> bool {
    dot(&p.0, &l.0).is_zero()
}

/// Intersection point of two distinct lines.
pub fn meet<R: ProjRing>(l1: &ProjLine<R>, l2: &ProjLine<R>) -> Result<ProjPoint<R>, ProjectiveError> {
    let v = cross(&l1.0, &l2.0);
    if v.iter().all(Ring::is_zero) {
        return Err(ProjectiveError::CoincidentLines);
    }
    Ok(ProjPoint(R::normalize(&v)))
}

/// Line through two distinct points.
pub fn join<R: ProjRing>(p1: &ProjPoint<R>, p2: &ProjPoint<R>) -> Result<ProjLine<R>, ProjectiveError> {
    let v = cross(&p1.0, &p2.0);
    if v.iter().all(Ring::is_zero) {
        return Err(ProjectiveError::CoincidentPoints);
    }
    Ok(ProjLine(R::normalize(&v)))
}

/// Matrix `S` acting on dual coordinates with `S·l11 ∝ [0:0:1]`, `S·l12 ∝ [1:1:1]`,
/// `S·l21 ∝ [1:0:0]` and `S·l22 ∝ [0:1:0]`.
pub fn standardize_quadrilateral(
    l11: &ProjLine<Rational>,
    l12: &ProjLine<Rational>,
    l21: &ProjLine<Rational>,
    l22: &ProjLine<Rational>,
) -> Result<Mat3<Rational>, ProjectiveError> {
    let cols = [&l21.0, &l22.0, &l11.0];
    let b = Mat3::from_fn(|i, j| cols[j][i].clone());
    let degenerate = || ProjectiveError::Degenerate("three of the four lines are concurrent".into());
    let binv = b.inverse().ok_or_else(degenerate)?;
    let lambda = binv.mul_vec(&l12.0);
    if lambda.iter().any(Ring::is_zero) {
        return Err(degenerate());
    }
    let scaled = Mat3::from_fn(|i, j| b.rows[i][j].clone() * lambda[j].clone());
    Ok(scaled.inverse().expect("product of invertible matrices"))
}

/// Coefficients of the product of linear forms, indexed by exponent triples of
/// total degree `d` in lexicographic order (`x^d` first).
pub fn expand_product<F: Field>(lines: &[ProjLine<F>]) -> Vec<F> {
    let d = lines.len();
    let mut poly: Vec<([usize; 3], F)> = vec![([0, 0, 0], F::one())];
    for l in lines {
        let mut next: Vec<([usize; 3], F)> = Vec::new();
        for (e, c) in &poly {
            for v in 0..3 {
                if l.0[v].is_zero() {
                    continue;
                }
                let mut e2 = *e;
                e2[v] += 1;
                let term = c.clone() * l.0[v].clone();
                match next.iter_mut().find(|(x, _)| *x == e2) {
                    Some((_, acc)) => *acc = acc.clone() + term,
                    None => next.push((e2, term)),
                }
            }
        }
        poly = next;
    }
    degree_monomials(d)
        .into_iter()
        .map(|e| poly.iter().find(|(x, _)| *x == e).map_or_else(F::zero, |(_, c)| c.clone()))
        .collect()
}

fn degree_monomials(d: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// `(λ:μ)` with `C ∝ λA + μB`, where `A`, `B`, `C` are the products of the three
/// classes of lines, or `None` when `C` is outside the pencil.
pub fn pencil_member(
    class_a: &[ProjLine<Rational>],
    class_b: &[ProjLine<Rational>],
    class_c: &[ProjLine<Rational>],
) -> Option<(Rational, Rational)> {
    pencil_member_in(class_a, class_b, class_c)
}

/// [`pencil_member`] over any exact field.
pub fn pencil_member_in<F: Field>(
    class_a: &[ProjLine<F>],
    class_b: &[ProjLine<F>],
    class_c: &[ProjLine<F>],
) -> Option<(F, F)> {
    if class_a.len() != class_b.len() || class_a.len() != class_c.len() {
        return None;
    }
    let a = expand_product(class_a);
    let b = expand_product(class_b);
    let c = expand_product(class_c);
    let (lam, mu) = solve_pair(&a, &b, &c)?;
    let first = if lam.is_zero() { mu.clone() } else { lam.clone() };
    let inv = first.inv()?;
    Some((lam * inv.clone(), mu * inv))
}

fn solve_pair<F: Field>(a: &[F], b: &[F], c: &[F]) -> Option<(F, F)> {
    // Gaussian elimination on the n x 2 system [a b] (λ, μ)^T = c.
    let n = a.len();
    let mut rows: Vec<[F; 3]> = (0..n).map(|i| [a[i].clone(), b[i].clone(), c[i].clone()]).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..2 {
        let Some(p) = (r..n).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..n {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in 0..3 {
                    rows[i][j] = rows[i][j].clone() - f.clone() * rows[r][j].clone();
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[2].is_zero()) {
        return None;
    }
    let mut x = [F::zero(), F::zero()];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i][2].clone();
    }
    let [lam, mu] = x;
    if lam.is_zero() && mu.is_zero() {
        return None;
    }
    Some((lam, mu))
}

/// Point spanning the kernel of two independent rational forms.
pub fn common_zero(a: &[Rational; 3], b: &[Rational; 3]) -> Option<[Rational; 3]> {
    let k = kernel(vec![a.to_vec(), b.to_vec()], 3);
    (k.len() == 1).then(|| [k[0][0].clone(), k[0][1].clone(), k[0][2].clone()])
}

/// Coefficients `(α, β)` with `v = α·u + β·w`, if `v` lies in their span.
pub fn span_coefficients(u: &[Rational; 3], w: &[Rational; 3], v: &[Rational; 3]) -> Option<(Rational, Rational)> {
    let x = solve_combination(&[u.to_vec(), w.to_vec()], v)?;
    Some((x[0].clone(), x[1].clone()))
}
