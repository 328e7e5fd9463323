//! Tropicalization of lines and points under a one-parameter degeneration.

mod amoeba;
mod classify;
mod svg;

pub use amoeba::{
    amoeba_boundary_samples, boundary_point, samples_to_csv, AmoebaBase, AmoebaKind, Branch, BranchSamples,
};
pub use classify::{
    classify_line_symbolic, classify_point_symbolic, point_line_table, Flat, LinearForm, PointLineTable,
    SymbolicClass, TableRow, LINE_NAMES, POINT_NAMES,
};
pub use svg::{render_amoeba_svg, render_tropical_svg};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{Mat3, Rational, UniPoly};
use crate::projective::{ProjLine, ProjPoint};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TropicalError {
    #[error("coordinate {0} of the transformed triple is the zero polynomial; the tropical image is undefined")]
    VanishingCoordinate(usize),
    #[error("domain error: {0}")]
    Domain(String),
}

/// Integer point of the tropical plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TropPoint {
    pub x: i64,
    pub y: i64,
}

pub const fn tp(x: i64, y: i64) -> TropPoint {
    TropPoint { x, y }
}

impl fmt::Display for TropPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Tropical line: three rays (west, south, north-east) from its center.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TropLine {
    pub center: TropPoint,
}

fn degrees(v: &[UniPoly; 3]) -> Result<[i64; 3], TropicalError> {
    let mut out = [0i64; 3];
    for (i, p) in v.iter().enumerate() {
        out[i] = i64::from(p.degree().finite().ok_or(TropicalError::VanishingCoordinate(i))?);
    }
    Ok(out)
}

fn embed(v: &[Rational; 3]) -> [UniPoly; 3] {
    std::array::from_fn(|i| UniPoly::constant(v[i].clone()))
}

/// Center `(deg h − deg f, deg h − deg g)` where `(f, g, h) = m·l`.
pub fn trop_line_center(l: &ProjLine<Rational>, m: &Mat3<UniPoly>) -> Result<TropPoint, TropicalError> {
    let [f, g, h] = degrees(&m.mul_vec(&embed(&l.0)))?;
    Ok(tp(h - f, h - g))
}

/// Location `(deg P1 − deg P3, deg P2 − deg P3)` where `P = cof(m)·p`.
///
/// Points transform contragrediently to dual coordinates, so the matrix applied
/// is the cofactor matrix `adj(m)ᵀ`; this keeps `P·(m·l) = det(m)·(p·l)`.
pub fn trop_point_location(p: &ProjPoint<Rational>, m: &Mat3<UniPoly>) -> Result<TropPoint, TropicalError> {
    let [a, b, c] = degrees(&m.cofactor_matrix().mul_vec(&embed(&p.0)))?;
    Ok(tp(a - c, b - c))
}

/// `max(x − cx, y − cy, 0)` is attained at least twice.
pub fn trop_contains(line: &TropLine, pt: &TropPoint) -> bool {
    let v = [pt.x - line.center.x, pt.y - line.center.y, 0];
    let m = *v.iter().max().expect("three values");
    v.iter().filter(|&&x| x == m).count() >= 2
}

/// Candidates whose tropical line passes through `pt`, in input order.
pub fn centers_through(pt: &TropPoint, candidates: &[TropPoint]) -> Vec<TropPoint> {
    candidates.iter().copied().filter(|c| trop_contains(&TropLine { center: *c }, pt)).collect()
}

/// The degeneration `T` used for the (4,4) and (4,3) arguments.
pub fn degeneration_t() -> Mat3<UniPoly> {
    let u = UniPoly::from_int_terms;
    Mat3::new([
        [u(&[(1, 1), (2, -1)]), u(&[(2, 1), (4, -1)]), u(&[(4, 1)])],
        [u(&[(3, 1), (2, 1)]), u(&[(0, 1)]), u(&[(3, -1)])],
        [u(&[(2, 1)]), u(&[(5, 1)]), u(&[(0, 1)])],
    ])
}

/// The degeneration used for the worked (3,2)-net.
pub fn degeneration_32() -> Mat3<UniPoly> {
    let u = UniPoly::from_int_terms;
    Mat3::new([
        [u(&[(1, 1)]), u(&[(2, 1)]), u(&[(4, 1)])],
        [u(&[(3, 1)]), u(&[(1, 1)]), u(&[(2, 1)])],
        [u(&[(2, 1)]), u(&[(5, 1)]), u(&[(0, 1)])],
    ])
}
