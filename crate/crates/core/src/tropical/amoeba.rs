//! Boundary curves of the amoeba of a line `a·z1 + b·z2 + c = 0`.
//!
//! This is the only floating-point code in the crate; it feeds figures only.

use std::fmt::Write as _;

use num::{Signed, ToPrimitive, Zero};

use super::TropicalError;
use crate::algebra::Rational;

#[derive(Clone, Debug, PartialEq)]
pub enum AmoebaKind {
    /// `z1 + z2 + 1 = 0`, the line through `(-1, 0)` and `(0, -1)`.
    Line,
    Scaled { a: Rational, b: Rational, c: Rational },
}

#[derive(Clone, Debug, PartialEq)]
pub enum AmoebaBase {
    Natural,
    /// Logarithm base `t > 1`; the picture shrinks towards the tropical line as `t` grows.
    T(Rational),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Branch {
    /// `|z2| - |z1| = 1`
    Upper,
    /// `|z1| - |z2| = 1`
    Right,
    /// `|z1| + |z2| = 1`
    Lower,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::Upper, Branch::Right, Branch::Lower];

    pub fn name(self) -> &'static str {
        match self {
            Branch::Upper => "upper",
            Branch::Right => "right",
            Branch::Lower => "lower",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchSamples {
    pub branch: Branch,
    pub points: Vec<(f64, f64)>,
}

fn log_abs(q: &Rational) -> Result<f64, TropicalError> {
    if q.is_zero() {
        return Err(TropicalError::Domain("zero coefficient".into()));
    }
    let f = q.abs().to_f64().ok_or_else(|| TropicalError::Domain("coefficient out of range".into()))?;
    Ok(f.ln())
}

/// `(shift_x, shift_y, scale)`: the amoeba of `kind` in base `base` is the unit
/// amoeba translated by the shifts (natural logs), then divided by `scale`.
fn geometry(kind: &AmoebaKind, base: &AmoebaBase) -> Result<(f64, f64, f64), TropicalError> {
    let (sx, sy) = match kind {
        AmoebaKind::Line => (0.0, 0.0),
        AmoebaKind::Scaled { a, b, c } => {
            let lc = log_abs(c)?;
            (lc - log_abs(a)?, lc - log_abs(b)?)
        }
    };
    let scale = match base {
        AmoebaBase::Natural => 1.0,
        AmoebaBase::T(t) => {
            if t <= &Rational::from_integer(1.into()) {
                return Err(TropicalError::Domain(format!("base t must exceed 1, got {t}")));
            }
            log_abs(t)?
        }
    };
    Ok((sx, sy, scale))
}

fn unit_branch(branch: Branch, x: f64) -> Result<f64, TropicalError> {
    match branch {
        Branch::Upper => Ok(x.exp().ln_1p()),
        Branch::Right if x > 0.0 => Ok(x.exp_m1().ln()),
        Branch::Lower if x < 0.0 => Ok((-x.exp_m1()).ln()),
        _ => Err(TropicalError::Domain(format!("{} branch undefined at x = {x}", branch.name()))),
    }
}

/// The `y` value of `branch` above the (rescaled) abscissa `x`.
pub fn boundary_point(kind: &AmoebaKind, base: &AmoebaBase, branch: Branch, x: f64) -> Result<f64, TropicalError> {
    let (sx, sy, scale) = geometry(kind, base)?;
    Ok((unit_branch(branch, x * scale - sx)? + sy) / scale)
}

/// `count` evenly spaced abscissae over `x_range`, keeping those where each
/// branch is defined.
pub fn amoeba_boundary_samples(
    kind: &AmoebaKind,
    base: &AmoebaBase,
    x_range: (f64, f64),
    count: usize,
) -> Result<Vec<BranchSamples>, TropicalError> {
    if count < 2 {
        return Err(TropicalError::Domain("need at least two samples".into()));
    }
    let (lo, hi) = x_range;
    if !(lo < hi) {
        return Err(TropicalError::Domain(format!("empty range [{lo}, {hi}]")));
    }
    geometry(kind, base)?;
    let step = (hi - lo) / (count - 1) as f64;
    Ok(Branch::ALL
        .iter()
        .map(|&branch| BranchSamples {
            branch,
            points: (0..count)
                .map(|i| lo + step * i as f64)
                .filter_map(|x| boundary_point(kind, base, branch, x).ok().map(|y| (x, y)))
                .filter(|(_, y)| y.is_finite())
                .collect(),
        })
        .collect())
}

/// `branch,x,y` lines with a header.
pub fn samples_to_csv(samples: &[BranchSamples]) -> String {
    let mut out = String::from("branch,x,y\n");
    for s in samples {
        for (x, y) in &s.points {
            let _ = writeln!(out, "{},{x},{y}", s.branch.name());
        }
    }
    out
}
