//! Polynomial incidence conditions on the parameters of a skeleton.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use super::{Hypothesis, NetSkeleton, ProverError};
use crate::algebra::MultiPoly;
use crate::nets::{AbstractNet, LineId, PointId};
use crate::projective::{cross, dot, ProjRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EquationTag {
    /// `points[2]` lies on the join of `points[0]` and `points[1]`; all three are on `line`.
    Collinear { line: LineId, points: [PointId; 3] },
    /// `point` lies on `line`.
    Incidence { point: PointId, line: LineId },
}

impl fmt::Display for EquationTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EquationTag::Collinear { line, points: [a, b, c] } => write!(f, "{c} on {line} = {a} v {b}"),
            EquationTag::Incidence { point, line } => write!(f, "{point} on {line}"),
        }
    }
}

/// Coordinates of a line or point together with how they were obtained.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivedItem {
    pub coords: [MultiPoly; 3],
    pub origin: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintSystem {
    pub net: AbstractNet,
    pub vars: Vec<String>,
    /// Each polynomial must vanish.
    pub equations: Vec<MultiPoly>,
    pub tags: Vec<EquationTag>,
    pub nonvanishing: Vec<Hypothesis>,
    pub lines: BTreeMap<LineId, DerivedItem>,
    pub points: BTreeMap<PointId, DerivedItem>,
}

impl ConstraintSystem {
    /// Parameters that occur in no equation.
    pub fn unused_parameters(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.equations.iter().any(|e| e.uses_var(*i)))
            .map(|(_, v)| v.clone())
            .collect()
    }

    /// Index of an equation equal to `p` up to a nonzero scalar.
    pub fn find_associate(&self, p: &MultiPoly) -> Option<usize> {
        self.equations.iter().position(|e| e.is_associate_of(p))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (e, t) in self.equations.iter().zip(&self.tags) {
            out.push_str(&format!("{e} = 0    [{t}]\n"));
        }
        out
    }
}

fn is_zero3(v: &[MultiPoly; 3]) -> bool {
    v.iter().all(MultiPoly::is_zero)
}

fn render3(v: &[MultiPoly; 3]) -> String {
    v.iter().map(|p| p.to_string()).join(" : ")
}

/// Complete the skeleton by meets and joins in the parameter ring and collect
/// one equation per independent incidence left over.
///
/// Unknown points on two known lines are their meet; the skeleton's own family
/// for a point is used only when no meet is available. Unknown lines are joins
/// of their first two known points. Every three known points of a line give a
/// collinearity determinant, and every known point on a known line its
/// incidence product; equations equal up to a scalar are kept once.
pub fn generate_constraints(s: &NetSkeleton, net: &AbstractNet) -> Result<ConstraintSystem, ProverError> {
    if *net != s.net {
        return Err(ProverError::Inconsistent {
            item: "net".into(),
            reason: "the skeleton was built for a different incidence structure".into(),
        });
    }
    let vars = s.parameters.clone();
    let mut lines: BTreeMap<LineId, DerivedItem> = s
        .lines
        .iter()
        .map(|(id, e)| (*id, DerivedItem { coords: e.coords.clone(), origin: e.provenance.clone() }))
        .collect();
    let mut points: BTreeMap<PointId, DerivedItem> = s
        .fixed_points()
        .into_iter()
        .map(|(id, _)| (id, DerivedItem { coords: s.points[&id].coords.clone(), origin: s.points[&id].provenance.clone() }))
        .collect();

    loop {
        let mut progress = false;
        for p in net.points() {
            if points.contains_key(&p) {
                continue;
            }
            let known: Vec<LineId> = net.lines_through(p).iter().filter(|l| lines.contains_key(l)).copied().collect();
            if let Some((a, b, v)) = first_nonzero_cross(&known, |l| &lines[l].coords) {
                let origin = format!("{a} ^ {b}");
                points.insert(p, DerivedItem { coords: MultiPoly::normalize(&v), origin });
                progress = true;
            }
        }
        if progress {
            continue;
        }
        for p in s.parametric_points() {
            if let std::collections::btree_map::Entry::Vacant(e) = points.entry(p) {
                let entry = &s.points[&p];
                e.insert(DerivedItem { coords: entry.coords.clone(), origin: entry.provenance.clone() });
                progress = true;
            }
        }
        for l in net.lines() {
            if lines.contains_key(&l) {
                continue;
            }
            let known: Vec<PointId> = net.points_on(l).into_iter().filter(|p| points.contains_key(p)).collect();
            if let Some((a, b, v)) = first_nonzero_cross(&known, |p| &points[p].coords) {
                let origin = format!("{a} v {b}");
                lines.insert(l, DerivedItem { coords: MultiPoly::normalize(&v), origin });
                progress = true;
            }
        }
        if !progress {
            break;
        }
    }

    let mut equations: Vec<MultiPoly> = Vec::new();
    let mut tags: Vec<EquationTag> = Vec::new();
    let mut push = |e: MultiPoly, t: EquationTag| {
        if !e.is_zero() && !equations.iter().any(|f| f.is_associate_of(&e)) {
            equations.push(e);
            tags.push(t);
        }
    };
    for l in net.lines() {
        let on: Vec<PointId> = net.points_on(l).into_iter().filter(|p| points.contains_key(p)).collect();
        for (a, b, c) in on.iter().tuple_combinations() {
            let e = dot(&points[c].coords, &cross(&points[a].coords, &points[b].coords));
            push(e, EquationTag::Collinear { line: l, points: [*a, *b, *c] });
        }
    }
    for l in net.lines() {
        let Some(line) = lines.get(&l) else {
            continue;
        };
        for p in net.points_on(l) {
            if let Some(pt) = points.get(&p) {
                push(dot(&pt.coords, &line.coords), EquationTag::Incidence { point: p, line: l });
            }
        }
    }
    Ok(ConstraintSystem { net: net.clone(), vars, equations, tags, nonvanishing: s.nonvanishing.clone(), lines, points })
}

fn first_nonzero_cross<'a, I: Copy + 'a>(
    ids: &[I],
    coords: impl Fn(&I) -> &'a [MultiPoly; 3],
) -> Option<(I, I, [MultiPoly; 3])> {
    ids.iter().tuple_combinations().find_map(|(a, b)| {
        let v = cross(coords(a), coords(b));
        (!is_zero3(&v)).then_some((*a, *b, v))
    })
}

impl fmt::Display for DerivedItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render3(&self.coords))
    }
}
