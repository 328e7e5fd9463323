//! Abstract and realized (k,d)-nets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::latin::{are_orthogonal, LatinSquare};
use crate::projective::{incident, meet, ProjLine, ProjPoint, ProjRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetError {
    #[error("squares {0} and {1} are not orthogonal")]
    NonOrthogonal(usize, usize),
    #[error("square {index} has order {found}, expected {expected}")]
    OrderMismatch { index: usize, found: usize, expected: usize },
    #[error("admissibility is only stated for k >= 3 and d >= 2, got ({0},{1})")]
    OutOfScope(usize, usize),
    #[error("bad identifier {0:?}")]
    BadId(String),
}

/// Line `index` of class `class`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineId {
    pub class: usize,
    pub index: usize,
}

/// Point `p_ij = l_1i ∩ l_2j`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId {
    pub i: usize,
    pub j: usize,
}

pub const fn line(class: usize, index: usize) -> LineId {
    LineId { class, index }
}

pub const fn point(i: usize, j: usize) -> PointId {
    PointId { i, j }
}

fn fmt_pair(f: &mut fmt::Formatter<'_>, tag: char, a: usize, b: usize) -> fmt::Result {
    if a < 10 && b < 10 {
        write!(f, "{tag}{a}{b}")
    } else {
        write!(f, "{tag}{a}_{b}")
    }
}

fn parse_pair(s: &str, tag: char) -> Result<(usize, usize), NetError> {
    let bad = || NetError::BadId(s.to_string());
    let rest = s.strip_prefix(tag).ok_or_else(bad)?;
    let (a, b) = match rest.split_once('_') {
        Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
        None if rest.len() == 2 && rest.bytes().all(|c| c.is_ascii_digit()) => {
            ((rest.as_bytes()[0] - b'0') as usize, (rest.as_bytes()[1] - b'0') as usize)
        }
        None => return Err(bad()),
    };
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a, b))
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_pair(f, 'l', self.class, self.index)
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_pair(f, 'p', self.i, self.j)
    }
}

impl FromStr for LineId {
    type Err = NetError;
    fn from_str(s: &str) -> Result<Self, NetError> {
        parse_pair(s, 'l').map(|(class, index)| LineId { class, index })
    }
}

impl FromStr for PointId {
    type Err = NetError;
    fn from_str(s: &str) -> Result<Self, NetError> {
        parse_pair(s, 'p').map(|(i, j)| PointId { i, j })
    }
}

/// Combinatorial (k,d)-net: each point lists the lines it lies on, one per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractNet {
    pub k: usize,
    pub d: usize,
    pub incidence: BTreeMap<PointId, Vec<LineId>>,
}

impl AbstractNet {
    /// The (2,d)-net of horizontal and vertical grid lines.
    pub fn grid(d: usize) -> Self {
        net_from_ols(d, &[]).expect("no squares to check")
    }

    pub fn lines(&self) -> Vec<LineId> {
        (1..=self.k).flat_map(|c| (1..=self.d).map(move |i| line(c, i))).collect()
    }

    pub fn points(&self) -> impl Iterator<Item = PointId> + '_ {
        self.incidence.keys().copied()
    }

    pub fn lines_through(&self, p: PointId) -> &[LineId] {
        self.incidence.get(&p).map_or(&[], Vec::as_slice)
    }

    pub fn points_on(&self, l: LineId) -> Vec<PointId> {
        self.incidence.iter().filter(|(_, ls)| ls.contains(&l)).map(|(p, _)| *p).collect()
    }

    pub fn is_incident(&self, p: PointId, l: LineId) -> bool {
        self.lines_through(p).contains(&l)
    }

    /// Common point of two lines, if any.
    pub fn common_point(&self, a: LineId, b: LineId) -> Option<PointId> {
        self.incidence.iter().find(|(_, ls)| ls.contains(&a) && ls.contains(&b)).map(|(p, _)| *p)
    }
}

/// Net whose classes 3, 4, ... are read from the squares: point `p_ij` lies on
/// line `(2+t, S_t[i][j])`.
pub fn net_from_ols(d: usize, squares: &[LatinSquare]) -> Result<AbstractNet, NetError> {
    for (index, s) in squares.iter().enumerate() {
        if s.order() != d {
            return Err(NetError::OrderMismatch { index, found: s.order(), expected: d });
        }
    }
    for a in 0..squares.len() {
        for b in a + 1..squares.len() {
            if !are_orthogonal(&squares[a], &squares[b]).expect("orders checked") {
                return Err(NetError::NonOrthogonal(a, b));
            }
        }
    }
    let mut incidence = BTreeMap::new();
    for i in 1..=d {
        for j in 1..=d {
            let mut ls = vec![line(1, i), line(2, j)];
            ls.extend(squares.iter().enumerate().map(|(t, s)| line(t + 3, s.get(i - 1, j - 1))));
            incidence.insert(point(i, j), ls);
        }
    }
    Ok(AbstractNet { k: 2 + squares.len(), d, incidence })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    PointCount,
    UnknownLine,
    UniqueLinePerClass,
    ClassPartition,
    CrossClassMeet,
    MissingCoordinates,
    Incidence,
    ExtraIncidence,
    DuplicateLine,
    DuplicatePoint,
    SameClassMeet,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub ids: Vec<String>,
}

impl Violation {
    fn new(condition: Condition, ids: Vec<String>) -> Self {
        Violation { condition, ids }
    }
}

/// Every violated condition, with the offending ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NetReport {
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl NetReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, c: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == c)
    }

    fn check(&mut self, ok: bool, c: Condition, ids: Vec<String>) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation::new(c, ids));
        }
    }
}

pub fn verify_abstract_net(n: &AbstractNet) -> NetReport {
    let mut r = NetReport::default();
    r.check(n.incidence.len() == n.d * n.d, Condition::PointCount, vec![]);
    for (p, ls) in &n.incidence {
        for l in ls {
            let known = (1..=n.k).contains(&l.class) && (1..=n.d).contains(&l.index);
            r.check(known, Condition::UnknownLine, vec![p.to_string(), l.to_string()]);
        }
        for c in 1..=n.k {
            let count = ls.iter().filter(|l| l.class == c).count();
            r.check(count == 1, Condition::UniqueLinePerClass, vec![p.to_string(), format!("class {c}")]);
        }
    }
    let mut on: BTreeMap<LineId, BTreeSet<PointId>> = n.lines().into_iter().map(|l| (l, BTreeSet::new())).collect();
    for (p, ls) in &n.incidence {
        for l in ls {
            on.entry(*l).or_default().insert(*p);
        }
    }
    for (l, ps) in &on {
        r.check(ps.len() == n.d, Condition::ClassPartition, vec![l.to_string()]);
    }
    let lines = n.lines();
    for a in &lines {
        for b in lines.iter().filter(|b| b.class > a.class) {
            let shared = on[a].intersection(&on[b]).count();
            r.check(shared == 1, Condition::CrossClassMeet, vec![a.to_string(), b.to_string()]);
        }
    }
    r
}

/// Coordinates for the lines and points of an abstract net.
#[derive(Clone, Debug, PartialEq)]
pub struct RealizedNet<R> {
    pub net: AbstractNet,
    pub lines: BTreeMap<LineId, ProjLine<R>>,
    pub points: BTreeMap<PointId, ProjPoint<R>>,
}

impl<R: ProjRing> RealizedNet<R> {
    pub fn field(&self) -> &'static str {
        R::TAG
    }

    pub fn map<S: ProjRing>(&self, f: impl Fn(&R) -> S) -> RealizedNet<S> {
        RealizedNet {
            net: self.net.clone(),
            lines: self.lines.iter().map(|(id, l)| (*id, l.map(&f).canonical())).collect(),
            points: self.points.iter().map(|(id, p)| (*id, p.map(&f).canonical())).collect(),
        }
    }
}

/// Exact check of all incidences, meets and distinctness conditions.
pub fn verify_realized_net<R: ProjRing>(n: &RealizedNet<R>) -> NetReport {
    let mut r = verify_abstract_net(&n.net);
    let lines = n.net.lines();
    let points: Vec<PointId> = n.net.points().collect();
    for l in &lines {
        let ok = n.lines.get(l).is_some_and(|x| x.0.iter().any(|c| !c.is_zero()));
        r.check(ok, Condition::MissingCoordinates, vec![l.to_string()]);
    }
    for p in &points {
        let ok = n.points.get(p).is_some_and(|x| x.0.iter().any(|c| !c.is_zero()));
        r.check(ok, Condition::MissingCoordinates, vec![p.to_string()]);
    }
    if !r.passed() {
        return r;
    }
    for p in &points {
        for l in &lines {
            let on = incident(&n.points[p], &n.lines[l]);
            if n.net.is_incident(*p, *l) {
                r.check(on, Condition::Incidence, vec![p.to_string(), l.to_string()]);
            } else {
                r.check(!on, Condition::ExtraIncidence, vec![p.to_string(), l.to_string()]);
            }
        }
    }
    for (x, a) in lines.iter().enumerate() {
        for b in &lines[x + 1..] {
            let (la, lb) = (&n.lines[a], &n.lines[b]);
            let same = la.projective_eq(lb);
            r.check(!same, Condition::DuplicateLine, vec![a.to_string(), b.to_string()]);
            if same {
                continue;
            }
            let m = meet(la, lb).expect("distinct lines");
            let hits: Vec<&PointId> = points.iter().filter(|p| n.points[p].projective_eq(&m)).collect();
            if a.class == b.class {
                let ids = [vec![a.to_string(), b.to_string()], hits.iter().map(|p| p.to_string()).collect()].concat();
                r.check(hits.is_empty(), Condition::SameClassMeet, ids);
            } else {
                let expected = n.net.common_point(*a, *b);
                let ok = hits.len() == 1 && Some(*hits[0]) == expected;
                r.check(ok, Condition::CrossClassMeet, vec![a.to_string(), b.to_string()]);
            }
        }
    }
    for (x, p) in points.iter().enumerate() {
        for q in &points[x + 1..] {
            let same = n.points[p].projective_eq(&n.points[q]);
            r.check(!same, Condition::DuplicatePoint, vec![p.to_string(), q.to_string()]);
        }
    }
    r
}

/// Whether a (k,d)-net may exist by the known restriction on k:
/// k = 3 with d ≥ 2, k = 4 with d ≥ 3, or k = 5 with d ≥ 6.
pub fn yuzvinsky_admissible(k: usize, d: usize) -> Result<bool, NetError> {
    if k < 3 || d < 2 {
        return Err(NetError::OutOfScope(k, d));
    }
    Ok(matches!((k, d), (3, _) | (4, 3..) | (5, 6..)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        assert_eq!("l43".parse::<LineId>().unwrap(), line(4, 3));
        assert_eq!(point(2, 3).to_string(), "p23");
        assert_eq!(line(12, 1).to_string(), "l12_1");
        assert_eq!("l12_1".parse::<LineId>().unwrap(), line(12, 1));
        assert!("x11".parse::<LineId>().is_err());
    }

    #[test]
    fn grid_passes() {
        let g = AbstractNet::grid(3);
        assert_eq!(g.k, 2);
        assert!(verify_abstract_net(&g).passed());
    }

    #[test]
    fn admissibility() {
        assert!(yuzvinsky_admissible(4, 4).unwrap());
        assert!(!yuzvinsky_admissible(5, 4).unwrap());
        assert!(yuzvinsky_admissible(3, 2).unwrap());
        assert!(yuzvinsky_admissible(5, 6).unwrap());
        assert!(!yuzvinsky_admissible(6, 9).unwrap());
        assert!(yuzvinsky_admissible(2, 4).is_err());
    }
}
