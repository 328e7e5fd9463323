//! Piecewise description of the tropical image of all lines (or all points)
//! under a fixed degeneration.
//!
//! Each coordinate of `m·(a,b,c)` is a polynomial in `t` whose coefficients are
//! linear forms in `(a,b,c)`. Its degree only depends on which of those forms
//! vanish, so the image is constant on the strata of the arrangement of their
//! kernels. Strata with a common image are grouped into pieces.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::{Signed, Zero};

use super::{tp, TropPoint};
use crate::algebra::linear::{kernel, rank, rref};
use crate::algebra::{fmt_rational, Mat3, Rational, UniPoly};

/// Nonzero linear form in three variables, scaled so the first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm(pub [Rational; 3]);

fn normalize(v: &[Rational; 3]) -> Option<[Rational; 3]> {
    let p = v.iter().find(|x| !x.is_zero())?.clone();
    Some(std::array::from_fn(|i| &v[i] / &p))
}

impl LinearForm {
    pub fn new(v: &[Rational; 3]) -> Option<Self> {
        normalize(v).map(LinearForm)
    }

    pub fn support(&self) -> usize {
        self.0.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn eval(&self, p: &[Rational; 3]) -> Rational {
        (0..3).map(|i| &self.0[i] * &p[i]).sum()
    }

    /// E.g. `a + c` or `b - 2*c`.
    pub fn render(&self, names: [&str; 3]) -> String {
        let mut out = String::new();
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if mag != Rational::from_integer(1.into()) {
                let _ = write!(out, "{}*", fmt_rational(&mag));
            }
            out.push_str(names[i]);
        }
        out
    }
}

impl PartialOrd for LinearForm {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

/// Smaller support first, then lexicographic on the entries.
impl Ord for LinearForm {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.support().cmp(&o.support()).then_with(|| self.0.cmp(&o.0))
    }
}

/// Linear subspace of the coordinate space, stored as the reduced row echelon
/// form of the forms vanishing on it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flat {
    rows: Vec<[Rational; 3]>,
}

impl Flat {
    pub fn whole() -> Self {
        Flat { rows: Vec::new() }
    }

    /// Common zero set of `forms`; `None` if it is only the origin.
    pub fn from_forms(forms: &[[Rational; 3]]) -> Option<Self> {
        let (red, _) = rref(forms.iter().map(|f| f.to_vec()).collect());
        if red.len() >= 3 {
            return None;
        }
        Some(Flat { rows: red.into_iter().map(|r| [r[0].clone(), r[1].clone(), r[2].clone()]).collect() })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Projective dimension: 2 for the plane, 1 for a line, 0 for a point.
    pub fn dim(&self) -> usize {
        2 - self.rows.len()
    }

    pub fn forms(&self) -> Vec<LinearForm> {
        self.rows.iter().map(|r| LinearForm(r.clone())).collect()
    }

    /// `f` vanishes identically on the flat.
    pub fn contains_form(&self, f: &[Rational; 3]) -> bool {
        let mut rows: Vec<Vec<Rational>> = self.rows.iter().map(|r| r.to_vec()).collect();
        rows.push(f.to_vec());
        rank(rows) == self.rows.len()
    }

    pub fn contains_point(&self, p: &[Rational; 3]) -> bool {
        self.rows.iter().all(|r| (0..3).map(|i| &r[i] * &p[i]).sum::<Rational>().is_zero())
    }

    pub fn is_subflat_of(&self, o: &Flat) -> bool {
        o.rows.iter().all(|r| self.contains_form(r))
    }

    pub fn intersect(&self, o: &Flat) -> Option<Flat> {
        let all: Vec<[Rational; 3]> = self.rows.iter().chain(&o.rows).cloned().collect();
        Flat::from_forms(&all)
    }

    /// Spanning vectors of the subspace.
    pub fn basis(&self) -> Vec<[Rational; 3]> {
        kernel(self.rows.iter().map(|r| r.to_vec()).collect(), 3)
            .into_iter()
            .map(|v| normalize(&[v[0].clone(), v[1].clone(), v[2].clone()]).expect("nonzero kernel vector"))
            .collect()
    }

    /// The point, when the flat has dimension 0.
    pub fn point(&self) -> Option<[Rational; 3]> {
        (self.rank() == 2).then(|| self.basis().remove(0))
    }

    pub fn describe(&self, names: [&str; 3]) -> String {
        if self.rows.is_empty() {
            return "no relations".into();
        }
        self.forms().iter().map(|f| format!("{} = 0", f.render(names))).collect::<Vec<_>>().join(", ")
    }
}

/// A piece of the classification: the points of `flat(zero)` where no form of
/// `nonzero` vanishes and which are not in `excluded` all map to `result`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicClass {
    pub zero: Vec<LinearForm>,
    pub nonzero: Vec<LinearForm>,
    pub excluded: Vec<[Rational; 3]>,
    pub result: TropPoint,
    /// The piece is a single projective point.
    pub unique: bool,
}

impl SymbolicClass {
    pub fn flat(&self) -> Flat {
        Flat::from_forms(&self.zero.iter().map(|f| f.0.clone()).collect::<Vec<_>>()).expect("consistent")
    }

    pub fn contains(&self, p: &[Rational; 3]) -> bool {
        let Some(np) = normalize(p) else {
            return false;
        };
        self.zero.iter().all(|f| f.eval(p).is_zero())
            && self.nonzero.iter().all(|f| !f.eval(p).is_zero())
            && !self.excluded.contains(&np)
    }

    /// Whether every point of `f` off its proper sub-flats lies in this piece.
    fn covers_generic(&self, f: &Flat) -> bool {
        f.is_subflat_of(&self.flat())
            && self.nonzero.iter().all(|n| !f.contains_form(&n.0))
            && f.point().is_none_or(|p| !self.excluded.contains(&p))
    }

    pub fn describe(&self, names: [&str; 3]) -> String {
        let mut s = self.flat().describe(names);
        let mut side: Vec<String> = self.nonzero.iter().map(|f| format!("{} != 0", f.render(names))).collect();
        side.extend(self.excluded.iter().map(|p| {
            format!("not ({})", p.iter().map(fmt_rational).collect::<Vec<_>>().join(":"))
        }));
        if !side.is_empty() {
            let _ = write!(s, " ({})", side.join(", "));
        }
        s
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Lines,
    Points,
}

struct Coefficients {
    /// Per coordinate, `(exponent, form)` with exponents decreasing.
    coords: [Vec<(u32, [Rational; 3])>; 3],
    side: Side,
}

impl Coefficients {
    fn new(m: &Mat3<UniPoly>, side: Side) -> Self {
        let coords = std::array::from_fn(|i| {
            let mut by_exp: BTreeMap<u32, [Rational; 3]> = BTreeMap::new();
            for j in 0..3 {
                for (e, c) in m.rows[i][j].terms() {
                    by_exp.entry(e).or_insert_with(|| std::array::from_fn(|_| Rational::zero()))[j] = c.clone();
                }
            }
            by_exp.into_iter().rev().filter(|(_, v)| v.iter().any(|x| !x.is_zero())).collect()
        });
        Coefficients { coords, side }
    }

    fn result(&self, f: &Flat) -> Option<TropPoint> {
        let mut deg = [0i64; 3];
        for (i, terms) in self.coords.iter().enumerate() {
            deg[i] = i64::from(terms.iter().find(|(_, v)| !f.contains_form(v))?.0);
        }
        Some(match self.side {
            Side::Lines => tp(deg[2] - deg[0], deg[2] - deg[1]),
            Side::Points => tp(deg[0] - deg[2], deg[1] - deg[2]),
        })
    }

    fn hyperplanes(&self) -> Vec<LinearForm> {
        let mut hs: Vec<LinearForm> =
            self.coords.iter().flatten().filter_map(|(_, v)| LinearForm::new(v)).collect();
        hs.sort();
        hs.dedup();
        hs
    }
}

fn flats_of(hs: &[LinearForm]) -> Vec<Flat> {
    let mut flats = vec![Flat::whole()];
    for (i, h) in hs.iter().enumerate() {
        flats.push(Flat::from_forms(&[h.0.clone()]).expect("nonzero form"));
        for g in &hs[i + 1..] {
            if let Some(f) = Flat::from_forms(&[h.0.clone(), g.0.clone()]) {
                flats.push(f);
            }
        }
    }
    flats.sort_by(|a, b| (a.rank(), a).cmp(&(b.rank(), b)));
    flats.dedup();
    flats
}

fn classify(m: &Mat3<UniPoly>, side: Side) -> Vec<SymbolicClass> {
    let coeffs = Coefficients::new(m, side);
    let hs = coeffs.hyperplanes();
    let flats = flats_of(&hs);
    let results: Vec<Option<TropPoint>> = flats.iter().map(|f| coeffs.result(f)).collect();
    let mut pieces: Vec<SymbolicClass> = Vec::new();
    for (idx, f) in flats.iter().enumerate() {
        let Some(r) = results[idx] else {
            continue;
        };
        if pieces.iter().any(|p| p.result == r && p.covers_generic(f)) {
            continue;
        }
        let subs: Vec<&Flat> = flats
            .iter()
            .zip(&results)
            .filter(|(s, res)| *s != f && s.is_subflat_of(f) && **res != Some(r))
            .map(|(s, _)| s)
            .collect();
        let mut nonzero: Vec<LinearForm> = Vec::new();
        let mut excluded: Vec<[Rational; 3]> = Vec::new();
        for s in subs.iter().filter(|s| s.rank() == f.rank() + 1 && f.rank() == 0) {
            nonzero.push(s.forms().remove(0));
        }
        for s in subs.iter().filter(|s| s.rank() == 2) {
            let p = s.point().expect("rank 2");
            if nonzero.iter().any(|n| n.eval(&p).is_zero()) {
                continue;
            }
            if f.rank() == 0 {
                excluded.push(p);
            } else {
                let h = hs
                    .iter()
                    .find(|h| h.eval(&p).is_zero() && !f.contains_form(&h.0))
                    .expect("a point flat is cut out by arrangement hyperplanes");
                nonzero.push(h.clone());
            }
        }
        nonzero.sort();
        nonzero.dedup();
        excluded.sort();
        pieces.push(SymbolicClass { zero: f.forms(), nonzero, excluded, result: r, unique: f.dim() == 0 });
    }
    pieces.sort_by(|a, b| {
        let key = |c: &SymbolicClass| (c.zero.len(), c.zero.clone(), c.nonzero.clone(), c.excluded.clone());
        key(a).cmp(&key(b))
    });
    pieces
}

/// Tropical centers of all lines `[a:b:c]`, as pieces of the dual plane.
pub fn classify_line_symbolic(m: &Mat3<UniPoly>) -> Vec<SymbolicClass> {
    classify(m, Side::Lines)
}

/// Tropical locations of all points `(a:b:c)`, transported by the cofactor matrix.
pub fn classify_point_symbolic(m: &Mat3<UniPoly>) -> Vec<SymbolicClass> {
    classify(&m.cofactor_matrix(), Side::Points)
}

/// One coordinate of the tropical plane with the pieces landing there; `None` is
/// "not special".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub coordinate: TropPoint,
    pub points: Option<Vec<SymbolicClass>>,
    pub lines: Option<Vec<SymbolicClass>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointLineTable {
    pub rows: Vec<TableRow>,
}

pub const POINT_NAMES: [&str; 3] = ["a", "b", "c"];
pub const LINE_NAMES: [&str; 3] = ["d", "e", "f"];

fn side_dim(pieces: &Option<Vec<SymbolicClass>>) -> i64 {
    pieces.as_ref().map_or(-1, |ps| ps.iter().map(|p| p.flat().dim() as i64).max().unwrap_or(-1))
}

impl PointLineTable {
    pub fn row(&self, c: TropPoint) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.coordinate == c)
    }

    /// Coordinates carrying at least one line piece, in table order.
    pub fn line_coordinates(&self) -> Vec<TropPoint> {
        self.rows.iter().filter(|r| r.lines.is_some()).map(|r| r.coordinate).collect()
    }

    /// Coordinates carrying at least one point piece, in table order.
    pub fn point_coordinates(&self) -> Vec<TropPoint> {
        self.rows.iter().filter(|r| r.points.is_some()).map(|r| r.coordinate).collect()
    }

    /// Coordinates other than the generic image of each side.
    pub fn special_line_coordinates(&self) -> Vec<TropPoint> {
        self.rows
            .iter()
            .filter(|r| r.lines.as_ref().is_some_and(|ps| ps.iter().all(|p| !p.zero.is_empty())))
            .map(|r| r.coordinate)
            .collect()
    }

    pub fn render(&self) -> String {
        let side = |ps: &Option<Vec<SymbolicClass>>, names| match ps {
            None => "NS".to_string(),
            Some(ps) => ps.iter().map(|p| format!("{{{}}}", p.describe(names))).collect::<Vec<_>>().join(" or "),
        };
        let mut out = String::from("coordinate | points (a:b:c) | lines [d:e:f]\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{} | {} | {}",
                r.coordinate,
                side(&r.points, POINT_NAMES),
                side(&r.lines, LINE_NAMES)
            );
        }
        out
    }
}

/// Join of the point and line classifications on their coordinates.
///
/// Rows are ordered by the dimension of the point locus (largest first, not
/// special last), then the dimension of the line locus, then the coordinate.
pub fn point_line_table(m: &Mat3<UniPoly>) -> PointLineTable {
    let mut by: BTreeMap<TropPoint, (Option<Vec<SymbolicClass>>, Option<Vec<SymbolicClass>>)> = BTreeMap::new();
    for p in classify_point_symbolic(m) {
        by.entry(p.result).or_default().0.get_or_insert_with(Vec::new).push(p);
    }
    for l in classify_line_symbolic(m) {
        by.entry(l.result).or_default().1.get_or_insert_with(Vec::new).push(l);
    }
    let mut rows: Vec<TableRow> =
        by.into_iter().map(|(coordinate, (points, lines))| TableRow { coordinate, points, lines }).collect();
    rows.sort_by_key(|r| (Reverse(side_dim(&r.points)), Reverse(side_dim(&r.lines)), r.coordinate));
    PointLineTable { rows }
}
