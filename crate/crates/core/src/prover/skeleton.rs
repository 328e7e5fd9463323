//! Placement of the lines and points of a hypothetical net that the tropical
//! picture determines, each up to at most one parameter.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num::Zero;

use super::ProverError;
use crate::algebra::{fmt_rational, Mat3, MultiPoly, Rational, UniPoly};
use crate::latin::enumerate_ols;
use crate::nets::{line, net_from_ols, AbstractNet, LineId, PointId};
use crate::projective::{cross, dot, span_coefficients, ProjLine, ProjPoint, ProjRing};
use crate::tropical::{
    point_line_table, trop_contains, trop_line_center, trop_point_location, Flat, SymbolicClass, TropLine, TropPoint,
    LINE_NAMES, POINT_NAMES,
};

/// Images of `l11, l12, l21, l22`: `z = 0`, `x + y + z = 0`, `x = 0`, `y = 0`.
pub const STANDARD_FRAME: [(LineId, [i64; 3]); 4] =
    [(line(1, 1), [0, 0, 1]), (line(1, 2), [1, 1, 1]), (line(2, 1), [1, 0, 0]), (line(2, 2), [0, 1, 0])];

/// Parameter letters for points, assigned to carrier lines in order.
const POINT_LETTERS: [&str; 6] = ["s", "t", "m", "n", "u", "w"];

#[derive(Clone, Debug, PartialEq)]
pub struct SkeletonEntry {
    pub coords: [MultiPoly; 3],
    /// Parameter introduced by this item.
    pub parameter: Option<String>,
    /// How the item was determined.
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Hypothesis {
    pub polynomial: MultiPoly,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NetSkeleton {
    pub net: AbstractNet,
    pub parameters: Vec<String>,
    pub lines: BTreeMap<LineId, SkeletonEntry>,
    pub points: BTreeMap<PointId, SkeletonEntry>,
    pub nonvanishing: Vec<Hypothesis>,
}

fn constant_coords(e: &SkeletonEntry) -> Option<[Rational; 3]> {
    if e.parameter.is_some() {
        return None;
    }
    let c: Vec<Rational> = e.coords.iter().map(|p| p.constant_value()).collect::<Option<_>>()?;
    Some([c[0].clone(), c[1].clone(), c[2].clone()])
}

impl NetSkeleton {
    pub fn fixed_lines(&self) -> Vec<(LineId, ProjLine<Rational>)> {
        self.lines.iter().filter_map(|(id, e)| constant_coords(e).map(|c| (*id, ProjLine(c)))).collect()
    }

    pub fn fixed_points(&self) -> Vec<(PointId, ProjPoint<Rational>)> {
        self.points.iter().filter_map(|(id, e)| constant_coords(e).map(|c| (*id, ProjPoint(c)))).collect()
    }

    pub fn parametric_lines(&self) -> Vec<LineId> {
        self.lines.iter().filter(|(_, e)| e.parameter.is_some()).map(|(id, _)| *id).collect()
    }

    pub fn parametric_points(&self) -> Vec<PointId> {
        self.points.iter().filter(|(_, e)| e.parameter.is_some()).map(|(id, _)| *id).collect()
    }

    pub fn line(&self, id: LineId) -> Option<&SkeletonEntry> {
        self.lines.get(&id)
    }

    pub fn point(&self, id: PointId) -> Option<&SkeletonEntry> {
        self.points.get(&id)
    }

    pub fn render(&self) -> String {
        let coords = |c: &[MultiPoly; 3]| c.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" : ");
        let mut out = String::new();
        for (id, e) in &self.lines {
            let _ = writeln!(out, "{id}: [{}]  {}", coords(&e.coords), e.provenance);
        }
        for (id, e) in &self.points {
            let _ = writeln!(out, "{id}: ({})  {}", coords(&e.coords), e.provenance);
        }
        for h in &self.nonvanishing {
            let _ = writeln!(out, "{} != 0  ({})", h.polynomial, h.reason);
        }
        out
    }
}

fn canon(v: &[Rational; 3]) -> [Rational; 3] {
    <Rational as ProjRing>::normalize(v)
}

fn support(v: &[Rational; 3]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

#[derive(Clone, Debug)]
struct Fixed {
    coords: [Rational; 3],
    provenance: String,
}

/// The frame and everything it determines by meets and joins.
fn close_frame(net: &AbstractNet) -> Result<(BTreeMap<LineId, Fixed>, BTreeMap<PointId, Fixed>), ProverError> {
    let mut lines: BTreeMap<LineId, Fixed> = BTreeMap::new();
    for (id, v) in STANDARD_FRAME {
        let coords = canon(&v.map(|x| Rational::from_integer(x.into())));
        lines.insert(id, Fixed { coords, provenance: "standard frame".into() });
    }
    let mut points: BTreeMap<PointId, Fixed> = BTreeMap::new();
    loop {
        let mut progress = false;
        for p in net.points() {
            if points.contains_key(&p) {
                continue;
            }
            let known: Vec<LineId> = net.lines_through(p).iter().filter(|l| lines.contains_key(l)).copied().collect();
            if known.len() < 2 {
                continue;
            }
            let v = cross(&lines[&known[0]].coords, &lines[&known[1]].coords);
            if v.iter().all(|x| x.is_zero()) {
                return Err(ProverError::Inconsistent {
                    item: p.to_string(),
                    reason: format!("{} and {} coincide", known[0], known[1]),
                });
            }
            let provenance = format!("meet of {} and {}", known[0], known[1]);
            points.insert(p, Fixed { coords: canon(&v), provenance });
            progress = true;
        }
        for l in net.lines() {
            if lines.contains_key(&l) {
                continue;
            }
            let known: Vec<PointId> = net.points_on(l).into_iter().filter(|p| points.contains_key(p)).collect();
            if known.len() < 2 {
                continue;
            }
            let v = cross(&points[&known[0]].coords, &points[&known[1]].coords);
            if v.iter().all(|x| x.is_zero()) {
                return Err(ProverError::Inconsistent {
                    item: l.to_string(),
                    reason: format!("{} and {} coincide", known[0], known[1]),
                });
            }
            let provenance = format!("join of {} and {}", known[0], known[1]);
            lines.insert(l, Fixed { coords: canon(&v), provenance });
            progress = true;
        }
        if !progress {
            break;
        }
    }
    for (p, fp) in &points {
        for (l, fl) in &lines {
            let on = dot(&fp.coords, &fl.coords).is_zero();
            if on != net.is_incident(*p, *l) {
                let reason = if on { "incident in the plane but not in the net" } else { "not incident" };
                return Err(ProverError::Inconsistent { item: format!("{p} and {l}"), reason: reason.into() });
            }
        }
    }
    Ok((lines, points))
}

/// Where the tropical data puts an item: a piece of one table row, cut down by
/// the item's known incidences.
#[derive(Clone, Debug)]
struct Located {
    coordinate: TropPoint,
    description: String,
    flat: Flat,
    exclusions: Vec<[Rational; 3]>,
}

/// The single viable piece among `candidates`. `Err` when none is viable,
/// `Ok(None)` when several are or the only one is the generic piece, which says
/// nothing beyond the incidences.
fn locate(
    candidates: &[(TropPoint, &SymbolicClass)],
    incident: &[[Rational; 3]],
    placed: &[[Rational; 3]],
    avoid: &[[Rational; 3]],
    names: [&str; 3],
) -> Result<Option<Located>, String> {
    let constraint = Flat::from_forms(incident).ok_or("incident items have no common solution")?;
    let mut viable = Vec::new();
    for (coordinate, piece) in candidates {
        let Some(flat) = piece.flat().intersect(&constraint) else {
            continue;
        };
        let generic = piece.nonzero.iter().all(|n| !flat.contains_form(&n.0))
            && flat.point().is_none_or(|p| !piece.excluded.contains(&p));
        let is_placed = flat.point().is_some_and(|p| placed.contains(&p));
        if generic && !is_placed {
            viable.push((*coordinate, *piece, flat));
        }
    }
    match viable.len() {
        0 => Err(format!("no tropical position among {} candidates", candidates.len())),
        1 if viable[0].1.zero.is_empty() => Ok(None),
        1 => {
            let (coordinate, piece, flat) = viable.remove(0);
            let mut exclusions: Vec<[Rational; 3]> = placed.iter().filter(|q| flat.contains_point(q)).cloned().collect();
            for f in avoid.iter().chain(piece.nonzero.iter().map(|n| &n.0)) {
                if flat.contains_form(f) {
                    continue;
                }
                if let Some(p) = Flat::from_forms(&[f.clone()]).and_then(|h| flat.intersect(&h)).and_then(|m| m.point()) {
                    exclusions.push(p);
                }
            }
            exclusions.extend(piece.excluded.iter().filter(|e| flat.contains_point(e)).cloned());
            exclusions.sort();
            exclusions.dedup();
            Ok(Some(Located { coordinate, description: piece.describe(names), flat, exclusions }))
        }
        _ => Ok(None),
    }
}

/// `u + k·v` with the excluded values of `k` other than `0`.
#[derive(Clone, Debug)]
struct Family {
    u: [Rational; 3],
    v: [Rational; 3],
    avoid: Vec<Rational>,
}

fn parametrize(loc: &Located, placed: &[[Rational; 3]]) -> Family {
    let mut pool = loc.exclusions.clone();
    for b in loc.flat.basis() {
        if !pool.contains(&b) {
            pool.push(b);
        }
    }
    let simple = |e: &[Rational; 3]| (support(e), e.clone());
    let v = pool.iter().min_by_key(|e| simple(e)).cloned().expect("a line has points");
    let mut rest: Vec<[Rational; 3]> = pool.into_iter().filter(|e| *e != v).collect();
    rest.sort_by_key(|e| (!placed.contains(e), support(e), e.clone()));
    let u = rest.remove(0);
    let mut avoid: Vec<Rational> = rest
        .iter()
        .filter(|e| loc.exclusions.contains(e))
        .filter_map(|e| span_coefficients(&u, &v, e))
        .map(|(a, b)| b / a)
        .collect();
    avoid.sort();
    avoid.dedup();
    Family { u, v, avoid }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Item {
    Point(PointId),
    Line(LineId),
}

struct Placement {
    item: Item,
    /// Carrier line for points, anchor point for lines.
    host: String,
    located: Located,
    family: Option<Family>,
}

/// Place the items of `net` that the degeneration `m` and the standard frame
/// determine.
///
/// Items on two known items are fixed by meets and joins. An item incident to a
/// single known item gets a one-parameter family when exactly one table piece
/// is compatible with its incidences and does not force it onto a known item.
pub fn build_skeleton(net: &AbstractNet, m: &Mat3<UniPoly>) -> Result<NetSkeleton, ProverError> {
    let (fixed_lines, fixed_points) = close_frame(net)?;
    let table = point_line_table(m);
    let mut centers: BTreeMap<LineId, TropPoint> = BTreeMap::new();
    for (id, f) in &fixed_lines {
        centers.insert(*id, trop_line_center(&ProjLine(f.coords.clone()), m)?);
    }
    let mut locations: BTreeMap<PointId, TropPoint> = BTreeMap::new();
    for (id, f) in &fixed_points {
        locations.insert(*id, trop_point_location(&ProjPoint(f.coords.clone()), m)?);
    }
    let placed_points: Vec<[Rational; 3]> = fixed_points.values().map(|f| f.coords.clone()).collect();
    let placed_lines: Vec<[Rational; 3]> = fixed_lines.values().map(|f| f.coords.clone()).collect();

    let mut placements: Vec<Placement> = Vec::new();
    for p in net.points().filter(|p| !fixed_points.contains_key(p)) {
        let carriers: Vec<LineId> =
            net.lines_through(p).iter().filter(|l| fixed_lines.contains_key(l)).copied().collect();
        if carriers.is_empty() {
            continue;
        }
        let candidates: Vec<(TropPoint, &SymbolicClass)> = table
            .rows
            .iter()
            .filter(|r| carriers.iter().all(|l| trop_contains(&TropLine { center: centers[l] }, &r.coordinate)))
            .flat_map(|r| r.points.iter().flatten().map(move |c| (r.coordinate, c)))
            .collect();
        let incident: Vec<[Rational; 3]> = carriers.iter().map(|l| fixed_lines[l].coords.clone()).collect();
        let avoid: Vec<[Rational; 3]> = fixed_lines
            .iter()
            .filter(|(l, _)| !net.is_incident(p, **l))
            .map(|(_, f)| f.coords.clone())
            .collect();
        match locate(&candidates, &incident, &placed_points, &avoid, POINT_NAMES) {
            Err(reason) => return Err(ProverError::Inconsistent { item: p.to_string(), reason }),
            Ok(None) => {}
            Ok(Some(located)) => {
                let family = (located.flat.dim() > 0).then(|| parametrize(&located, &placed_points));
                placements.push(Placement { item: Item::Point(p), host: carriers[0].to_string(), located, family });
            }
        }
    }
    for l in net.lines().into_iter().filter(|l| !fixed_lines.contains_key(l)) {
        let anchors: Vec<PointId> = net.points_on(l).into_iter().filter(|p| fixed_points.contains_key(p)).collect();
        if anchors.is_empty() {
            continue;
        }
        let candidates: Vec<(TropPoint, &SymbolicClass)> = table
            .rows
            .iter()
            .filter(|r| anchors.iter().all(|p| trop_contains(&TropLine { center: r.coordinate }, &locations[p])))
            .flat_map(|r| r.lines.iter().flatten().map(move |c| (r.coordinate, c)))
            .collect();
        let incident: Vec<[Rational; 3]> = anchors.iter().map(|p| fixed_points[p].coords.clone()).collect();
        let avoid: Vec<[Rational; 3]> = fixed_points
            .iter()
            .filter(|(p, _)| !net.is_incident(**p, l))
            .map(|(_, f)| f.coords.clone())
            .collect();
        match locate(&candidates, &incident, &placed_lines, &avoid, LINE_NAMES) {
            Err(reason) => return Err(ProverError::Inconsistent { item: l.to_string(), reason }),
            Ok(None) => {}
            Ok(Some(located)) => {
                let family = (located.flat.dim() > 0).then(|| parametrize(&located, &placed_lines));
                placements.push(Placement { item: Item::Line(l), host: anchors[0].to_string(), located, family });
            }
        }
    }

    // Parameter names: k1, k2, ... for lines by anchor; one letter per carrier for points.
    let mut names: BTreeMap<Item, String> = BTreeMap::new();
    let mut line_items: Vec<(PointId, LineId)> = placements
        .iter()
        .filter(|pl| pl.family.is_some())
        .filter_map(|pl| match pl.item {
            Item::Line(l) => Some((pl.host.parse().expect("point id"), l)),
            Item::Point(_) => None,
        })
        .collect();
    line_items.sort();
    for (i, (_, l)) in line_items.iter().enumerate() {
        names.insert(Item::Line(*l), format!("k{}", i + 1));
    }
    let mut by_carrier: BTreeMap<LineId, Vec<PointId>> = BTreeMap::new();
    for pl in placements.iter().filter(|pl| pl.family.is_some()) {
        if let Item::Point(p) = pl.item {
            by_carrier.entry(pl.host.parse().expect("line id")).or_default().push(p);
        }
    }
    for (ci, (_, pts)) in by_carrier.iter_mut().enumerate() {
        pts.sort();
        let letter = POINT_LETTERS.get(ci).map_or_else(|| format!("r{}_", ci + 1), |s| s.to_string());
        for (i, p) in pts.iter().enumerate() {
            names.insert(Item::Point(*p), format!("{letter}{}", i + 1));
        }
    }
    let mut parameters: Vec<String> = line_items.iter().map(|(_, l)| names[&Item::Line(*l)].clone()).collect();
    let mut point_params: Vec<String> =
        names.iter().filter(|(k, _)| matches!(k, Item::Point(_))).map(|(_, v)| v.clone()).collect();
    point_params.sort();
    parameters.extend(point_params);

    let konst = |v: &[Rational; 3]| -> [MultiPoly; 3] {
        std::array::from_fn(|i| MultiPoly::constant_in(&parameters, v[i].clone()))
    };
    let mut lines: BTreeMap<LineId, SkeletonEntry> = fixed_lines
        .iter()
        .map(|(id, f)| (*id, SkeletonEntry { coords: konst(&f.coords), parameter: None, provenance: f.provenance.clone() }))
        .collect();
    let mut points: BTreeMap<PointId, SkeletonEntry> = fixed_points
        .iter()
        .map(|(id, f)| (*id, SkeletonEntry { coords: konst(&f.coords), parameter: None, provenance: f.provenance.clone() }))
        .collect();
    let mut nonvanishing = Vec::new();
    let mut families: Vec<(&Family, String, bool)> = Vec::new();
    for pl in &placements {
        let (kind, host_word) = match pl.item {
            Item::Point(_) => ("location", "on"),
            Item::Line(_) => ("center", "through"),
        };
        let provenance = format!(
            "{kind} {} {host_word} {}: {}",
            pl.located.coordinate, pl.host, pl.located.description
        );
        let (coords, parameter) = match &pl.family {
            None => (konst(&pl.located.flat.point().expect("dimension zero")), None),
            Some(f) => {
                let name = names[&pl.item].clone();
                let k = MultiPoly::var_named(&parameters, &name).expect("declared parameter");
                let coords: [MultiPoly; 3] = std::array::from_fn(|i| {
                    &MultiPoly::constant_in(&parameters, f.u[i].clone()) + &k.scale(&f.v[i])
                });
                let mut poly = k.clone();
                for a in &f.avoid {
                    poly = &poly * &(&k - &MultiPoly::constant_in(&parameters, a.clone()));
                }
                let excluded: Vec<String> =
                    std::iter::once("0".to_string()).chain(f.avoid.iter().map(fmt_rational)).collect();
                nonvanishing
                    .push(Hypothesis { polynomial: poly, reason: format!("{name} not in {{{}}}", excluded.join(", ")) });
                families.push((f, name.clone(), matches!(pl.item, Item::Line(_))));
                (coords, Some(name))
            }
        };
        let entry = SkeletonEntry { coords, parameter, provenance };
        match pl.item {
            Item::Point(p) => {
                points.insert(p, entry);
            }
            Item::Line(l) => {
                lines.insert(l, entry);
            }
        }
    }
    let rank = |h: &Hypothesis| parameters.iter().position(|p| h.reason.starts_with(&format!("{p} "))).unwrap_or(0);
    nonvanishing.sort_by_key(rank);
    for (i, (fa, na, la)) in families.iter().enumerate() {
        for (fb, nb, lb) in &families[i + 1..] {
            if la == lb && fa.u == fb.u && fa.v == fb.v {
                let a = MultiPoly::var_named(&parameters, na).expect("declared");
                let b = MultiPoly::var_named(&parameters, nb).expect("declared");
                nonvanishing.push(Hypothesis { polynomial: &a - &b, reason: format!("{na} != {nb}") });
            }
        }
    }
    Ok(NetSkeleton { net: net.clone(), parameters, lines, points, nonvanishing })
}

/// The net of the order-4 orthogonal pair.
pub fn net_44() -> Result<AbstractNet, ProverError> {
    let pair = enumerate_ols(4)?.remove(0);
    Ok(net_from_ols(4, &[pair.first, pair.second])?)
}

/// The net of the order-3 orthogonal pair.
pub fn net_43() -> Result<AbstractNet, ProverError> {
    let pair = enumerate_ols(3)?.remove(0);
    Ok(net_from_ols(3, &[pair.first, pair.second])?)
}

/// Skeleton of a hypothetical (4,4)-net under the degeneration `T`.
pub fn build_44_skeleton() -> Result<NetSkeleton, ProverError> {
    build_skeleton(&net_44()?, &crate::tropical::degeneration_t())
}

/// Skeleton of a hypothetical (4,3)-net under the degeneration `T`.
pub fn build_43_skeleton() -> Result<NetSkeleton, ProverError> {
    build_skeleton(&net_43()?, &crate::tropical::degeneration_t())
}
