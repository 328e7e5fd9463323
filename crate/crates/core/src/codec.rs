//! JSON files for polynomials, nets, matrices and certificates.
//!
//! Objects are written with sorted keys and rationals as `"num/den"`, so equal
//! values always encode to identical bytes.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::algebra::{Combination, Mat3, MultiPoly, QuotientElem, Rational, UniPoly};
use crate::latin::OlsPair;
use crate::nets::{AbstractNet, LineId, NetError, PointId, RealizedNet};
use crate::projective::{ProjLine, ProjPoint, ProjRing};
use crate::prover::{Certificate, CertificateKind, Conclusion, Landmark, SolvedParameter};

pub const FILE_SCHEMA_VERSION: u32 = 1;

/// Field tag of nets without coordinates.
pub const ABSTRACT_TAG: &str = "abstract";

#[derive(Debug, Error)]
pub enum CodecError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Net(#[from] NetError),
}

fn bad<T>(msg: impl Into<String>) -> Result<T, CodecError> {
    Err(CodecError::Format(msg.into()))
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn parse_json(src: &str) -> Result<Value, CodecError> {
    Ok(serde_json::from_str(src)?)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CodecError> {
    v.get(key).ok_or_else(|| CodecError::Format(format!("missing field {key:?}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize, CodecError> {
    match v.as_u64() {
        Some(n) => Ok(n as usize),
        None => bad(format!("{what} must be a nonnegative integer")),
    }
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, CodecError> {
    v.as_array().ok_or_else(|| CodecError::Format(format!("{what} must be an array")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, CodecError> {
    v.as_object().ok_or_else(|| CodecError::Format(format!("{what} must be an object")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str, CodecError> {
    v.as_str().ok_or_else(|| CodecError::Format(format!("{what} must be a string")))
}

fn strings(v: &Value, what: &str) -> Result<Vec<String>, CodecError> {
    as_array(v, what)?.iter().map(|s| as_str(s, what).map(str::to_string)).collect()
}

fn check_schema(v: &Value) -> Result<(), CodecError> {
    let version = as_usize(field(v, "schema_version")?, "schema_version")?;
    if version != FILE_SCHEMA_VERSION as usize {
        return bad(format!("unsupported schema version {version}"));
    }
    Ok(())
}

pub fn encode_rational(q: &Rational) -> Value {
    Value::String(format!("{}/{}", q.numer(), q.denom()))
}

pub fn decode_rational(v: &Value) -> Result<Rational, CodecError> {
    let s = as_str(v, "coefficient")?;
    Rational::from_str(s).or_else(|_| bad(format!("bad rational {s:?}")))
}

pub fn encode_unipoly(p: &UniPoly) -> Value {
    Value::Object(p.terms().map(|(e, c)| (e.to_string(), encode_rational(c))).collect())
}

pub fn decode_unipoly(v: &Value) -> Result<UniPoly, CodecError> {
    let mut terms = Vec::new();
    for (k, c) in as_object(v, "polynomial")? {
        let e: u32 = k.parse().or_else(|_| bad(format!("bad exponent {k:?}")))?;
        terms.push((e, decode_rational(c)?));
    }
    Ok(UniPoly::from_terms(terms))
}

/// Exponent vectors are written over all of `vars`.
pub fn encode_multipoly(p: &MultiPoly, vars: &[String]) -> Value {
    Value::Object(
        p.terms()
            .map(|(m, c)| {
                let key = (0..vars.len().max(p.vars().len())).map(|i| m.exp(i).to_string()).collect::<Vec<_>>();
                (key.join(","), encode_rational(c))
            })
            .collect(),
    )
}

pub fn decode_multipoly(v: &Value, vars: &[String]) -> Result<MultiPoly, CodecError> {
    let mut terms = Vec::new();
    for (k, c) in as_object(v, "polynomial")? {
        let exps: Vec<u32> = if k.is_empty() {
            Vec::new()
        } else {
            k.split(',').map(|e| e.parse().or_else(|_| bad(format!("bad exponent vector {k:?}")))).collect::<Result<_, _>>()?
        };
        if exps.len() > vars.len() {
            return bad(format!("exponent vector {k:?} is longer than the parameter list"));
        }
        terms.push((exps, decode_rational(c)?));
    }
    Ok(MultiPoly::from_terms(vars, terms))
}

/// `a + b·k` as `{"0": a, "1": b}`.
pub fn encode_quotient(q: &QuotientElem) -> Value {
    json!({ "0": encode_rational(&q.a), "1": encode_rational(&q.b) })
}

pub fn decode_quotient(v: &Value) -> Result<QuotientElem, CodecError> {
    let o = as_object(v, "quotient element")?;
    if let Some(k) = o.keys().find(|k| *k != "0" && *k != "1") {
        return bad(format!("unexpected key {k:?} in quotient element"));
    }
    let get = |k: &str| o.get(k).map_or(Ok(Rational::from_integer(0.into())), decode_rational);
    Ok(QuotientElem::new(get("0")?, get("1")?))
}

/// Ring elements that can appear as coordinates in files. Polynomial rings
/// read their variables from the enclosing file.
pub trait Encode: ProjRing {
    fn encode(&self, vars: &[String]) -> Value;
    fn decode(v: &Value, vars: &[String]) -> Result<Self, CodecError>;
}

impl Encode for Rational {
    fn encode(&self, _: &[String]) -> Value {
        encode_rational(self)
    }
    fn decode(v: &Value, _: &[String]) -> Result<Self, CodecError> {
        decode_rational(v)
    }
}

impl Encode for UniPoly {
    fn encode(&self, _: &[String]) -> Value {
        encode_unipoly(self)
    }
    fn decode(v: &Value, _: &[String]) -> Result<Self, CodecError> {
        decode_unipoly(v)
    }
}

impl Encode for MultiPoly {
    fn encode(&self, vars: &[String]) -> Value {
        encode_multipoly(self, vars)
    }
    fn decode(v: &Value, vars: &[String]) -> Result<Self, CodecError> {
        decode_multipoly(v, vars)
    }
}

impl Encode for QuotientElem {
    fn encode(&self, _: &[String]) -> Value {
        encode_quotient(self)
    }
    fn decode(v: &Value, _: &[String]) -> Result<Self, CodecError> {
        decode_quotient(v)
    }
}

fn encode_coords<R: Encode>(v: &[R; 3], vars: &[String]) -> Value {
    Value::Array(v.iter().map(|x| x.encode(vars)).collect())
}

fn decode_coords<R: Encode>(v: &Value, vars: &[String]) -> Result<[R; 3], CodecError> {
    let a = as_array(v, "coords")?;
    if a.len() != 3 {
        return bad(format!("coords must have 3 entries, found {}", a.len()));
    }
    Ok([R::decode(&a[0], vars)?, R::decode(&a[1], vars)?, R::decode(&a[2], vars)?])
}

pub fn encode_matrix(m: &Mat3<UniPoly>) -> Value {
    json!({
        "schema_version": FILE_SCHEMA_VERSION,
        "ring": UniPoly::TAG,
        "rows": m.rows.iter().map(|r| r.iter().map(encode_unipoly).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn decode_matrix(v: &Value) -> Result<Mat3<UniPoly>, CodecError> {
    check_schema(v)?;
    let ring = as_str(field(v, "ring")?, "ring")?;
    if ring != UniPoly::TAG {
        return bad(format!("matrix ring must be {:?}, found {ring:?}", UniPoly::TAG));
    }
    let rows = as_array(field(v, "rows")?, "rows")?;
    if rows.len() != 3 || rows.iter().any(|r| r.as_array().map(Vec::len) != Some(3)) {
        return bad("matrix must have 3 rows of 3 entries");
    }
    let mut out: [[UniPoly; 3]; 3] = Default::default();
    for (i, r) in rows.iter().enumerate() {
        for (j, e) in as_array(r, "row")?.iter().enumerate() {
            out[i][j] = decode_unipoly(e)?;
        }
    }
    Ok(Mat3::new(out))
}

fn net_header(net: &AbstractNet, tag: &str) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("schema_version".into(), json!(FILE_SCHEMA_VERSION));
    o.insert("k".into(), json!(net.k));
    o.insert("d".into(), json!(net.d));
    o.insert("field".into(), json!(tag));
    o
}

fn incidence_entry(net: &AbstractNet, p: PointId) -> Map<String, Value> {
    let mut o = Map::new();
    o.insert("on".into(), Value::Array(net.lines_through(p).iter().map(|l| json!(l.to_string())).collect()));
    o
}

pub fn encode_abstract_net(net: &AbstractNet) -> Value {
    let mut o = net_header(net, ABSTRACT_TAG);
    o.insert("lines".into(), Value::Object(net.lines().iter().map(|l| (l.to_string(), json!({}))).collect()));
    o.insert(
        "points".into(),
        Value::Object(net.points().map(|p| (p.to_string(), Value::Object(incidence_entry(net, p)))).collect()),
    );
    Value::Object(o)
}

/// Realized net, possibly with only some items given coordinates. Polynomial
/// coordinates are written over `parameters`, which is stored when nonempty.
pub fn encode_realized_net<R: Encode>(n: &RealizedNet<R>, parameters: &[String]) -> Value {
    let mut o = net_header(&n.net, R::TAG);
    if !parameters.is_empty() {
        o.insert("parameters".into(), json!(parameters));
    }
    let mut lines = Map::new();
    for l in n.net.lines() {
        let mut e = Map::new();
        if let Some(c) = n.lines.get(&l) {
            e.insert("coords".into(), encode_coords(&c.0, parameters));
        }
        lines.insert(l.to_string(), Value::Object(e));
    }
    let mut points = Map::new();
    for p in n.net.points() {
        let mut e = incidence_entry(&n.net, p);
        if let Some(c) = n.points.get(&p) {
            e.insert("coords".into(), encode_coords(&c.0, parameters));
        }
        points.insert(p.to_string(), Value::Object(e));
    }
    o.insert("lines".into(), Value::Object(lines));
    o.insert("points".into(), Value::Object(points));
    Value::Object(o)
}

/// Contents of a net file, by coordinate ring.
#[derive(Clone, Debug, PartialEq)]
pub enum NetFile {
    Abstract(AbstractNet),
    Rational(RealizedNet<Rational>),
    UniPoly(RealizedNet<UniPoly>),
    MultiPoly { net: RealizedNet<MultiPoly>, parameters: Vec<String> },
    Quotient(RealizedNet<QuotientElem>),
}

impl NetFile {
    pub fn abstract_net(&self) -> &AbstractNet {
        match self {
            NetFile::Abstract(n) => n,
            NetFile::Rational(n) => &n.net,
            NetFile::UniPoly(n) => &n.net,
            NetFile::MultiPoly { net, .. } => &net.net,
            NetFile::Quotient(n) => &n.net,
        }
    }

    pub fn field(&self) -> &'static str {
        match self {
            NetFile::Abstract(_) => ABSTRACT_TAG,
            NetFile::Rational(_) => Rational::TAG,
            NetFile::UniPoly(_) => UniPoly::TAG,
            NetFile::MultiPoly { .. } => MultiPoly::TAG,
            NetFile::Quotient(_) => QuotientElem::TAG,
        }
    }

    pub fn encode(&self) -> Value {
        match self {
            NetFile::Abstract(n) => encode_abstract_net(n),
            NetFile::Rational(n) => encode_realized_net(n, &[]),
            NetFile::UniPoly(n) => encode_realized_net(n, &[]),
            NetFile::MultiPoly { net, parameters } => encode_realized_net(net, parameters),
            NetFile::Quotient(n) => encode_realized_net(n, &[]),
        }
    }
}

fn decode_incidence(v: &Value) -> Result<AbstractNet, CodecError> {
    let k = as_usize(field(v, "k")?, "k")?;
    let d = as_usize(field(v, "d")?, "d")?;
    let mut incidence = BTreeMap::new();
    for (id, e) in as_object(field(v, "points")?, "points")? {
        let p: PointId = id.parse()?;
        let on = strings(field(e, "on")?, "on")?.iter().map(|s| s.parse::<LineId>()).collect::<Result<Vec<_>, _>>()?;
        incidence.insert(p, on);
    }
    let net = AbstractNet { k, d, incidence };
    let known = net.lines();
    for id in as_object(field(v, "lines")?, "lines")?.keys() {
        let l: LineId = id.parse()?;
        if !known.contains(&l) {
            return bad(format!("line {id} is outside a ({k},{d})-net"));
        }
    }
    for (p, ls) in &net.incidence {
        if let Some(l) = ls.iter().find(|l| !known.contains(l)) {
            return bad(format!("point {p} lies on unknown line {l}"));
        }
    }
    Ok(net)
}

fn decode_realized<R: Encode>(v: &Value, net: AbstractNet, vars: &[String]) -> Result<RealizedNet<R>, CodecError> {
    let mut lines = BTreeMap::new();
    for (id, e) in as_object(field(v, "lines")?, "lines")? {
        if let Some(c) = e.get("coords") {
            lines.insert(id.parse::<LineId>()?, ProjLine(decode_coords(c, vars)?));
        }
    }
    let mut points = BTreeMap::new();
    for (id, e) in as_object(field(v, "points")?, "points")? {
        if let Some(c) = e.get("coords") {
            points.insert(id.parse::<PointId>()?, ProjPoint(decode_coords(c, vars)?));
        }
    }
    Ok(RealizedNet { net, lines, points })
}

pub fn decode_net(v: &Value) -> Result<NetFile, CodecError> {
    check_schema(v)?;
    let tag = as_str(field(v, "field")?, "field")?;
    let net = decode_incidence(v)?;
    let parameters = match v.get("parameters") {
        Some(p) => strings(p, "parameters")?,
        None => Vec::new(),
    };
    Ok(match tag {
        ABSTRACT_TAG => NetFile::Abstract(net),
        t if t == Rational::TAG => NetFile::Rational(decode_realized(v, net, &[])?),
        t if t == UniPoly::TAG => NetFile::UniPoly(decode_realized(v, net, &[])?),
        t if t == QuotientElem::TAG => NetFile::Quotient(decode_realized(v, net, &[])?),
        t if t == MultiPoly::TAG => {
            NetFile::MultiPoly { net: decode_realized(v, net, &parameters)?, parameters }
        }
        other => return bad(format!("unknown field tag {other:?}")),
    })
}

pub fn encode_ols_pair(p: &OlsPair) -> Value {
    json!({ "first": p.first.rows(), "second": p.second.rows() })
}

fn encode_poly_list(ps: &[MultiPoly], vars: &[String]) -> Value {
    Value::Array(ps.iter().map(|p| encode_multipoly(p, vars)).collect())
}

fn decode_poly_list(v: &Value, vars: &[String]) -> Result<Vec<MultiPoly>, CodecError> {
    as_array(v, "polynomial list")?.iter().map(|p| decode_multipoly(p, vars)).collect()
}

fn indices(v: &Value, what: &str) -> Result<Vec<usize>, CodecError> {
    as_array(v, what)?.iter().map(|x| as_usize(x, what)).collect()
}

pub fn encode_certificate(c: &Certificate) -> Value {
    let vars = &c.parameters;
    let steps: Vec<Value> = c
        .steps
        .iter()
        .map(|s| {
            json!({
                "target": encode_multipoly(&s.target, vars),
                "cofactors": s.cofactors.iter().map(|(i, p)| json!([i, encode_multipoly(p, vars)])).collect::<Vec<_>>(),
            })
        })
        .collect();
    let landmarks: Vec<Value> = c
        .landmarks
        .iter()
        .map(|l| json!({ "polynomial": encode_multipoly(&l.polynomial, vars), "member": l.member, "support": l.support }))
        .collect();
    let witness = match &c.witness {
        Conclusion::Contradiction { member, value } => {
            json!({ "type": "contradiction", "member": member, "value": encode_rational(value) })
        }
        Conclusion::Solution { primary, minimal_polynomial, minimal_member, solutions, conjugation } => json!({
            "type": "solution",
            "primary": primary,
            "minimal_polynomial": encode_multipoly(minimal_polynomial, vars),
            "minimal_member": minimal_member,
            "solutions": solutions.iter().map(|s| json!({
                "parameter": s.parameter,
                "value": encode_multipoly(&s.value, vars),
                "member": s.member,
            })).collect::<Vec<_>>(),
            "conjugation": conjugation.as_ref().map(|p| encode_multipoly(p, vars)),
        }),
    };
    json!({
        "schema_version": c.schema_version,
        "kind": c.kind,
        "k": c.k,
        "d": c.d,
        "parameters": vars,
        "generators": encode_poly_list(&c.generators, vars),
        "hypotheses": encode_poly_list(&c.hypotheses, vars),
        "unused_parameters": c.unused_parameters,
        "steps": steps,
        "landmarks": landmarks,
        "witness": witness,
    })
}

pub fn decode_certificate(v: &Value) -> Result<Certificate, CodecError> {
    let schema_version = as_usize(field(v, "schema_version")?, "schema_version")? as u32;
    let kind: CertificateKind = serde_json::from_value(field(v, "kind")?.clone())?;
    let vars = strings(field(v, "parameters")?, "parameters")?;
    let poly = |v: &Value| decode_multipoly(v, &vars);
    let mut steps = Vec::new();
    for s in as_array(field(v, "steps")?, "steps")? {
        let mut cofactors = Vec::new();
        for c in as_array(field(s, "cofactors")?, "cofactors")? {
            match c.as_array().map(Vec::as_slice) {
                Some([i, p]) => cofactors.push((as_usize(i, "member index")?, poly(p)?)),
                _ => return bad("cofactor must be a pair [index, polynomial]"),
            }
        }
        steps.push(Combination { target: poly(field(s, "target")?)?, cofactors });
    }
    let mut landmarks = Vec::new();
    for l in as_array(field(v, "landmarks")?, "landmarks")? {
        landmarks.push(Landmark {
            polynomial: poly(field(l, "polynomial")?)?,
            member: as_usize(field(l, "member")?, "member")?,
            support: indices(field(l, "support")?, "support")?,
        });
    }
    let w = field(v, "witness")?;
    let witness = match as_str(field(w, "type")?, "witness type")? {
        "contradiction" => Conclusion::Contradiction {
            member: as_usize(field(w, "member")?, "member")?,
            value: decode_rational(field(w, "value")?)?,
        },
        "solution" => {
            let mut solutions = Vec::new();
            for s in as_array(field(w, "solutions")?, "solutions")? {
                solutions.push(SolvedParameter {
                    parameter: as_str(field(s, "parameter")?, "parameter")?.to_string(),
                    value: poly(field(s, "value")?)?,
                    member: as_usize(field(s, "member")?, "member")?,
                });
            }
            let conjugation = match field(w, "conjugation")? {
                Value::Null => None,
                p => Some(poly(p)?),
            };
            Conclusion::Solution {
                primary: as_str(field(w, "primary")?, "primary")?.to_string(),
                minimal_polynomial: poly(field(w, "minimal_polynomial")?)?,
                minimal_member: as_usize(field(w, "minimal_member")?, "minimal_member")?,
                solutions,
                conjugation,
            }
        }
        other => return bad(format!("unknown witness type {other:?}")),
    };
    Ok(Certificate {
        schema_version,
        kind,
        k: as_usize(field(v, "k")?, "k")?,
        d: as_usize(field(v, "d")?, "d")?,
        generators: decode_poly_list(field(v, "generators")?, &vars)?,
        hypotheses: decode_poly_list(field(v, "hypotheses")?, &vars)?,
        unused_parameters: strings(field(v, "unused_parameters")?, "unused_parameters")?,
        steps,
        landmarks,
        witness,
        parameters: vars,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn vars() -> Vec<String> {
        ["k1", "k2"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn rationals_are_written_as_fractions() {
        assert_eq!(encode_rational(&ratio(-3, 6)), json!("-1/2"));
        assert_eq!(encode_rational(&rat(4)), json!("4/1"));
        assert_eq!(decode_rational(&json!("4")).unwrap(), rat(4));
        assert!(decode_rational(&json!("1/0")).is_err());
        assert!(decode_rational(&json!(3)).is_err());
    }

    #[test]
    fn multipoly_keys_cover_all_parameters() {
        let v = vars();
        let p = MultiPoly::parse("k1^2 - 1/3", &v[..1]).unwrap();
        let e = encode_multipoly(&p, &v);
        assert_eq!(e, json!({ "0,0": "-1/3", "2,0": "1/1" }));
        assert_eq!(decode_multipoly(&e, &v).unwrap(), p);
        assert!(decode_multipoly(&json!({ "1,1,1": "1/1" }), &v).is_err());
    }

    #[test]
    fn quotient_round_trip() {
        let q = QuotientElem::new(ratio(1, 2), rat(-1));
        assert_eq!(decode_quotient(&encode_quotient(&q)).unwrap(), q);
        assert!(decode_quotient(&json!({ "2": "1/1" })).is_err());
    }

    #[test]
    fn matrix_shape_is_checked() {
        let m = crate::tropical::degeneration_t();
        let e = encode_matrix(&m);
        assert_eq!(decode_matrix(&e).unwrap(), m);
        let mut short = e.clone();
        short["rows"].as_array_mut().unwrap().pop();
        assert!(decode_matrix(&short).is_err());
    }
}
