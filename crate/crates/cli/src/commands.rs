use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use serde_json::{json, Value};

use tropnet::algebra::{Mat3, Rational, UniPoly};
use tropnet::codec::{self, NetFile};
use tropnet::latin::{enumerate_ols, LatinError};
use tropnet::nets::{net_from_ols, verify_abstract_net, verify_realized_net, NetReport};
use tropnet::prover::{
    build_43_skeleton, build_44_skeleton, generate_constraints, prove_nonexistence_44, prove_uniqueness_43,
    verify_certificate, Certificate, Conclusion,
};
use tropnet::tropical::{
    amoeba_boundary_samples, degeneration_t, point_line_table, render_amoeba_svg, render_tropical_svg,
    samples_to_csv, trop_line_center, trop_point_location, AmoebaBase, AmoebaKind, TropLine, TropicalError,
    LINE_NAMES, POINT_NAMES,
};

use crate::report::{Failure, Outcome, RunReport};
use crate::{AmoebaArgs, Base};

type Res = Result<(), Failure>;

fn input(e: impl Display) -> Failure {
    Failure::Input(e.to_string())
}

fn internal(e: impl Display) -> Failure {
    Failure::Internal(e.to_string())
}

fn print_json(v: &Value) {
    print!("{}", codec::to_canonical_string(v));
}

/// Write `contents` to `out`, or to stdout without a path.
fn emit(report: &mut RunReport, out: Option<&Path>, contents: &str) -> Res {
    match out {
        Some(p) => report.write_artifact(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

pub fn ols(order: usize, json: bool) -> Res {
    let classes = enumerate_ols(order).map_err(|e| match e {
        LatinError::UnsupportedOrder(_) => input(e),
        other => internal(other),
    })?;
    if json {
        let list: Vec<Value> = classes.iter().map(codec::encode_ols_pair).collect();
        print_json(&json!({ "order": order, "count": classes.len(), "classes": list }));
        return Ok(());
    }
    println!("{} class(es) of orthogonal Latin squares of order {order}", classes.len());
    for (n, p) in classes.iter().enumerate() {
        println!("class {}", n + 1);
        for (a, b) in p.first.rows().iter().zip(p.second.rows()) {
            let fmt = |r: &[usize]| r.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            println!("  {}   {}", fmt(a), fmt(&b));
        }
    }
    Ok(())
}

pub fn net_build(report: &mut RunReport, order: usize, classes: usize, out: Option<&Path>) -> Res {
    if !(2..=4).contains(&classes) {
        return Err(input(format!("--classes must be 2, 3 or 4, got {classes}")));
    }
    let ols = enumerate_ols(order).map_err(input)?;
    let squares = match classes {
        2 => Vec::new(),
        _ => {
            let p = ols.first().ok_or_else(|| input(format!("no orthogonal pair of order {order}")))?;
            [p.first.clone(), p.second.clone()][..classes - 2].to_vec()
        }
    };
    let net = net_from_ols(order, &squares).map_err(internal)?;
    emit(report, out, &codec::to_canonical_string(&codec::encode_abstract_net(&net)))
}

pub fn net_build_43(report: &mut RunReport, conjugate: bool, out: Option<&Path>) -> Res {
    let (_, net) = prove_uniqueness_43().map_err(internal)?;
    let net = if conjugate { net.map(|q| q.conjugate()) } else { net };
    emit(report, out, &codec::to_canonical_string(&codec::encode_realized_net(&net, &[])))
}

fn read_json(report: &mut RunReport, path: &Path) -> Result<Value, Failure> {
    let src = report.read_input(path)?;
    codec::parse_json(&src).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_net(report: &mut RunReport, path: &Path) -> Result<NetFile, Failure> {
    let v = read_json(report, path)?;
    codec::decode_net(&v).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_matrix(report: &mut RunReport, path: &Path) -> Result<Mat3<UniPoly>, Failure> {
    let v = read_json(report, path)?;
    let m = codec::decode_matrix(&v).map_err(|e| input(format!("{}: {e}", path.display())))?;
    if m.det().is_zero() {
        return Err(input(format!("{}: matrix is singular", path.display())));
    }
    Ok(m)
}

pub fn net_verify(report: &mut RunReport, path: &Path, json: bool) -> Res {
    let file = read_net(report, path)?;
    let r: NetReport = match &file {
        NetFile::Abstract(n) => verify_abstract_net(n),
        NetFile::Rational(n) => verify_realized_net(n),
        NetFile::UniPoly(n) => verify_realized_net(n),
        NetFile::MultiPoly { net, .. } => verify_realized_net(net),
        NetFile::Quotient(n) => verify_realized_net(n),
    };
    let n = file.abstract_net();
    if json {
        print_json(&json!({
            "k": n.k,
            "d": n.d,
            "field": file.field(),
            "passed": r.passed(),
            "checks": r.checks,
            "violations": r.violations,
        }));
    } else {
        println!("({},{})-net over {}: {} checks", n.k, n.d, file.field(), r.checks);
        for v in &r.violations {
            println!("  {:?}: {}", v.condition, v.ids.join(", "));
        }
        println!("{}", if r.passed() { "valid" } else { "invalid" });
    }
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{} violation(s)", r.violations.len())))
    }
}

fn vanishing(id: &str, e: TropicalError) -> Failure {
    match e {
        TropicalError::VanishingCoordinate(i) => input(format!("{id}: coordinate {i} vanishes after the transformation")),
        other => input(format!("{id}: {other}")),
    }
}

pub fn tropicalize(report: &mut RunReport, net: &Path, matrix: &Path, svg: Option<&Path>, json: bool) -> Res {
    let file = read_net(report, net)?;
    let m = read_matrix(report, matrix)?;
    let NetFile::Rational(n) = file else {
        return Err(input(format!("{}: tropicalization needs rational coordinates", net.display())));
    };
    let mut lines = Vec::new();
    for (id, l) in &n.lines {
        let c = trop_line_center(l, &m).map_err(|e| vanishing(&id.to_string(), e))?;
        lines.push((id.to_string(), l.to_string(), c));
    }
    let mut points = Vec::new();
    for (id, p) in &n.points {
        let c = trop_point_location(p, &m).map_err(|e| vanishing(&id.to_string(), e))?;
        points.push((id.to_string(), p.to_string(), c));
    }
    if let Some(path) = svg {
        let ls: Vec<(String, TropLine)> = lines.iter().map(|(id, _, c)| (id.clone(), TropLine { center: *c })).collect();
        let ps: Vec<_> = points.iter().map(|(id, _, c)| (id.clone(), *c)).collect();
        report.write_artifact(path, &render_tropical_svg(&ls, &ps))?;
    }
    if json {
        let entry = |(id, coords, c): &(String, String, tropnet::tropical::TropPoint)| {
            json!({ "id": id, "coords": coords, "tropical": [c.x, c.y] })
        };
        print_json(&json!({
            "lines": lines.iter().map(entry).collect::<Vec<_>>(),
            "points": points.iter().map(entry).collect::<Vec<_>>(),
        }));
        return Ok(());
    }
    println!("line centers");
    for (id, coords, c) in &lines {
        println!("  {id:<5} {coords:<24} {c}");
    }
    println!("point locations");
    for (id, coords, c) in &points {
        println!("  {id:<5} {coords:<24} {c}");
    }
    Ok(())
}

pub fn table(report: &mut RunReport, matrix: Option<&Path>, json: bool) -> Res {
    let m = match matrix {
        Some(p) => read_matrix(report, p)?,
        None => degeneration_t(),
    };
    let t = point_line_table(&m);
    if !json {
        print!("{}", t.render());
        return Ok(());
    }
    let side = |ps: &Option<Vec<tropnet::tropical::SymbolicClass>>, names| match ps {
        None => Value::Null,
        Some(ps) => Value::Array(ps.iter().map(|p| json!(p.describe(names))).collect()),
    };
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|r| {
            json!({
                "coordinate": [r.coordinate.x, r.coordinate.y],
                "points": side(&r.points, POINT_NAMES),
                "lines": side(&r.lines, LINE_NAMES),
            })
        })
        .collect();
    print_json(&json!({ "rows": rows }));
    Ok(())
}

fn certificate_summary(c: &Certificate) -> Value {
    let mut s = json!({
        "kind": c.kind,
        "k": c.k,
        "d": c.d,
        "generators": c.generators.len(),
        "steps": c.steps.len(),
        "hypotheses": c.hypotheses.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
        "unused_parameters": c.unused_parameters,
        "landmarks": c.landmarks.iter().map(|l| l.polynomial.to_string()).collect::<Vec<_>>(),
    });
    match &c.witness {
        Conclusion::Contradiction { value, member } => {
            s["witness_constant"] = json!(value.to_string());
            s["witness_combination"] = json!(witness_combination(c, *member));
        }
        Conclusion::Solution { minimal_polynomial, solutions, conjugation, .. } => {
            s["minimal_polynomial"] = json!(minimal_polynomial.to_string());
            s["solutions"] =
                solutions.iter().map(|p| json!({ "parameter": p.parameter, "value": p.value.to_string() })).collect();
            s["conjugation"] = json!(conjugation.as_ref().map(|p| p.to_string()));
        }
    }
    s
}

fn print_summary(c: &Certificate, json: bool) {
    let s = certificate_summary(c);
    if json {
        print_json(&s);
        return;
    }
    println!("({},{}) {:?} certificate: {} generators, {} steps", c.k, c.d, c.kind, c.generators.len(), c.steps.len());
    let list = |v: &Value| v.as_array().map(|a| a.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(", "));
    println!("  hypotheses: {}", list(&s["hypotheses"]).filter(|s| !s.is_empty()).unwrap_or("none".into()));
    println!("  unused parameters: {}", list(&s["unused_parameters"]).unwrap_or_default());
    for l in &c.landmarks {
        println!("  landmark {} (from {} generators)", l.polynomial, l.support.len());
    }
    match &c.witness {
        Conclusion::Contradiction { value, member } => match witness_combination(c, *member) {
            Some(comb) => println!("  witness constant {value} = {comb}"),
            None => println!("  witness constant {value}"),
        },
        Conclusion::Solution { primary, minimal_polynomial, solutions, conjugation, .. } => {
            println!("  minimal polynomial of {primary}: {minimal_polynomial}");
            for p in solutions {
                println!("  {} = {}", p.parameter, p.value);
            }
            if let Some(c) = conjugation {
                println!("  other root: {primary} -> {c}");
            }
        }
    }
}

/// The final step as a readable combination, when it only uses landmarks.
fn witness_combination(c: &Certificate, member: usize) -> Option<String> {
    let step = c.steps.get(member.checked_sub(c.generators.len())?)?;
    let mut terms = Vec::new();
    for (i, q) in &step.cofactors {
        let l = c.landmarks.iter().find(|l| l.member == *i)?;
        let term = match q.constant_value() {
            Some(k) if k == Rational::from_integer(1.into()) => format!("+ ({})", l.polynomial),
            Some(k) if k == Rational::from_integer((-1).into()) => format!("- ({})", l.polynomial),
            Some(k) if k < Rational::from_integer(0.into()) => format!("- {}*({})", -k, l.polynomial),
            Some(k) => format!("+ {k}*({})", l.polynomial),
            None => format!("+ ({q})*({})", l.polynomial),
        };
        terms.push(term);
    }
    // Positive terms first.
    terms.sort_by_key(|t| t.starts_with('-'));
    let joined = terms.join(" ");
    Some(joined.strip_prefix("+ ").unwrap_or(&joined).to_string())
}

fn write_certificate(report: &mut RunReport, c: &Certificate, out: &Path) -> Res {
    report.write_artifact(out, &codec::to_canonical_string(&codec::encode_certificate(c)))
}

pub fn prove_44(report: &mut RunReport, out: &Path, json: bool) -> Res {
    let c = prove_nonexistence_44().map_err(internal)?;
    write_certificate(report, &c, out)?;
    report.set_outcome(Outcome::Trivial);
    print_summary(&c, json);
    Ok(())
}

pub fn prove_43(report: &mut RunReport, out: &Path, json: bool) -> Res {
    let (c, _) = prove_uniqueness_43().map_err(internal)?;
    write_certificate(report, &c, out)?;
    report.set_outcome(Outcome::Proper);
    print_summary(&c, json);
    Ok(())
}

pub fn verify(report: &mut RunReport, path: &Path, json: bool) -> Res {
    let v = read_json(report, path)?;
    let c = codec::decode_certificate(&v).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let skeleton = match (c.k, c.d) {
        (4, 4) => build_44_skeleton(),
        (4, 3) => build_43_skeleton(),
        (k, d) => return Err(input(format!("no constraint system is known for ({k},{d})-nets"))),
    }
    .map_err(internal)?;
    let sys = generate_constraints(&skeleton, &skeleton.net).map_err(internal)?;
    let verdict = verify_certificate(&c, &sys);
    if json {
        let mut s = certificate_summary(&c);
        match &verdict {
            Ok(a) => {
                s["accepted"] = json!(true);
                s["steps_checked"] = json!(a.steps_checked);
                s["items_checked"] = json!(a.items_checked);
            }
            Err(r) => {
                s["accepted"] = json!(false);
                s["rejected_step"] = json!(r.step);
                s["reason"] = json!(r.reason);
            }
        }
        print_json(&s);
    } else {
        match &verdict {
            Ok(a) => {
                print_summary(&c, false);
                println!("accepted: {} steps replayed, {} items checked", a.steps_checked, a.items_checked);
            }
            Err(r) => match r.step {
                Some(i) => println!("rejected at step {i}: {}", r.reason),
                None => println!("rejected: {}", r.reason),
            },
        }
    }
    verdict.map(|_| ()).map_err(|r| Failure::Verification(r.reason))
}

fn parse_rational(s: &str, what: &str) -> Result<Rational, Failure> {
    let s = s.trim();
    if let Ok(q) = Rational::from_str(s) {
        return Ok(q);
    }
    // Decimal input such as 0.5 or 1e4.
    let x: f64 = s.parse().map_err(|_| input(format!("{what}: cannot parse {s:?}")))?;
    Rational::from_float(x).ok_or_else(|| input(format!("{what}: {s:?} is not finite")))
}

pub fn amoeba(report: &mut RunReport, a: &AmoebaArgs, json: bool) -> Res {
    let base = match (a.base, &a.t) {
        (Base::Natural, None) => AmoebaBase::Natural,
        (Base::Natural, Some(_)) => return Err(input("--t only applies with --base t")),
        (Base::T, None) => return Err(input("--base t needs --t")),
        (Base::T, Some(t)) => AmoebaBase::T(parse_rational(t, "--t")?),
    };
    let kind = match &a.coeffs {
        None => AmoebaKind::Line,
        Some(s) => {
            let c: Vec<Rational> = s.split(',').map(|x| parse_rational(x, "--coeffs")).collect::<Result<_, _>>()?;
            let [a, b, c] = <[Rational; 3]>::try_from(c).map_err(|_| input("--coeffs needs three values"))?;
            AmoebaKind::Scaled { a, b, c }
        }
    };
    let samples = amoeba_boundary_samples(&kind, &base, (a.x_min, a.x_max), a.samples).map_err(input)?;
    let is_svg = a.out.as_ref().and_then(|p| p.extension()).is_some_and(|e| e == "svg");
    let contents = if is_svg { render_amoeba_svg(&samples) } else { samples_to_csv(&samples) };
    if json {
        if let Some(p) = &a.out {
            report.write_artifact(p, &contents)?;
        }
        let branches: Vec<Value> = samples
            .iter()
            .map(|b| json!({ "branch": b.branch.name(), "points": b.points.iter().map(|(x, y)| [x, y]).collect::<Vec<_>>() }))
            .collect();
        print_json(&json!({ "branches": branches }));
        return Ok(());
    }
    emit(report, a.out.as_deref(), &contents)
}
