use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropnet")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn report(o: &Output) -> Value {
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    serde_json::from_str(err.lines().last().unwrap()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn ols_exit_codes() {
    let o = run(&["ols", "--order", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("1 class(es)"));
    let o = run(&["--json", "ols", "--order", "2"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 0);
    let o = run(&["ols", "--order", "6"]);
    assert_eq!(code(&o), 2);
    assert_eq!(report(&o)["outcome"], "error");
}

#[test]
fn run_report_fields() {
    let r = report(&run(&["ols", "--order", "3"]));
    for k in ["command", "inputs_digest", "outcome", "artifacts", "wall_time_ms"] {
        assert!(r.get(k).is_some(), "{k}");
    }
    assert_eq!(r["command"], "ols");
    assert_eq!(r["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn tropicalize_worked_net() {
    let o = run(&["--json", "tropicalize", "--net", s(&data("net32.json")), "--matrix", s(&data("m32.json"))]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let got: Vec<(String, Value)> =
        v["lines"].as_array().unwrap().iter().map(|l| (l["id"].as_str().unwrap().to_string(), l["tropical"].clone())).collect();
    let want = [("l11", [1, -1]), ("l12", [1, 3]), ("l21", [-4, -2]), ("l22", [3, 2]), ("l31", [3, 4]), ("l32", [-2, -1])];
    assert_eq!(got.len(), want.len());
    for ((id, t), (wid, wt)) in got.iter().zip(want) {
        assert_eq!(id, wid);
        assert_eq!(*t, serde_json::json!(wt));
    }
}

#[test]
fn tropicalize_fixed_skeleton_lines() {
    let o = run(&["tropicalize", "--net", s(&data("net44_fixed.json")), "--matrix", s(&data("T.json"))]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    for c in ["(-4,-3)", "(4,3)", "(0,-1)", "(1,5)", "(-2,0)", "(3,2)"] {
        assert!(out.contains(c), "{c}");
    }
}

#[test]
fn tropicalize_rejects_vanishing_coordinates() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("net.json");
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(data("net32.json")).unwrap()).unwrap();
    // The first row begins t, t, so [1:-1:0] loses its first coordinate.
    let m = serde_json::json!({
        "schema_version": 1,
        "ring": "unipoly-t",
        "rows": [[{"1": "1/1"}, {"1": "1/1"}, {"0": "1/1"}], [{"0": "1/1"}, {"2": "1/1"}, {}], [{}, {"0": "1/1"}, {"3": "1/1"}]]
    });
    let matrix = dir.path().join("m.json");
    std::fs::write(&matrix, m.to_string()).unwrap();
    for (id, l) in v["lines"].as_object_mut().unwrap() {
        let c = if id == "l22" { ["1/1", "-1/1", "0/1"] } else { ["1/1", "2/1", "3/1"] };
        l["coords"] = serde_json::json!(c);
    }
    std::fs::write(&net, v.to_string()).unwrap();
    let o = run(&["tropicalize", "--net", s(&net), "--matrix", s(&matrix)]);
    assert_eq!(code(&o), 2);
    let e = report(&o)["error"].as_str().unwrap().to_string();
    assert!(e.contains("l22"), "{e}");
}

#[test]
fn prove_and_verify_uniqueness() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let o = run(&["prove", "43-uniqueness", "--out", s(&a)]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["outcome"], "proper");
    assert_eq!(code(&run(&["prove", "43-uniqueness", "--out", s(&b)])), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let o = run(&["verify", "--cert", s(&a)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(report(&o)["outcome"], "pass");

    let mut v: Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    let target = v["steps"][0]["target"].as_object_mut().unwrap();
    let width = target.keys().next().unwrap().split(',').count();
    target.insert(vec!["0"; width].join(","), Value::from("7/1"));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = run(&["verify", "--cert", s(&bad)]);
    assert_eq!(code(&o), 1);
    assert_eq!(report(&o)["outcome"], "fail");
}

#[test]
fn prove_nonexistence_is_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("c.json");
    let o = run(&["prove", "44-nonexistence", "--out", s(&a)]);
    assert_eq!(code(&o), 0);
    assert_eq!(report(&o)["outcome"], "trivial");
    assert!(stdout(&o).contains("witness constant 2"));
    assert_eq!(code(&run(&["verify", "--cert", s(&a)])), 0);
}

#[test]
fn malformed_certificate_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("x.json");
    std::fs::write(&p, "{").unwrap();
    assert_eq!(code(&run(&["verify", "--cert", s(&p)])), 2);
}

#[test]
fn net_verify_outcomes() {
    assert_eq!(code(&run(&["net", "verify", "--net", s(&data("net32.json"))])), 0);
    assert_eq!(code(&run(&["net", "verify", "--net", s(&data("net44_fixed.json"))])), 1);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("n43.json");
    assert_eq!(code(&run(&["net", "build", "--solution", "43", "--out", s(&p)])), 0);
    assert_eq!(code(&run(&["net", "verify", "--net", s(&p)])), 0);
}

#[test]
fn table_defaults_to_the_standard_matrix() {
    let o = run(&["table"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("(-4,-3) | NS | {d = 0, e = 0}"));
}

#[test]
fn amoeba_output() {
    let o = run(&["amoeba", "--x-min", "-1", "--x-max", "1", "--samples", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains(&format!("upper,0,{}", 2f64.ln())));
    assert_eq!(code(&run(&["amoeba", "--base", "t", "--t", "0.5"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("a.svg");
    assert_eq!(code(&run(&["amoeba", "--base", "t", "--t", "100", "--out", s(&p)])), 0);
    assert!(std::fs::read_to_string(&p).unwrap().starts_with("<svg"));
}
