use std::process::{Command, Output};

use serde_json::Value;

fn napier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_napier"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn orbifold_row_as_json() {
    let v = json(&napier(&["cone-manifold", "--angles", "2/3,5/12,5/12,1/4,1/4", "--json"]));
    assert_eq!(v["verdict"], "Orbifold");
    assert_eq!(v["strata"][0]["k"], 2);
}

#[test]
fn search_finds_one_hit() {
    let v = json(&napier(&["search", "--max-den", "12", "--json"]));
    let hits = v.as_array().unwrap();
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0]["triple"], serde_json::json!(["1/4", "1/4", "5/12"]));
    assert_eq!(hits[0]["k"], 2);
}

#[test]
fn table_passes() {
    let out = napier(&["table"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("36/36 rows match"));
    let v = json(&napier(&["table", "--json"]));
    assert_eq!(v["matched"], 36);
    assert_eq!(v["pass"], true);
}

#[test]
fn tumarkin_preset() {
    let v = json(&napier(&["from-slopes", "--preset", "tumarkin", "--json"]));
    assert_eq!(v["n"], 5);
    assert_eq!(v["type"], 3);
    assert_eq!(v["compact"], true);
    assert_eq!(v["coxeter"], true);
}

#[test]
fn negative_slopes_are_values_not_flags() {
    let out = napier(&["from-slopes", "--slopes", "0,inf,0,inf,0,inf"]);
    assert!(!out.status.success());
    let out = napier(&[
        "from-slopes",
        "--slopes",
        "2.2360679774997896,-2,-1,0,1,inf,-3,-0.3819660112501051",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("type: 3"));
}

#[test]
fn domain_errors_exit_one_without_stdout() {
    for angles in ["2/3,2/3,2/3", "1/3,1/3,1/3"] {
        let out = napier(&["orthoscheme", "--angles", angles]);
        assert_eq!(out.status.code(), Some(1));
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let out = napier(&["orthoscheme", "--angles", "2/3,2/3,2/3"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("too small"));
}

#[test]
fn parse_errors_exit_two() {
    let out = napier(&["orthoscheme", "--angles", "a/b"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(napier(&["search", "--max-den", "1"]).status.code(), Some(2));
    assert_eq!(napier(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn dot_and_svg_files() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("d.dot");
    let out = napier(&["orthoscheme", "--angles", "2/5,2/5,2/5,2/5,2/5", "--dot", dot.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph coxeter {"));
    assert_eq!(text.matches("style=dashed").count(), 5);

    let svg = dir.path().join("u.svg");
    let out = napier(&[
        "hermitian",
        "--angles",
        "1/2,1/2,1/2,1/2",
        "--heights",
        "1,2,1,0.5",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polygon"));
}

#[test]
fn hermitian_report() {
    let v = json(&napier(&["hermitian", "--angles", "1/2,1/2,1/2,1/2", "--heights", "1,1,1,1", "--json"]));
    assert_eq!(v["signature"], serde_json::json!({"negative": 1, "zero": 2, "positive": 1}));
    assert!((v["form_value"].as_f64().unwrap() + 8.0).abs() < 1e-12);
    assert!((v["polygon_area"].as_f64().unwrap() - 4.0).abs() < 1e-12);
    let out = napier(&["hermitian", "--angles", "1/2,1/2,1/2,1/2", "--heights", "1,1,-1,1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn json_is_deterministic_with_full_precision() {
    let args = ["orthoscheme", "--angles", "1/2,3/8,3/8,3/8,3/8", "--json"];
    let a = napier(&args);
    let b = napier(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let first_float = text.split("\"ratio\": ").nth(1).unwrap().split(',').next().unwrap();
    let mantissa = first_float.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{first_float}");
}
