use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const TRIANGLE: &str = r#"{"n":2,"vertices":[["0","0"],["2","0"],["0","2"]]}"#;
const TYPE3: &str = r#"{"n":2,"vertices":[["-1","-2/3"],["-1","1/3"],["2","4/3"]]}"#;

fn run(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_unilift"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("spawn");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str], stdin: &str) -> Value {
    let out = run(args, stdin, &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_standard_triangle() {
    let v = ok_json(&["analyze", "--f", "1/2,1/2"], TRIANGLE);
    assert_eq!(v["torus_volume"], "1");
    assert_eq!(v["unique_lifting"], true);
    assert_eq!(v["per_facet"].as_array().unwrap().len(), 3);
    assert_eq!(v["maximality"]["maximal"], true);
}

#[test]
fn analyze_type3_reports_witnesses() {
    let v = ok_json(&["analyze", "--f", "0,1/3"], TYPE3);
    assert_eq!(v["torus_volume"], "2/3");
    assert_eq!(v["unique_lifting"], false);
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn output_is_deterministic() {
    let a = run(&["analyze", "--f", "0,1/3"], TYPE3, &[]);
    let b = run(&["analyze", "--f", "0,1/3"], TYPE3, &[]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["sweep", "--seed", "3"], TYPE3, &[]);
    let b = run(&["sweep", "--seed", "3"], TYPE3, &[]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn files_in_and_out() {
    let dir = std::env::temp_dir().join(format!("unilift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let body = dir.join("cone.json");
    let tri = dir.join("t.json");
    std::fs::write(&tri, TYPE3).unwrap();
    let out = run(
        &["generate", "--family", "type3-cone", "--m", "4", "--in", tri.to_str().unwrap(), "--out", body.to_str().unwrap()],
        "",
        &[],
    );
    assert!(out.status.success());
    let text = std::fs::read_to_string(&body).unwrap();
    let parsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["n"], 3);
    assert_eq!(parsed["vertices"].as_array().unwrap().len(), 4);
    // round trip through analyze
    let v = ok_json(&["analyze", "--in", body.to_str().unwrap(), "--f", "4/3,0,1/3", "--no-witness"], "");
    assert_eq!(v["torus_volume"], "26/27");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn f_outside_is_a_validation_error() {
    let out = run(&["analyze", "--f", "5,5"], TRIANGLE, &[]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "F_OUTSIDE");
}

#[test]
fn malformed_input_is_a_validation_error() {
    let out = run(&["analyze", "--f", "1/2,1/2"], "{not json", &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["analyze", "--f", "1/2"], TRIANGLE, &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cap_override_exits_three() {
    let out = run(&["analyze", "--f", "1/2,1/2"], TRIANGLE, &[("LIFTING_ENUM_CAP", "2")]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"]["code"].is_string());
}

#[test]
fn oracle_covers_standard_triangle() {
    let v = ok_json(&["oracle", "--f", "1/2,1/2", "--grid", "16"], TRIANGLE);
    assert_eq!(v["covered_fraction"], "1");
    assert_eq!(v["covered"], v["total"]);
}

#[test]
fn render_draws_one_parallelogram_per_facet() {
    let out = run(&["render", "--f", "0,1/3"], TYPE3, &[]);
    assert!(out.status.success());
    let svg = String::from_utf8(out.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"class="region""#).count(), 3);
    assert_eq!(svg.matches(r#"class="body""#).count(), 1);
}

#[test]
fn render_rejects_three_dimensions() {
    let body = ok_json(&["generate", "--family", "standard", "--n", "3"], "");
    let out = run(&["render", "--f", "1,1,1"], &body.to_string(), &[]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["code"], "DIMENSION_UNSUPPORTED");
}

#[test]
fn classify_picks_a_criterion() {
    let v = ok_json(&["classify"], TYPE3);
    assert_eq!(v["predicted"], "MULTIPLE");
    assert_eq!(v["cross_check"], true);
    let v = ok_json(&["classify"], TRIANGLE);
    assert_eq!(v["predicted"], "UNIQUE");
    assert!(v["witness"].is_object());
}

#[test]
fn sweep_fits_type3() {
    let v = ok_json(&["sweep"], TYPE3);
    assert_eq!(v["verified"], true);
    assert_eq!(v["constant"], "2/3");
    assert_eq!(v["dichotomy"], "MULTIPLE_FOR_ALL_F");
}

#[test]
fn search_finds_type3_triangles() {
    let v = ok_json(&["generate", "--family", "search", "--q", "3", "--lo", "-1", "--hi", "2"], "");
    let hits = v["hits"].as_array().unwrap();
    assert!(hits.iter().any(|h| h["tag"] == "Type3"));
}
