use std::fs;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use serde_json::Value;

fn salem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_salem")).args(args).output().unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let out = salem(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn decimal(v: &Value) -> f64 {
    v["decimal"].as_str().unwrap().parse().unwrap()
}

#[test]
fn classify_example() {
    let v = ok_json(&["classify", "x^4-x^3-x^2-x+1"]);
    assert_eq!(v["verdict"], "Salem");
    assert!((decimal(&v["salem_root"]) - 1.7221).abs() < 1e-4);
    let v = ok_json(&["classify", "x^4+1"]);
    assert_eq!(v["verdict"], "NotSalem");
}

#[test]
fn surface_torus() {
    let v = ok_json(&["surface", "--matrix", "[[1]]"]);
    let r = &v["report"];
    assert_eq!(r["genus"], 1);
    assert_eq!(r["orientable"], true);
    assert_eq!(r["tight"], true);
    assert_eq!(r["filling"], true);
}

#[test]
fn surface_with_routing_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("plan.json");
    let plan = r#"{"strips": [[0, 1, 1], [0, 0, 1]], "routes": [[[1, 1], [0, 0], [1, 0]], [[0, 1], [1, 0], [0, 0]]]}"#;
    fs::write(&path, plan).unwrap();
    let v = ok_json(&[
        "surface",
        "--matrix",
        "[[1,2],[2,1]]",
        "--routing",
        path.to_str().unwrap(),
    ]);
    assert_eq!(v["report"]["intersection"], serde_json::json!([[1, 2], [2, 1]]));
    // a plan that does not match the matrix
    fs::write(&path, r#"{"strips": [[0]], "routes": [[[0, 0]]]}"#).unwrap();
    let out = salem(&[
        "surface",
        "--matrix",
        "[[1,2],[2,1]]",
        "--routing",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thurston_example() {
    let start = Instant::now();
    let v = ok_json(&["thurston", "--matrix", "[[8,4],[4,6]]", "--pf-product", "--word", "CD"]);
    assert!(start.elapsed() < Duration::from_secs(1));
    assert_eq!(v["pf"]["nu"]["minpoly"], "x^2-14x+32");
    assert_eq!(v["report"]["verdict"], "pseudoAnosov");
    assert!((decimal(&v["report"]["stretch"]) - 9.0122).abs() < 1e-4);
    assert_eq!(v["veech"]["totally_real"], true);
    assert_eq!(v["salem"]["verdict"], "Salem");
}

#[test]
fn thurston_with_weights() {
    let v = ok_json(&[
        "thurston",
        "--matrix",
        "[[1,1,0],[0,1,1]]",
        "--n-weights",
        "2,2,1",
        "--m-weights",
        "2,2",
        "--word",
        "C D",
    ]);
    assert_eq!(v["pf"]["product"], serde_json::json!([["8", "4"], ["4", "6"]]));
    assert_eq!(v["report"]["trace_field_poly"], "t^2-10t+8");
    let out = salem(&["thurston", "--matrix", "[[1,1,0],[0,1,1]]", "--n-weights", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn certify_save_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    let v = ok_json(&["certify", "x^4-x^3-x^2-x+1", "--out", p]);
    assert_eq!(v["k"], 3);
    let v = ok_json(&["certify", "--verify", p]);
    assert_eq!(v["passed"], true);

    let mut cert: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    cert["qk"][0][0] = Value::String("6".into());
    fs::write(&path, serde_json::to_string(&cert).unwrap()).unwrap();
    let out = salem(&["certify", "--verify", p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("failed"));
}

#[test]
fn certify_is_byte_stable() {
    let a = salem(&["--entry-floor", "2", "certify", "x^4-x^3-x^2-x+1"]);
    let b = salem(&["--entry-floor", "2", "certify", "x^4-x^3-x^2-x+1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["k"], 5);
    assert_eq!(v["qk"], serde_json::json!([["14", "4"], ["4", "2"]]));
}

#[test]
fn pipeline_fields() {
    for (p, q) in [
        ("x^2-5", serde_json::json!([["2", "1"], ["1", "1"]])),
        ("x^2-2", serde_json::json!([["5", "2"], ["2", "1"]])),
        ("x", serde_json::json!([["3"]])),
    ] {
        let start = Instant::now();
        let v = ok_json(&["pipeline-field", p]);
        assert!(start.elapsed() < Duration::from_secs(10), "{p} too slow");
        assert_eq!(v["matrix"], q, "{p}");
        assert_eq!(v["thurston"]["verdict"], "pseudoAnosov");
        assert_eq!(v["field_equality"]["equal"], true);
        assert_eq!(v["veech"]["totally_real"], true);
    }
    let v = ok_json(&["pipeline-field", "x^3-3x-1", "--unit", "a", "--unit", "a+1"]);
    assert_eq!(v["field_equality"]["degree"], 3);
    assert_eq!(v["field_equality"]["equal"], true);
}

#[test]
fn precision_sets_digits() {
    let v = ok_json(&["--precision", "1e-4", "classify", "x^2-3x+1"]);
    assert_eq!(v["salem_root"]["decimal"], "2.6180");
}

#[test]
fn exit_codes() {
    for args in [
        &["classify", "x^^2"][..],
        &["surface", "--matrix", "[[1,2],[2,4]]"],
        &["surface", "--matrix", "[[1,2]"],
        &["certify", "x^2+1"],
        &["pipeline-field", "x^2+1"],
        &["pipeline-field", "x^3-3x-1"],
        &["thurston", "--matrix", "[[1,0],[0,1]]", "--pf-product"],
        &["--entry-floor", "0", "classify", "x-2"],
    ] {
        let out = salem(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    let out = salem(&["--search-bound", "1", "certify", "x^4-10x^3+10x^2-10x+1"]);
    assert_eq!(out.status.code(), Some(3));
    let out = salem(&["--max-power", "1", "--entry-floor", "2", "certify", "x^4-x^3-x^2-x+1"]);
    assert_ne!(out.status.code(), Some(0));
}
