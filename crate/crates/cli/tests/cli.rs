//! End-to-end tests of the `skewberger` binary.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewberger"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn prolong_prints_the_dimension() {
    let out = run(&[
        "prolong", "--family", "so", "--n", "5", "--rep", "standard", "--kind", "skew", "--order",
        "1",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().next(), Some("dim 10"));
}

#[test]
fn prolong_writes_a_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("adjoint.json");
    let out = run(&[
        "prolong",
        "--family",
        "sl",
        "--n",
        "3",
        "--rep",
        "adjoint",
        "--kind",
        "skew",
        "--order",
        "2",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().next(), Some("dim 0"));
    let report = read_json(&path);
    assert_eq!(report["dim"], 0);
    assert_eq!(report["dim_order1"], 1);
    assert_eq!(report["order"], 2);
    assert_eq!(report["kind"], "skew");
}

#[test]
fn unknown_family_is_a_usage_error() {
    let out = run(&[
        "prolong", "--family", "e9", "--n", "8", "--kind", "skew", "--order", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("supported families"), "{err}");
    assert!(err.contains("so-split"), "{err}");
}

#[test]
fn skew_berger_reports_the_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sp2.json");
    let out = run(&[
        "skew-berger",
        "--family",
        "sp",
        "--n",
        "2",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("curvature dim 1"), "{text}");
    assert!(text.contains("skew-berger true"), "{text}");
    assert!(text.contains("symmetric true"), "{text}");
    let report = read_json(&path);
    assert_eq!(report["curvature_dim"], 1);
    assert_eq!(report["is_skew_berger"], true);
    assert_eq!(report["dimV"], 2);
}

#[test]
fn curvature_prints_the_dimension() {
    let out = run(&[
        "curvature", "--family", "u", "--n", "3", "--kind", "odd",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().next(), Some("dim 9"));
}

#[test]
fn holonomy_of_a_flat_metric_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("flat_m2.json");
    std::fs::write(
        &path,
        r#"{"m": 2, "g": [
            {"a": 1, "b": 3, "terms": [{"subset": [], "coeff": "1"}]},
            {"a": 2, "b": 4, "terms": [{"subset": [], "coeff": "1"}]}
        ]}"#,
    )
    .unwrap();
    let out = run(&[
        "holonomy",
        "--metric",
        path.to_str().unwrap(),
        "--debug-span",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("dim 0"));
    assert!(text.contains("unrestricted span dim 0"), "{text}");
}

#[test]
fn verify_exits_zero_when_all_checks_pass() {
    let out = run(&["verify", "--tables", "1-4", "--max-size", "4"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("0 failed"), "{text}");
    assert!(text.contains("t1-osp"), "{text}");
}

#[test]
fn verify_exits_nonzero_when_a_claim_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t8.json");
    let out = run(&[
        "verify",
        "--tables",
        "8",
        "--max-size",
        "4",
        "--jobs",
        "2",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    let report = read_json(&path);
    assert_eq!(report["rows"].as_array().unwrap().len(), 18);
    assert!(report["failed"].as_u64().unwrap() >= 1);
}

#[test]
fn catalog_prints_tables_in_both_formats() {
    let out = run(&["catalog", "--table", "7", "--format", "json"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["table"], 7);

    let out = run(&["catalog", "--table", "8", "--format", "text"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("catalog-only"));

    let out = run(&["catalog", "--table", "9"]);
    assert_eq!(out.status.code(), Some(2));
}
