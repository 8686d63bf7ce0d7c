//! End-to-end tests of the `eqsurf` binary: JSON shape, exit codes,
//! determinism, and file export.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqsurf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is one JSON document")
}

#[test]
fn surface_reports_and_matches_oracle() {
    let out = run(&["surface", "3", "4", "plain"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["outputs"]["top_type"]["genus"], 3);
    assert_eq!(v["outputs"]["boundary_count"], 1);
    assert_eq!(v["outputs"]["orbifold"], "(0:12,4,3)");
    assert_eq!(v["outputs"]["oracle"]["matches"], true);
    // summary goes to stderr unless --quiet
    assert!(!out.stderr.is_empty());
    let quiet = run(&["surface", "3", "4", "plain", "--quiet"]);
    assert!(quiet.stderr.is_empty());

    let out = run(&["surface", "2", "2", "minus"]);
    let v = stdout_json(&out);
    assert_eq!(v["outputs"]["orbifold"], "(0:4,4,2)");
}

#[test]
fn surface_json_is_deterministic() {
    let a = run(&["surface", "5", "6", "plain", "--quiet"]);
    let b = run(&["surface", "5", "6", "plain", "--quiet"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["classify", "5", "8", "(0:8,8,4,2)", "--quiet"]);
    let b = run(&["classify", "5", "8", "(0:8,8,4,2)", "--quiet"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn degenerate_spec_exits_3() {
    let out = run(&["surface", "1", "1", "minus"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    let v = stderr_json(&out);
    assert_eq!(v["error"]["kind"], "degenerate_spec");
}

#[test]
fn parse_errors_exit_2() {
    // clap-level failure
    let out = run(&["surface", "3"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown variant
    let out = run(&["surface", "3", "4", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
    // malformed signature
    let out = run(&["classify", "2", "6", "6,6,3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_table_and_exceptions() {
    let out = run(&["classify", "2", "6", "(0:6,6,3)"]);
    let v = stdout_json(&out);
    assert_eq!(v["outputs"]["dgf"]["result"]["value"], 4);

    let out = run(&["classify", "1", "3", "(0:3,3,3)"]);
    let v = stdout_json(&out);
    assert_eq!(v["outputs"]["dgf"]["result"]["value"], 5);

    let out = run(&["classify", "5", "8", "(0:8,8,4,2)"]);
    let v = stdout_json(&out);
    assert_eq!(v["outputs"]["dgf"]["result"]["value"], 6);
    assert_eq!(v["outputs"]["dhat"]["lower"], 6);
    assert_eq!(v["outputs"]["dhat"]["upper"], 6);
    assert!(v["provenance"].as_array().unwrap().len() >= 2);
}

#[test]
fn classify_rh_failure_reports_exact_defect() {
    let out = run(&["classify", "3", "6", "(0:6,6,3)"]);
    assert_eq!(out.status.code(), Some(3));
    let v = stderr_json(&out);
    assert_eq!(v["error"]["kind"], "invalid_datum");
    assert_eq!(v["error"]["detail"]["riemann_hurwitz_defect"], "-2");
}

#[test]
fn realize_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_arg = dir.path().join("run");
    let out = run(&[
        "realize",
        "2",
        "3",
        "plain",
        "--resolution",
        "8",
        "--out",
        out_arg.to_str().unwrap(),
        "--quiet",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["outputs"]["plan"]["ambient_dim"], 6);
    assert!(v["outputs"]["equivariance_residual"].as_f64().unwrap() < 1e-9);
    let cloud = std::fs::read_to_string(out_arg.join("cloud.txt")).unwrap();
    let first = cloud.lines().next().unwrap();
    // patch_id u v x1 .. x7
    assert_eq!(first.split_whitespace().count(), 3 + 7);
    let mesh = std::fs::read_to_string(out_arg.join("surface_s3.obj")).unwrap();
    assert!(mesh.lines().any(|l| l.starts_with("v ")));
    assert!(mesh.lines().any(|l| l.starts_with("f ")));
}

#[test]
fn realize_no_plan_exits_4() {
    let out = run(&["realize", "4", "6", "plain"]);
    assert_eq!(out.status.code(), Some(4));
    let v = stderr_json(&out);
    assert_eq!(v["error"]["kind"], "no_plan");
}

#[test]
fn family_command() {
    let out = run(&["family", "3", "3"]);
    let v = stdout_json(&out);
    assert_eq!(v["outputs"]["record"]["genus"], 46);
    assert_eq!(v["outputs"]["dgf"]["value"], 7);
    assert_eq!(v["outputs"]["embedding"]["ambient_dim"], 7);

    let out = run(&["family", "4", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn trace_command_and_mirror() {
    let out = run(&["trace", "3", "4", "plain"]);
    let v = stdout_json(&out);
    assert_eq!(v["outputs"]["euler_char"], -5);
    assert_eq!(v["outputs"]["cycles"][0]["homology_class"][0], 3);

    let out = run(&["trace", "3", "4", "plain", "--mirror"]);
    let v = stdout_json(&out);
    assert_eq!(v["outputs"]["cycles"][0]["homology_class"][0], -3);
    assert_eq!(v["outputs"]["genus"], 3);
}
