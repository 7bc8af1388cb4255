use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::NamedTempFile;

fn filiform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_filiform")).args(args).output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_filiform"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn file(content: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

fn params(beta: &[&str], gamma: &str) -> NamedTempFile {
    let doc = serde_json::json!({ "n": beta.len() + 2, "beta": beta, "gamma": gamma });
    file(&doc.to_string())
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn psi_text_and_json() {
    let o = filiform(&["psi", "--n", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("z5 - 5*y*z3*z4 + 5*y^2*z3^3"));
    let o = filiform(&["psi", "--n", "4", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["n"], 4);
}

#[test]
fn transform_example() {
    let p = params(&["1", "0", "0"], "0");
    let o = filiform(&["transform", "--A", "1", "--B", "1", "--D", "1", path(&p)]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["beta"], serde_json::json!(["1", "-2", "5"]));
    assert_eq!(v["gamma"], "0");
}

#[test]
fn negative_transform_values_are_accepted() {
    let p = params(&["1", "0", "0"], "0");
    let o = filiform(&["transform", "--A", "-1", "--B", "-1/2", "--D", "1", path(&p)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn check_on_a_representative_table() {
    let o = filiform(&["reps", "--dim", "5", "--family", "5", "--one-based"]);
    assert!(o.status.success());
    let rep = file(&stdout(&o));
    let o = filiform(&["check", path(&rep), "--one-based"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["leibniz"], true);
    assert_eq!(v["filiform"], true);
    assert_eq!(v["lie"], false);
}

#[test]
fn check_reports_a_violation() {
    // [e2,e2] = e1 with [e1,e1] = e2 breaks the Leibniz identity.
    let table = file(r#"{"dim":2,"products":[{"left":1,"right":1,"result":{"2":"1"}},{"left":2,"right":2,"result":{"1":"1"}}]}"#);
    let o = filiform(&["check", path(&table), "--one-based"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["leibniz"], false);
    assert!(v["first_violation"].is_object());
}

#[test]
fn reps_lists_every_family() {
    let o = filiform(&["reps", "--dim", "6", "--lambda", "2"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 12);
    assert_eq!(v[0]["lambda"], "2");
    assert_eq!(v[0]["params"]["beta"][2], "2");
}

#[test]
fn iso_exit_codes() {
    let (p, q) = (params(&["1", "0"], "1"), params(&["1", "0"], "2"));
    let o = filiform(&["iso", path(&p), path(&p)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["answer"], "isomorphic");
    let o = filiform(&["iso", path(&p), path(&q)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["answer"], "not_isomorphic");
    let outside = params(&["0", "1", "0", "0"], "1");
    let o = filiform(&["iso", path(&outside), path(&outside)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_and_pipeline() {
    let p = params(&["2", "1", "3"], "5");
    let o = filiform(&["classify", path(&p)]);
    assert!(o.status.success());
    let direct = json(&o);
    let moved = filiform(&["transform", "--A", "3", "--B", "-2", "--D", "1/2", path(&p)]);
    let q = file(&stdout(&moved));
    let o = filiform(&["classify", path(&q)]);
    assert!(o.status.success());
    assert_eq!(json(&o)["representative"], direct["representative"]);
}

#[test]
fn invariants_report() {
    let p = params(&["1", "0", "0", "1", "0"], "1");
    let o = filiform(&["invariants", path(&p), "--closed"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert!(v["closed_forms"].is_array());
}

#[test]
fn stdin_input() {
    let o = with_stdin(&["transform", "--A", "1", "--B", "0", "--D", "2", "-"], r#"{"n":3,"beta":["1"],"gamma":"1"}"#);
    assert!(o.status.success());
    assert_eq!(json(&o)["gamma"], "4");
}

#[test]
fn audit_is_byte_reproducible() {
    let a = filiform(&["audit", "--dim", "5", "--samples", "4", "--seed", "9"]);
    let b = filiform(&["audit", "--dim", "5", "--samples", "4", "--seed", "9", "--sequential"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn error_exit_codes_are_distinct() {
    let bad = file(r#"{"n":4,"beta":["1/0","1"],"gamma":"0"}"#);
    let malformed = filiform(&["transform", "--A", "1", "--B", "0", "--D", "1", path(&bad)]);
    assert_eq!(malformed.status.code(), Some(3));
    let o = filiform(&["transform", "--A", "0", "--B", "0", "--D", "1", path(&params(&["1"], "0"))]);
    assert_eq!(o.status.code(), Some(3));

    let (p, q) = (params(&["1", "0"], "1"), params(&["1", "0", "0"], "1"));
    let mismatch = filiform(&["iso", path(&p), path(&q)]);
    assert_eq!(mismatch.status.code(), Some(4));
    let o = filiform(&["classify", path(&params(&["1"], "1"))]);
    assert_eq!(o.status.code(), Some(4));

    // The dimension-7 closed forms divide by W, which vanishes here; the
    // message names the polynomial.
    let outside = params(&["1", "0", "0", "0", "0"], "0");
    let o = filiform(&["invariants", path(&outside), "--closed"]);
    assert_eq!(o.status.code(), Some(5));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("2*beta3^2*beta6 - 6*beta3*beta4*beta5 + beta4*gamma + 4*beta4^3"), "{err}");

    let o = filiform(&["classify", "/nonexistent/params.json"]);
    assert_eq!(o.status.code(), Some(6));
    let o = filiform(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(7));
}
