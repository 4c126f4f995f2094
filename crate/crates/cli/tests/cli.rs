use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(format!("{name}.psoset"))
}

fn trellis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trellis")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = trellis(&all);
    let v: Value = serde_json::from_slice(&o.stdout).expect("valid json");
    assert_eq!(v["schema"], "trellis-report");
    assert_eq!(v["version"], 1);
    (code(&o), v)
}

fn write_temp(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn validate_reports_pseudo_order_violations() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "bad.psoset", "psoset 1\nelements p q\nrelation\n1 1\n1 1\n");
    let (c, v) = json(&["validate", &f]);
    assert_eq!(c, 2);
    assert_eq!(v["ok"], false);
    assert_eq!(v["pseudo_order"]["valid"], false);
    let text = v["pseudo_order"]["violations"].to_string();
    assert!(text.contains('p') && text.contains('q'), "{text}");
}

#[test]
fn validate_flags_a_wrong_meet_table() {
    let dir = tempfile::tempdir().unwrap();
    let good = "psoset 1\nelements 0 x 1\nrelation\n1 1 1\n0 1 1\n0 0 1\n";
    let f = write_temp(&dir, "ok.psoset", &format!("{good}meet\n0 0 0\n0 x x\n0 x 1\n"));
    assert_eq!(code(&trellis(&["validate", &f])), 0);
    let f = write_temp(&dir, "wrong.psoset", &format!("{good}meet\n0 0 0\n0 x 0\n0 x 1\n"));
    let (c, v) = json(&["validate", &f]);
    assert_eq!(c, 2);
    assert!(v["table_problems"][0].as_str().unwrap().contains("meet(x, 1)"));
}

#[test]
fn input_errors_exit_3() {
    let o = trellis(&["validate", "/no/such/file.psoset"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));

    let dir = tempfile::tempdir().unwrap();
    let f = write_temp(&dir, "broken.psoset", "psoset 1\nelements a b\nrelation\n1 x\n0 1\n");
    let (c, v) = json(&["structure", &f]);
    assert_eq!(c, 3);
    assert_eq!(v["error"]["kind"], "input");

    let cycle8 = fixture("cycle8");
    let (c, _) = json(&["construct", cycle8.to_str().unwrap(), "--method", "lambda:nothing"]);
    assert_eq!(c, 3);
    let (c, _) = json(&["construct", cycle8.to_str().unwrap(), "--method", "spline"]);
    assert_eq!(c, 3);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&trellis(&["frobnicate"])), 64);
    assert_eq!(code(&trellis(&["construct", "x.psoset"])), 64);
    assert_eq!(code(&trellis(&["--help"])), 0);
}

#[test]
fn precondition_failures_exit_4() {
    let table1 = fixture("table1");
    let (c, v) = json(&["enumerate", table1.to_str().unwrap()]);
    assert_eq!(c, 4);
    assert_eq!(v["error"]["kind"], "precondition");
    let (c, _) = json(&["construct", table1.to_str().unwrap(), "--method", "drastic"]);
    assert_eq!(c, 4);
    let cycle8 = fixture("cycle8");
    let (c, _) = json(&["construct", cycle8.to_str().unwrap(), "--method", "coatom:b"]);
    assert_eq!(c, 4);
}

#[test]
fn classify_lists_class_subsets_by_name() {
    let (c, v) = json(&["classify", fixture("cycle8").to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(v["subsets"]["rtr"], serde_json::json!(["0", "a", "d", "1"]));
    assert_eq!(v["subsets"]["mtr"], serde_json::json!(["0", "a", "d", "e", "1"]));
    let d = &v["elements"][4];
    assert_eq!(d["name"], "d");
    assert_eq!(d["classes"], serde_json::json!(["rtr", "mtr"]));
}

#[test]
fn structure_reports_cycles_and_the_zero_tnorm_condition() {
    let (c, v) = json(&["structure", fixture("cycle8").to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(v["maximal_cycles"], serde_json::json!([["b", "c", "e", "f"]]));
    assert_eq!(v["co_atoms"], serde_json::json!(["d"]));
    assert_eq!(v["kind"]["lattice"], false);
    assert_eq!(v["zero_tnorm_condition"]["holds"], false);
    assert_eq!(v["diagram"]["back"], serde_json::json!([["f", "b"]]));
}

#[test]
fn construct_checks_the_table_it_builds() {
    let cycle8 = fixture("cycle8");
    let f = cycle8.to_str().unwrap();
    let (c, v) = json(&["construct", f, "--method", "z"]);
    assert_eq!(c, 2, "the zero t-norm fails on the cycle fixture");
    assert_eq!(v["check"]["is_tnorm"], false);
    assert_eq!(v["check"]["associative"]["holds"], false);

    let (c, lam) = json(&["construct", f, "--method", "lambda:rtr"]);
    assert_eq!(c, 0);
    let (_, int) = json(&["construct", f, "--method", "interior:lambda_rtr"]);
    let (_, with_v) = json(&["construct", f, "--method", "lambda:rtr:V=Trtr"]);
    assert_eq!(lam["table"], int["table"]);
    assert_eq!(lam["table"], with_v["table"]);
    assert_eq!(lam["table"][7][2], "b");
    assert_eq!(lam["table"][2][3], "a");

    let (c, _) = json(&["construct", f, "--method", "lambda:mtr", "--unchecked"]);
    assert_eq!(c, 4, "mtr holds elements that are not right-transitive");
}

#[test]
fn unchecked_lambda_reproduces_a_failing_table() {
    let modular7 = fixture("modular7");
    let f = modular7.to_str().unwrap();
    let (c, _) = json(&["construct", f, "--method", "lambda:rtr"]);
    assert_eq!(c, 4, "rtr is not a sub-trellis here");
    let (c, v) = json(&["construct", f, "--method", "lambda:rtr", "--unchecked"]);
    assert_eq!(c, 2);
    assert_eq!(v["unchecked"], true);
    assert_eq!(v["check"]["is_tnorm"], false);
    assert_eq!(v["check"]["increasing"]["holds"], false);
}

#[test]
fn enumerate_matches_the_order_and_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("order.dot");
    let o = trellis(&["enumerate", fixture("chain5").to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("greatest T"), "{out}");
    let graph = std::fs::read_to_string(&dot).unwrap();
    assert!(graph.starts_with("digraph"));
    assert!(graph.contains("\"T1\""));

    let (c, v) = json(&["enumerate", fixture("nogreatest7").to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(v["greatest"], Value::Null);
    assert_eq!(v["maximal"].as_array().unwrap().len(), 2);
    assert_eq!(v["count"], v["tnorms"].as_array().unwrap().len());
}

#[test]
fn enumerate_limits_exit_5_with_partial_output() {
    let f = fixture("modular8");
    let (c, v) = json(&["enumerate", f.to_str().unwrap(), "--limit", "3"]);
    assert_eq!(c, 5);
    assert_eq!(v["complete"], false);
    assert_eq!(v["count"], 3);
    assert_eq!(v["error"]["kind"], "limit");
    let (c, _) = json(&["enumerate", f.to_str().unwrap(), "--cap", "5"]);
    assert_eq!(c, 5);
}

#[test]
fn dot_output_for_the_carrier() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("c.dot");
    let o = trellis(&["structure", fixture("cycle8").to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let graph = std::fs::read_to_string(&dot).unwrap();
    assert!(graph.contains("\"f\" -> \"b\" [constraint=false];"), "{graph}");
}

#[test]
fn verify_paper_passes_every_criterion() {
    let (c, v) = json(&["verify-paper"]);
    assert_eq!(c, 0);
    let items = v["criteria"].as_array().unwrap();
    assert_eq!(items.len(), 10);
    assert!(items.iter().all(|i| i["passed"] == true));
    assert_eq!(code(&trellis(&["verify-paper", "--dot", "x.dot"])), 3);
}
