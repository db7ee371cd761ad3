use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arcstraight"))
        .args(args)
        .env("ARCSTRAIGHT_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn expand_two_by_two_determinant() {
    let out = run(&["expand", "--minor", "0:(1,2|1,2)"]);
    assert_eq!(out.status.code(), Some(0));
    let terms = stdout_json(&out);
    let terms = terms.as_array().unwrap();
    assert_eq!(terms.len(), 2);
    let coeffs: Vec<&str> = terms.iter().map(|t| t["coeff"].as_str().unwrap()).collect();
    assert_eq!(coeffs, ["1", "-1"]);
}

#[test]
fn straighten_swaps_into_a_single_standard_term() {
    let out = run(&["straighten", "--p", "2", "--q", "2", "--h", "1", "--product", "0:(1|2),0:(2|1)"]);
    assert_eq!(out.status.code(), Some(0));
    let expected = json!([{"coeff": "1", "product": [
        {"wt": 0, "rows": [1], "cols": [1]},
        {"wt": 0, "rows": [2], "cols": [2]},
    ]}]);
    assert_eq!(stdout_json(&out), expected);

    let oracle = run(&["straighten", "--p", "2", "--q", "2", "--h", "1", "--product", "0:(1|2),0:(2|1)", "--oracle"]);
    assert_eq!(oracle.stdout, out.stdout);
}

#[test]
fn check_all_passes_at_small_scale() {
    let out = run(&["check", "all", "--p", "2", "--q", "2", "--h", "1", "--max-degree", "3", "--max-weight", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report = stdout_json(&out);
    assert_eq!(report["passed"], json!(true));
    assert_eq!(report["reports"].as_array().unwrap().len(), 8);
}

#[test]
fn dims_csv_agrees_row_by_row() {
    let out = run(&["dims", "--p", "2", "--q", "3", "--h", "1", "--max-degree", "2", "--max-weight", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("degree,weight,standard,graded_dim"));
    let rows: Vec<Vec<u64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r[2] == r[3]));
}

#[test]
fn basis_lists_standard_products() {
    let out = run(&["basis", "--p", "2", "--q", "2", "--h", "1", "--degree", "2", "--weight", "0", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 9);
    assert!(!text.contains("0:(1|2),0:(2|1)"));
}

#[test]
fn output_is_deterministic() {
    let args = ["check", "calculus", "--seed", "11"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["expand", "--minor", "0:(1,2|1)"]).status.code(), Some(1));
    assert_eq!(run(&["check", "nonsense"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["dims", "--format", "yaml"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    // product larger than the rank bound
    assert_eq!(run(&["straighten", "--h", "1", "--product", "0:(1,2|1,2)"]).status.code(), Some(1));

    let bad_threads = Command::new(env!("CARGO_BIN_EXE_arcstraight"))
        .args(["check", "sft"])
        .env("ARCSTRAIGHT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad_threads.status.code(), Some(1));
}
