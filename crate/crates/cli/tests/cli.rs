use std::process::{Command, Output};

use serde_json::Value;

fn jacobi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacobi"))
        .args(args)
        .env_remove("JACOBI_CATALOG_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let o = jacobi(args);
    (serde_json::from_slice(&o.stdout).expect("json report"), o.status.code().unwrap())
}

fn verdict_of<'a>(v: &'a Value, name: &str) -> &'a str {
    v["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["name"] == name)
        .unwrap_or_else(|| panic!("no record {name}"))["verdict"]
        .as_str()
        .unwrap()
}

#[test]
fn catalog_show_prints_table_brackets() {
    let o = jacobi(&["catalog", "show", "III"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("[X1, X2] = -X2 - X3"), "{out}");
    assert!(out.contains("[X1, X3] = -X2 - X3"), "{out}");
}

#[test]
fn catalog_list_has_all_algebras() {
    let (v, code) = json(&["catalog", "list", "--json"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["data"].as_array().unwrap().iter().map(|a| a["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["A1", "A2", "I", "II", "III", "IV", "V", "VI0", "VIa", "VII0", "VIIa", "VIII", "IX"]);
}

#[test]
fn verify_table_iii_all_pass() {
    let (v, code) = json(&["verify-table", "--algebra", "III", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["family_rows"], 3);
    let recs = v["records"].as_array().unwrap();
    let fams = recs.iter().filter(|r| r["name"].as_str().unwrap().starts_with("III family")).count();
    let classes = recs.iter().filter(|r| r["name"].as_str().unwrap().starts_with("III class")).count();
    assert_eq!((fams, classes), (3, v["data"]["class_rows"].as_u64().unwrap() as usize));
    assert!(recs.iter().all(|r| r["verdict"] == "pass"));
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn verify_table_covers_every_row_once() {
    let (v, code) = json(&["verify-table", "--json"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = v["records"].as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    let mut keys: Vec<String> = names.iter().map(|n| n.split(':').next().unwrap().to_string()).collect();
    let total = keys.len();
    keys.sort();
    keys.dedup();
    assert_eq!(keys.len(), total);
    let rows = jacobi_core::jacobi_alg::table_rows().unwrap();
    assert_eq!(total, rows.len());
}

#[test]
fn example_6_json_has_bracket_verdicts() {
    let (v, code) = json(&["example", "6", "--json"]);
    assert_eq!(code, 0);
    for name in ["{f1, f3} = -f2", "{f2, f3} = f1"] {
        assert_ne!(verdict_of(&v, name), "fail");
    }
    assert_eq!(v["data"]["group"], "VII0");
}

#[test]
fn output_is_deterministic_for_a_seed() {
    let a = jacobi(&["--seed", "7", "example", "5", "--json"]);
    let b = jacobi(&["--seed", "7", "example", "5", "--json"]);
    assert_eq!(a.stdout, b.stdout);
    let a = jacobi(&["check-manifold", "--example", "4"]);
    let b = jacobi(&["check-manifold", "--example", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn golden_verify_table_json() {
    let o = jacobi(&["verify-table", "--algebra", "III", "--json"]);
    let golden = include_str!("golden/verify_table_iii.json");
    assert_eq!(stdout(&o), golden);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(jacobi(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(jacobi(&["example"]).status.code(), Some(2));
    assert_eq!(jacobi(&["catalog", "show", "XIV"]).status.code(), Some(2));
    assert_eq!(jacobi(&["example", "9"]).status.code(), Some(2));
    assert_eq!(jacobi(&["solve", "--algebra", "II", "--bind", "q=1"]).status.code(), Some(2));
}

#[test]
fn failed_check_exits_1() {
    // 2c and 2c' of III are distinct classes.
    let o = jacobi(&["equivalence", "--algebra", "III", "--from", "2c", "--to", "2c'"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("[fail]"));
}

#[test]
fn equivalence_finds_witness() {
    let (v, code) = json(&[
        "equivalence", "--algebra", "III", "--from", "2c", "--to", "2", "--bind", "lambda12=0", "--bind", "lambda13=2",
        "--bind", "lambda23=1", "--json",
    ]);
    assert_eq!(code, 0);
    assert!(v["data"]["witness"].is_array());
}

#[test]
fn solve_recovers_iii_instance() {
    let (v, code) = json(&[
        "solve", "--algebra", "III", "--bind", "e1=0", "--bind", "e2=-1", "--bind", "e3=1", "--bind", "lambda12=0",
        "--bind", "lambda23=0", "--nonzero", "lambda13", "--json",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["roots"], serde_json::json!(["lambda13 = 1"]));
}

#[test]
fn lift_and_manifold_checks_pass() {
    let (v, code) = json(&["lift", "--algebra", "II", "--row", "2c", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["lambda"]["13"], "x3");
    assert_eq!(v["data"]["lambda"]["23"], "1");
    let (v, code) = json(&["check-manifold", "--example", "3", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["records"].as_array().unwrap().len(), 8);
}

#[test]
fn bracket_and_hvf() {
    let (v, _) = json(&["bracket", "--example", "2", "--f", "x2", "--g", "(x2*x3 + x1)/(2*x2^2)", "--json"]);
    assert_eq!(v["data"]["bracket"], "x2^(-1)");
    let (v, _) = json(&["hvf", "--example", "2", "--f", "x2", "--json"]);
    assert_eq!(v["data"]["field"], serde_json::json!(["x2", "0", "1"]));
}

#[test]
fn grid_enumerate_ii_matches_tables() {
    let (v, code) = json(&["grid-enumerate", "--algebra", "II", "--min", "-1", "--max", "1", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["pass"], 1);
}

#[test]
fn check_structure_all_pass() {
    let (v, code) = json(&["check-structure", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["records"].as_array().unwrap().len(), 26);
}
