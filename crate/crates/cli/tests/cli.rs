use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kapranov"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn fails(args: &[&str]) -> String {
    let out = run(args);
    assert!(!out.status.success(), "{args:?} unexpectedly succeeded");
    assert!(out.stdout.is_empty());
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn fan_with_oracle() {
    let v = json_ok(&["fan", "5", "--oracle"]);
    assert_eq!(v["fans_equal"], true);
    assert_eq!(v["fan"]["rays"].as_array().unwrap().len(), 6);
    assert_eq!(v["fan"]["max_cones"].as_array().unwrap().len(), 6);

    let v = json_ok(&["fan", "--n", "6", "--oracle"]);
    assert_eq!(v["fans_equal"], true);
    assert_eq!(v["fan"]["rays"].as_array().unwrap().len(), 14);
    assert_eq!(v["fan"]["max_cones"].as_array().unwrap().len(), 24);
    assert_eq!(v["validation"]["complete"], true);

    let v = json_ok(&["fan", "5"]);
    assert!(v.get("fans_equal").is_none());
}

#[test]
fn fan_guardrails() {
    assert!(fails(&["fan", "3"]).contains("n = 3"));
    fails(&["fan", "10"]);
    fails(&["fan"]);
    fails(&["fan", "5", "--n", "5"]);
}

#[test]
fn h0_examples() {
    for (n, j, want) in [("6", "1,2", 2), ("5", "", 3), ("7", "1", 4)] {
        let v = json_ok(&["h0", n, "--j", j]);
        assert_eq!(v["h0_lattice"], want);
        assert_eq!(v["h0_formula"], want);
        assert_eq!(v["agree"], true);
    }
    fails(&["h0", "6", "--j", "5"]);
    fails(&["h0", "6", "--j", "1,2,3"]);
    fails(&["h0", "6", "--j", "1,x"]);
    fails(&["h0", "8"]);
}

#[test]
fn reps_examples() {
    for (n, j, want) in [("6", "", 10), ("6", "1,2", 3), ("7", "1,2,3", 3)] {
        let v = json_ok(&["reps", "--n", n, "--j", j]);
        assert_eq!(v["count"], want);
        assert_eq!(v["expected"], want);
        assert_eq!(v["agree"], true);
        assert_eq!(v["representations"].as_array().unwrap().len(), want as usize);
    }
}

#[test]
fn plucker_reports() {
    let v = json_ok(&["plucker", "6"]);
    assert_eq!(v["all_verified"], true);
    let reports = v["reports"].as_array().unwrap();
    let ranks: Vec<_> = reports.iter().map(|r| r["plucker_rank"].as_u64().unwrap()).collect();
    assert_eq!(ranks, [6, 3, 1]);
    assert_eq!(reports[2]["monomial_count"], 3);
    assert_eq!(json_ok(&["plucker"]), v);

    assert!(fails(&["plucker", "7"]).contains("scope"));
}

#[test]
fn classes_table() {
    let v = json_ok(&["classes", "5"]);
    let table = v["classes"].as_array().unwrap();
    assert_eq!(table.len(), 10);
    assert_eq!(table[0]["side"], serde_json::json!([1, 2]));
    assert_eq!(table[0]["class"]["h"], 1);
}

#[test]
fn output_is_deterministic() {
    for args in [&["reps", "6", "--j", "1"][..], &["fan", "6", "--oracle"], &["classes", "6"]] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
    let compact = json_ok(&["h0", "6"]);
    let pretty = json_ok(&["h0", "6", "--format", "pretty"]);
    assert_eq!(compact, pretty);
}
