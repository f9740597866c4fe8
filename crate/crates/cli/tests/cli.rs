use std::process::{Command, Output};

fn cliffqp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliffqp")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = cliffqp(&full);
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn degree4_counterexample_over_gf4() {
    let out = cliffqp(&["degree4-counterexample", "--ring", "gf4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS    degree4-counterexample n=2 ring=gf4"), "{text}");
    assert!(text.contains("4096 candidates, all moved"));
}

#[test]
fn classify_rank_three_over_gf2() {
    let doc = json(&["classify", "--n", "3", "--ring", "gf2"]);
    let report = &doc["reports"][0];
    assert_eq!(report["status"], "pass");
    assert_eq!(report["details"][0], "center-nontrivial");
    assert_eq!(doc["summary"]["passed"], 1);
}

#[test]
fn canonical_semitrace_skips_symplectic_rank_two() {
    let out = cliffqp(&["canonical-semitrace", "--n", "2", "--ring", "gf3", "--json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let report = &doc["reports"][0];
    assert_eq!(report["status"], "skipped");
    assert_eq!(report["details"][0], "involution symplectic, not orthogonal");
    assert_eq!(doc["summary"]["skipped"], 1);
}

#[test]
fn report_has_the_documented_keys() {
    let doc = json(&["polar", "--n", "2", "--ring", "gf3", "--seed", "7"]);
    let report = doc["reports"][0].as_object().unwrap();
    let mut keys: Vec<&str> = report.keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["check", "details", "elapsed_ms", "n", "ring", "seed", "status"]);
    assert_eq!(report["seed"], 7);
    assert_eq!(report["check"], "polar");
    assert_eq!(report["ring"], "gf3");
}

#[test]
fn output_is_reproducible() {
    let args = ["rho-xi", "--trials", "10", "--seed", "3", "--no-timing", "--json"];
    let a = cliffqp(&args);
    let b = cliffqp(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn reports_are_sorted_by_rank_and_ring() {
    let doc = json(&["classify", "--trials", "5"]);
    let keys: Vec<(u64, String)> = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["n"].as_u64().unwrap(), r["ring"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(keys.len(), 16);
    assert_eq!(keys[0], (2, "gf2".to_string()));
    assert_eq!(keys[3], (2, "q".to_string()));
    assert_eq!(keys[15], (5, "q".to_string()));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(cliffqp(&["no-such-check"]).status.code(), Some(2));
    assert_eq!(cliffqp(&["gram", "--ring", "gf7"]).status.code(), Some(2));
    assert_eq!(cliffqp(&[]).status.code(), Some(2));
}

#[test]
fn non_field_rings_are_skipped_or_run() {
    let doc = json(&["sl-into-alt", "--n", "3", "--ring", "z"]);
    assert_eq!(doc["reports"][0]["status"], "skipped");
    let doc = json(&["relations", "--n", "2", "--ring", "z", "--trials", "10"]);
    assert_eq!(doc["reports"][0]["status"], "pass");
}
