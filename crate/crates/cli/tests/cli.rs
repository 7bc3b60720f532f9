use std::process::{Command, Output};

use serde_json::Value;

fn zkerov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zkerov"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = zkerov(&all);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (doc, out.status.code().unwrap())
}

#[test]
fn coeff_examples() {
    let (doc, code) = json(&["coeff", "--n", "3", "--mu", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["coefficient"], "4");
    assert_eq!(doc["rawCount"], "4");
    assert_eq!(doc["vertexCount"], 2);
    assert_eq!(doc["doubledGenus"], 2);

    let (doc, code) = json(&["coeff", "--n", "6", "--mu", "2,3", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(doc["coefficient"], "143");
    assert_eq!(doc["mu"], serde_json::json!([3, 2]));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["coeff", "--n", "3", "--mu", "1,2"][..],
        &["coeff", "--n", "3"],
        &["expand"],
        &["expand", "--n", "0"],
        &["expand", "--n", "9"],
        &["expand", "--n", "3", "--threads", "0"],
        &["frobnicate"],
        &["coeff", "--n", "x", "--mu", "2"],
    ] {
        assert_eq!(zkerov(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn expand_examples() {
    let (doc, code) = json(&["expand", "--n", "2"]);
    assert_eq!(code, 0);
    let genera = doc["genera"].as_array().unwrap();
    assert_eq!(genera.len(), 2);
    assert_eq!(genera[0]["terms"][0]["monomial"], "R_3");
    assert_eq!(genera[0]["terms"][0]["coefficient"], "4");
    assert_eq!(genera[1]["genus"], "1/2");
    assert_eq!(genera[1]["terms"][0]["coefficient"], "-2");

    let (doc, _) = json(&["expand", "--n", "3", "--genus-doubled", "2"]);
    assert_eq!(doc["genera"][0]["terms"][0]["coefficient"], "4");
    assert_eq!(doc["genera"][0]["terms"].as_array().unwrap().len(), 1);

    let (doc, code) = json(&["expand", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["genera"].as_array().unwrap().len(), 1);
    assert_eq!(doc["genera"][0]["doubledGenus"], 0);
}

#[test]
fn inexact_rescaling_exits_three() {
    let (doc, code) = json(&["expand", "--n", "6"]);
    assert_eq!(code, 3);
    let genus = doc["genera"]
        .as_array()
        .unwrap()
        .iter()
        .find(|g| g["doubledGenus"] == 3)
        .unwrap();
    assert_eq!(genus["terms"][0]["rawCount"], "701");
    assert_eq!(genus["terms"][0]["coefficient"], "-701/2");
}

#[test]
fn expand_is_byte_identical_across_thread_counts() {
    let one = zkerov(&["expand", "--n", "6", "--format", "json", "--threads", "1"]);
    let eight = zkerov(&["expand", "--n", "6", "--format", "json", "--threads", "8"]);
    assert!(!one.stdout.is_empty());
    assert_eq!(one.stdout, eight.stdout);
}

#[test]
fn genus1_examples() {
    let (doc, code) = json(&["genus1", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(doc["terms"][0]["mu"], serde_json::json!([3]));
    assert_eq!(doc["terms"][0]["coefficient"], "21");
    assert_eq!(doc["verified"], Value::Null);

    let out = zkerov(&["genus1", "--n", "8", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("verified"));

    let (doc, code) = json(&["genus1", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(doc["terms"].as_array().unwrap().is_empty());
}

#[test]
fn census_examples() {
    let (doc, code) = json(&["census", "--n", "3", "--genus-doubled", "2", "--bipartite"]);
    assert_eq!(code, 0);
    let shape: Vec<(u64, u64)> = doc["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            (
                c["orbitSize"].as_u64().unwrap(),
                c["stabilizerOrder"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(shape, vec![(3, 1), (1, 3)]);

    let (doc, code) = json(&["census", "--reduced", "--twisted", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(doc["classCount"], 5);

    let (doc, code) = json(&["census", "--reduced", "--contributing", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(doc["classCount"], 7);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let (first, code) = json(&["expand", "--n", "4", "--cache", path]);
    assert_eq!(code, 0);
    assert!(dir.path().join("zkerov-cache-v1-n4.json").exists());
    let (second, _) = json(&["expand", "--n", "4", "--cache", path]);
    assert_eq!(first, second);
    let (c, _) = json(&["coeff", "--n", "4", "--mu", "3", "--cache", path]);
    assert_eq!(c["coefficient"], "21");

    std::fs::write(dir.path().join("zkerov-cache-v1-n4.json"), "{").unwrap();
    assert_eq!(
        zkerov(&["expand", "--n", "4", "--cache", path])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn selftest_reports_every_criterion() {
    let (doc, code) = json(&["selftest", "--max-n", "5"]);
    assert_eq!(code, 0, "{doc}");
    assert_eq!(doc["criteria"].as_array().unwrap().len(), 11);
    assert_eq!(doc["passed"], true);
}

#[test]
fn selftest_default_range() {
    let out = zkerov(&["selftest", "--max-n", "6"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.lines().count(), 11);
    assert_eq!(out.status.code(), Some(0), "{text}");
}
