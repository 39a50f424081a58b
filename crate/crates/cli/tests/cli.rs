use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use predynkin_cli::{Problem, RawProblem};
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn fixtures() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(fixture(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    out.sort();
    out
}

fn predynkin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_predynkin"))
        .args(args)
        .env_remove(predynkin_cli::SIZE_CAP_VAR)
        .output()
        .unwrap()
}

fn result(op: &str, name: &str, extra: &[&str]) -> Value {
    let path = fixture(name);
    let mut args = vec![op, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = predynkin(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["operation"], op);
    doc["result"].clone()
}

fn labels(v: &Value) -> Vec<&str> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect()
}

fn row<'a>(table: &'a Value, event: &str) -> &'a Value {
    table.as_array().unwrap().iter().find(|r| r["event"] == event).unwrap()
}

#[test]
fn extend_reproduces_running_example_table() {
    let res = result("extend", "running_example.json", &[]);
    assert_eq!(res["extendable"], true);
    let table = &res["table"];
    assert_eq!(table.as_array().unwrap().len(), 16);
    let lower = [
        ("∅", "0"), ("1", "0"), ("2", "3/10"), ("3", "0"), ("4", "3/10"),
        ("12", "1/2"), ("34", "1/2"), ("13", "1/5"), ("24", "4/5"), ("14", "3/10"),
        ("23", "3/10"), ("123", "1/2"), ("124", "4/5"), ("134", "1/2"), ("234", "4/5"),
        ("1234", "1"),
    ];
    for (e, lo) in lower {
        assert_eq!(row(table, e)["lower"], lo, "lower({e})");
    }
    assert_eq!(row(table, "1")["upper"], "1/5");
    assert_eq!(row(table, "14")["upper"], "7/10");
    assert_eq!(row(table, "234")["upper"], "1");
}

#[test]
fn blocks_of_d4_are_the_two_algebras() {
    let res = result("blocks", "d4.json", &[]);
    let blocks = res["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 2);
    assert_eq!(labels(&blocks[0]["events"]), ["∅", "12", "34", "1234"]);
    assert_eq!(labels(&blocks[1]["events"]), ["∅", "13", "24", "1234"]);
}

#[test]
fn hull_of_empty_system_is_trivial() {
    let res = result("hull", "empty_system.json", &[]);
    assert_eq!(labels(&res["hull"]), ["∅", "123"]);
    let res = result("hull", "hull_12_3.json", &[]);
    assert_eq!(res["size"], 8);
}

#[test]
fn findings_exit_zero() {
    let res = result("extendable", "non_extendable.json", &[]);
    assert_eq!(res["extendable"], false);
    assert!(res["falsifier"].is_object());
    let res = result("prevision-extend", "non_extendable.json", &[]);
    assert_eq!(res["extendable"], false);
    assert!(res["violation"].is_object());
    let res = result("inner-outer", "running_example.json", &[]);
    assert!(res["violations"].as_array().unwrap().iter().any(|v| v["kind"] == "subadditivity"));
}

#[test]
fn flags_override_the_file_and_show_in_the_echo() {
    let path = fixture("running_example.json");
    let out = predynkin(&["bayes", "--input", path.to_str().unwrap(), "--event", "1,4", "--cond", "34"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["input"]["event"], serde_json::json!([1, 4]));
    assert_eq!(doc["input"]["cond"], serde_json::json!([3, 4]));
    assert_eq!(doc["result"]["rows"][0]["event"], "14");

    let res = result("bayes", "running_example.json", &[]);
    assert_eq!(res["rows"][0]["upper"], "2/5");
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("syntax.json", "{\"ground\": 4,"),
        ("field.json", "{\"ground\": 4, \"colour\": 1}"),
        ("atom.json", "{\"ground\": 3, \"system\": [[1, 4]]}"),
        ("order.json", "{\"ground\": 3, \"system\": [[2, 1]]}"),
        ("rational.json", "{\"ground\": 2, \"psi\": [\"0.5\", \"1/2\"]}"),
        ("psi.json", "{\"ground\": 2, \"psi\": [\"1/2\"]}"),
    ];
    for (name, text) in cases {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        let op = if name == "psi.json" || name == "rational.json" { "certainty" } else { "hull" };
        let out = predynkin(&[op, path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let out = predynkin(&["hull", "/nonexistent/problem.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = predynkin(&["bayes", fixture("running_example.json").to_str().unwrap(), "--cond", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn size_limits_exit_three() {
    let path = fixture("running_example.json");
    let out = Command::new(env!("CARGO_BIN_EXE_predynkin"))
        .args(["extend", path.to_str().unwrap()])
        .env(predynkin_cli::SIZE_CAP_VAR, "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let big = dir.path().join("big.json");
    std::fs::write(&big, "{\"ground\": 17}").unwrap();
    assert_eq!(predynkin(&["hull", big.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn every_fixture_round_trips_through_its_echo() {
    for path in fixtures() {
        let text = std::fs::read_to_string(&path).unwrap();
        let original = Problem::from_json(&text).unwrap();
        let out = predynkin(&["certainty", path.to_str().unwrap()]);
        let doc: Value = if out.status.success() {
            serde_json::from_slice(&out.stdout).unwrap()
        } else {
            // operations needing psi fail on psi-free fixtures; use the library echo
            predynkin_cli::run("hull", &text, &Default::default())
                .or_else(|_| predynkin_cli::run("validate", &text, &Default::default()))
                .or_else(|_| predynkin_cli::run("prevision-extend", &text, &Default::default()))
                .unwrap()
        };
        let echo: RawProblem = serde_json::from_value(doc["input"].clone()).unwrap();
        assert_eq!(Problem::from_raw(&echo).unwrap(), original, "{}", path.display());
    }
}
