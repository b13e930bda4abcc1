use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_circle-actions"))
}

fn write(dir: &TempDir, name: &str, doc: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, serde_json::to_string(doc).unwrap()).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn three_gap_model() -> Value {
    json!({
        "K": [["0", "0"], ["1/4", "1/4"], ["3/8", "1/2"], ["3/4", "1"]],
        "lambda": ["-1", "+1", "-1"]
    })
}

#[test]
fn decide_same_gapset_opposite_signs() {
    let dir = TempDir::new().unwrap();
    let left = write(&dir, "l.json", &json!({"K": [["0", "0"], ["1", "1"]], "lambda": ["+1"]}));
    let right = write(&dir, "r.json", &json!({"K": [["0", "0"], ["1", "1"]], "lambda": ["-1"]}));
    let out = run(&["decide", "--left", s(&left), "--right", s(&right)]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["conjugate"], json!(true));
    assert_eq!(doc["orientation"], json!("increasing"));
    assert!(doc["witness"].is_object());
    assert!(!doc["test_family"].as_array().unwrap().is_empty());
}

#[test]
fn decide_then_verify() {
    let dir = TempDir::new().unwrap();
    let left = write(&dir, "l.json", &three_gap_model());
    let right = write(
        &dir,
        "r.json",
        &json!({"K": [["0", "1/4"], ["1/2", "5/8"], ["3/4", "3/4"], ["1", "1"]], "lambda": ["+1", "+1", "-1"]}),
    );
    let verdict = run(&["decide", "--left", s(&left), "--right", s(&right)]);
    let doc = stdout_json(&verdict);
    assert_eq!(doc["orientation"], json!("decreasing"));
    let witness = write(&dir, "w.json", &doc);
    let out = run(&["verify", "--witness", s(&witness), "--left", s(&left), "--right", s(&right), "--grid", "8"]);
    let report = stdout_json(&out);
    assert_eq!(report["verified"], json!(true));
    assert_eq!(report["points"], json!(64));
}

#[test]
fn eval_identity() {
    let dir = TempDir::new().unwrap();
    let map = write(&dir, "id.json", &json!({"breakpoints": [["0", "0"]]}));
    let out = run(&["eval", "--map", s(&map), "--point", "1/3"]);
    assert_eq!(stdout_json(&out), json!("1/3"));
}

#[test]
fn act_on_annulus_and_poles() {
    let dir = TempDir::new().unwrap();
    let rot = write(&dir, "rot.json", &json!({"breakpoints": [["0", "1/4"]]}));
    let data = write(&dir, "k.json", &three_gap_model());
    let out = run(&["act", "--model", "phi", "--data", s(&data), "--map", s(&rot), "--point", "1/2,1/4"]);
    assert_eq!(stdout_json(&out), json!(["1/2", "1/2"]));
    let out = run(&["act", "--model", "phi-sphere", "--data", s(&data), "--map", s(&rot), "--point", "north"]);
    assert_eq!(stdout_json(&out), json!("north"));
    let out = run(&["act", "--model", "a-minus", "--map", s(&rot), "--point", "1/3,0"]);
    assert_eq!(stdout_json(&out), json!(["1/3", "1/4"]));
}

#[test]
fn recover_annulus_reproduces_fixture() {
    let dir = TempDir::new().unwrap();
    let mut fixture = three_gap_model();
    fixture["model"] = json!("phi");
    let path = write(&dir, "fx.json", &fixture);
    let doc = stdout_json(&run(&["recover-annulus", "--oracle", s(&path), "--budget", "4"]));
    assert_eq!(doc["K"], three_gap_model()["K"]);
    assert_eq!(doc["lambda"], three_gap_model()["lambda"]);
    assert_eq!(doc["certified"], json!(true));
    assert_eq!(doc["budget"], json!(4));
}

#[test]
fn recover_annulus_opaque_reports_width() {
    let dir = TempDir::new().unwrap();
    let fixture = json!({"model": "phi", "K": [["0", "0"], ["1/2", "1"]], "lambda": ["+1"], "opaque": true});
    let path = write(&dir, "fx.json", &fixture);
    let doc = stdout_json(&run(&["recover-annulus", "--oracle", s(&path)]));
    assert_eq!(doc["certified"], json!(false));
    assert_eq!(doc["lambda"], json!(["+1"]));
    assert_ne!(doc["max_width"], json!("0"));
}

#[test]
fn recover_torus_and_line() {
    let dir = TempDir::new().unwrap();
    let fixture = json!({"model": "glued", "K": [["0", "1/4"], ["1/2", "1/2"], ["3/4", "1"]], "lambda": ["-1", "+1"]});
    let path = write(&dir, "torus.json", &fixture);
    let doc = stdout_json(&run(&["recover-torus", "--oracle", s(&path)]));
    assert_eq!(doc["K"], fixture["K"]);

    let line = write(&dir, "line.json", &json!({"model": "conjugation", "h": [["0", "0"], ["1/2", "1/4"], ["1", "1"]]}));
    let grid = write(&dir, "grid.json", &json!(["0", "1/2", "3"]));
    let doc = stdout_json(&run(&["recover-line", "--oracle", s(&line), "--grid", s(&grid)]));
    let values: Vec<&Value> = doc["points"].as_array().unwrap().iter().map(|p| &p["value"]).collect();
    assert_eq!(values, [&json!("0"), &json!("1/4"), &json!("3")]);
}

#[test]
fn invalid_input_exits_2_naming_the_invariant() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", &json!({"K": [["0", "0"], ["1", "1"]], "lambda": ["+1", "-1"]}));
    let good = write(&dir, "good.json", &json!({"K": [["0", "0"], ["1", "1"]], "lambda": ["+1"]}));
    let out = run(&["decide", "--left", s(&bad), "--right", s(&good)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("(K, λ)"), "{err}");
    assert!(out.stdout.is_empty());

    let map = write(&dir, "m.json", &json!({"breakpoints": [["0", "1/2"], ["1/2", "1/4"]]}));
    let out = run(&["eval", "--map", s(&map), "--point", "0"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["eval", "--map", s(&good), "--point", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["decide", "--left", s(&good)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn product_action_on_a_claimed_gap_exits_3() {
    let dir = TempDir::new().unwrap();
    let oracle = write(&dir, "p.json", &json!({"model": "p"}));
    let gaps = write(&dir, "k.json", &json!({"K": [["0", "0"], ["1", "1"]]}));
    let out = run(&["recover-annulus", "--oracle", s(&oracle), "--gaps", s(&gaps)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gap 0"));
}

#[test]
fn signs_only_recovery_with_given_gaps() {
    let dir = TempDir::new().unwrap();
    let mut fixture = three_gap_model();
    fixture["model"] = json!("phi");
    let oracle = write(&dir, "fx.json", &fixture);
    let gaps = write(&dir, "k.json", &three_gap_model());
    let doc = stdout_json(&run(&["recover-annulus", "--oracle", s(&oracle), "--gaps", s(&gaps)]));
    assert_eq!(doc["lambda"], three_gap_model()["lambda"]);
}

#[test]
fn identical_requests_give_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let mut fixture = three_gap_model();
    fixture["model"] = json!("phi");
    fixture["conjugator"] = json!([["0", "0"], ["1/3", "1/2"], ["1", "1"]]);
    let path = write(&dir, "fx.json", &fixture);
    let first = run(&["recover-annulus", "--oracle", s(&path)]);
    let second = run(&["recover-annulus", "--oracle", s(&path)]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn output_flag_writes_a_reparsable_document() {
    let dir = TempDir::new().unwrap();
    let left = write(&dir, "l.json", &three_gap_model());
    let out_path = dir.path().join("verdict.json");
    let out = run(&["decide", "--left", s(&left), "--right", s(&left), "--output", s(&out_path)]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["conjugate"], json!(true));
    let witness = serde_json::to_string(&doc["witness"]).unwrap();
    let back: Value = serde_json::from_str(&witness).unwrap();
    assert_eq!(back, doc["witness"]);
}
