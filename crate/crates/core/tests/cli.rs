use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nctorus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nctorus")).args(args).env("NCTORUS_THREADS", "2").output().unwrap()
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nctorus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn bundled_field_matches_expected_total() {
    let expected: Value = serde_json::from_str(&std::fs::read_to_string(data("single_cross_mode.expected.json")).unwrap()).unwrap();
    let level = expected["level"].as_i64().unwrap().to_string();
    let out = nctorus(&["action", "--field", &data("single_cross_mode.json"), "--level", &level]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let total = v["oracle"]["total"][0].as_f64().unwrap();
    let want = expected["total"].as_f64().unwrap();
    assert!((total - want).abs() <= 1e-10 * (1.0 + want.abs()), "{total} vs {want}");
    assert!((want + 21.0 * std::f64::consts::PI.powi(2)).abs() < 1e-10);
}

#[test]
fn two_loop_report_cancels() {
    let out = nctorus(&["loops", "--order", "2", "--cutoff", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["cancellationRatio"].as_f64().unwrap() <= 1e-12);
    assert!(v["grossMagnitude"].as_f64().unwrap() > 0.0);
    assert_eq!(v["cutoff"], 3);
}

#[test]
fn odd_order_is_structurally_zero() {
    let v = json(&nctorus(&["loops", "--order", "3", "--cutoff", "2"]));
    assert_eq!(v["structurallyZero"], true);
    assert_eq!(v["pairingCount"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(nctorus(&[]).status.code(), Some(64));
    assert_eq!(nctorus(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(nctorus(&["action", "--N", "many"]).status.code(), Some(64));
    assert_eq!(nctorus(&["--help"]).status.code(), Some(0));

    let out = nctorus(&["action", "--level", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("level"));
    assert_eq!(nctorus(&["action", "--field", "/nonexistent/field.json"]).status.code(), Some(1));

    let bad = scratch("bad.json", r#"{"size":1,"theta":[[0.1,0,0],[0,0,0],[0,0,0]],"components":[[],[],[]]}"#);
    let out = nctorus(&["action", "--field", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("theta"));

    assert_eq!(nctorus(&["--tolerance", "0", "gauge-check", "--weyl", "1,1,0"]).status.code(), Some(2));
}

#[test]
fn config_file_and_flag_override() {
    let config = scratch("config.json", r#"{"seed": 5, "N": 1, "K": 1, "theta": "single-angle:0.5", "level": 2}"#);
    let config = config.to_str().unwrap();
    let a = nctorus(&["--config", config, "random-field"]);
    let b = nctorus(&["--config", config, "random-field", "--N", "2"]);
    assert_eq!(json(&a)["size"], 1);
    assert_eq!(json(&b)["size"], 2);
    let unknown = scratch("unknown.json", r#"{"levle": 2}"#);
    assert_eq!(nctorus(&["--config", unknown.to_str().unwrap(), "action"]).status.code(), Some(1));
}

#[test]
fn field_round_trips_through_the_cli() {
    let out = nctorus(&["random-field", "--seed", "9", "--N", "2", "--theta", "golden", "--no-zero-mode"]);
    let path = scratch("field.json", std::str::from_utf8(&out.stdout).unwrap());
    let v = json(&nctorus(&["action", "--field", path.to_str().unwrap(), "--level", "2"]));
    assert!(v["coefficientFormulaSkipped"].is_null());
    assert!(v["relativeDifference"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn index_and_diophantine() {
    let v = json(&nctorus(&["index", "--weyl", "2,-1,1"]));
    assert_eq!(v["report"]["index"], 0);
    let v = json(&nctorus(&["diophantine"]));
    assert_eq!(v["witnessQ"], serde_json::json!([-6, -7, -6]));
    let v = json(&nctorus(&["selftest"]));
    assert_eq!(v["failed"], 0);
}
