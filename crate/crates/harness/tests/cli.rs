use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn conflat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conflat"))
        .args(args)
        .env_remove("CONFLAT_SEED")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("conflat-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_algebra_suite_passes() {
    let out = conflat(&["verify", "--suite", "algebra-axioms"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "pass");
    assert_eq!(report["seed"], 0xC1F0);
    let ids: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert!(ids.contains(&"c01.algebra.anticommutation"));
    assert!(ids.contains(&"c01.algebra.associativity"));
}

#[test]
fn malformed_config_points_at_field() {
    let path = scratch("bad.json");
    fs::write(&path, r#"{"schema_version": 1, "suites": ["algebra-axioms", 7]}"#).unwrap();
    let out = conflat(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("/suites/1"), "{err}");
}

#[test]
fn unknown_suite_is_an_error() {
    let out = conflat(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_conflat"))
        .args(["verify", "--suite", "algebra-axioms"])
        .env("CONFLAT_SEED", "0x2a")
        .output()
        .unwrap();
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["seed"], 42);
}

#[test]
fn eval_prints_coefficients() {
    let spec = r#"{"family": "euclid", "n": 3}"#;
    let out = conflat(&["eval", "--spec", spec, "--x", "1,0,0", "--y", "0,0,0"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.is_object() || v.is_array(), "{v}");
}

#[test]
fn eval_on_singular_set_fails() {
    let spec = r#"{"family": "euclid", "n": 3}"#;
    let out = conflat(&["eval", "--spec", spec, "--x", "1,0,0", "--y", "1,0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn converge_writes_csv() {
    let path = scratch("conv.csv");
    let spec = r#"{"family": "cot", "n": 3, "q": 1, "k": 1, "l": 0}"#;
    let out = conflat(&[
        "converge", "--spec", spec, "--x", "0.1,0.2,0.3", "--y", "-0.2,0,0", "--radii", "10,20,40,80", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("R,e1,e2,e3,delta,step,order"));
    assert_eq!(lines.count(), 4);
}
