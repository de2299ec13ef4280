use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nilcurv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcurv")).args(args).env_remove("NILCURV_TOL").output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const EUCLIDEAN_H3: &str = r#"{"dim": 3, "q": 0, "center": [[1, 0, 0]],
  "js": [[[0, 0, 0], [0, 0, -1], [0, 1, 0]]], "mode": "float"}"#;

const LORENTZ_DIM5: &str = r#"{"p": 1, "r": 1, "q": 0, "m1": [[3], [4]], "m2": [], "a": [1, 2], "b": [], "lambda": [5]}"#;

const LORENTZ_DIM3: &str = r#"{"p": 0, "r": 0, "q": 1, "m1": [], "m2": [[]], "a": [], "b": [1], "lambda": []}"#;

#[test]
fn signature_q1_n4() {
    let out = nilcurv(&["signature", "--q", "1", "--n", "4"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["dim"], 6);
    assert_eq!(v["sig"], serde_json::json!([3, 3]));
}

#[test]
fn flat_h3_is_deterministic_and_flat() {
    let dir = tempfile::tempdir().unwrap();
    let first = nilcurv(&["family", "h3-flat"]);
    let second = nilcurv(&["family", "h3-flat"]);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let file = write(dir.path(), "h3.json", &String::from_utf8(first.stdout).unwrap());
    let out = nilcurv(&["verify", &file]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["flags"]["ricci_flat"], true);
    assert_eq!(v["flags"]["flat"], true);
}

#[test]
fn euclidean_h3_scalar() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "h3.json", EUCLIDEAN_H3);
    let out = nilcurv(&["verify", &file]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["scalar"], -0.5);
    let exact = nilcurv(&["verify", &file, "--exact"]);
    assert_eq!(stdout_json(&exact)["scalar"], "-1/2");
}

#[test]
fn malformed_and_missing_files_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "t.json", &EUCLIDEAN_H3[..40]);
    let out = nilcurv(&["verify", &file]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert_eq!(code(&nilcurv(&["verify", "/nonexistent/algebra.json"])), 2);
}

#[test]
fn invalid_algebra_exit_1_with_violations() {
    let dir = tempfile::tempdir().unwrap();
    let text = EUCLIDEAN_H3.replace("[0, 1, 0]", "[0, 2, 0]");
    let file = write(dir.path(), "bad.json", &text);
    let out = nilcurv(&["verify", &file]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("J_1 is not skew"), "{}", stderr(&out));
}

#[test]
fn family_constraint_named() {
    let out = nilcurv(&["family", "heis1", "--params", r#"{"q": 2, "r": 0, "a": [1], "lambda": [2]}"#]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("Σa² ≠ Σλ²"), "{}", stderr(&out));
}

#[test]
fn lorentz_family_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let params = write(dir.path(), "params.json", LORENTZ_DIM5);
    let file = dir.path().join("alg.json");
    let out = nilcurv(&["family", "lorentz", "--params", &params, "-o", file.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = nilcurv(&["verify", file.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["flags"]["ricci_flat"], true);
}

#[test]
fn every_family_name_builds() {
    let cases = [
        ("heis1", r#"{"q": 2, "r": 0, "a": [3], "lambda": [3]}"#),
        ("heis2", r#"{"q": 3, "r": 2, "a": [], "lambda": [0, 0]}"#),
        ("heis3", r#"{"q": 3, "a": [2], "beta": 2}"#),
        ("heis-case2", r#"{"q": 2, "r": 0, "a": [[0,0,0,0],[0,0,0,0],[0,0,2,0],[0,0,0,-2]], "b": [[0]], "v": [[1,0,1,2]]}"#),
        ("lorentz", LORENTZ_DIM3),
        ("htype", r#"{"js": [[[0, -1], [1, 0]]]}"#),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (name, params) in cases {
        let out = nilcurv(&["family", name, "--params", params]);
        assert_eq!(code(&out), 0, "{name}: {}", stderr(&out));
        let file = write(dir.path(), &format!("{name}.json"), &String::from_utf8(out.stdout).unwrap());
        let out = nilcurv(&["verify", &file]);
        assert_eq!(code(&out), 0, "{name}: {}", stderr(&out));
        let flat = stdout_json(&out)["flags"]["ricci_flat"] == true;
        assert_eq!(flat, name != "htype", "{name}");
    }
}

#[test]
fn group_metric_dim3_exact() {
    let out = nilcurv(&["group-metric", LORENTZ_DIM3, "--samples", "20", "--seed", "3"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["law_deviation"], 0.0);
    assert_eq!(v["metric_deviation"], 0.0);
    assert_eq!(v["seed"], 3);
}

#[test]
fn corpus_summary() {
    let out = nilcurv(&["corpus", "--count", "20", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert!(v["max_dev"].as_f64().unwrap() <= 1e-9);
    assert_eq!(v["passed"], true);
    let again = nilcurv(&["corpus", "--count", "20", "--seed", "7", "--sequential"]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn tolerance_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "h3.json", EUCLIDEAN_H3);
    let out = Command::new(env!("CARGO_BIN_EXE_nilcurv")).args(["verify", &file]).env("NILCURV_TOL", "1e-6").output().unwrap();
    assert_eq!(stdout_json(&out)["tolerance"], 1e-6);
    let flag = Command::new(env!("CARGO_BIN_EXE_nilcurv"))
        .args(["verify", &file, "--tol", "1e-4"])
        .env("NILCURV_TOL", "1e-6")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&flag)["tolerance"], 1e-4);
}

#[test]
fn unknown_family_is_a_usage_error() {
    assert_eq!(code(&nilcurv(&["family", "heis9"])), 2);
}
