//! End-to-end tests of the command line binary: exit codes, output formats,
//! the generator-file cache, and the enumeration guards.

use std::path::Path;
use std::process::{Command, Output};

fn hamming_gen() -> &'static str {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/hamming8.gen")
}

fn tetracode_gen() -> &'static str {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/tetracode.gen")
}

/// Runs the binary in `dir` with a clean cap environment.
fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylcode"))
        .current_dir(dir)
        .env_remove("WEYLCODE_AMBIENT_CAP")
        .env_remove("WEYLCODE_DENSE_CAP")
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn exit_codes_separate_failure_kinds() {
    let dir = tempfile::tempdir().unwrap();

    // 0: the checks themselves pass.
    let build = run_in(dir.path(), &["code", "build", "--c", hamming_gen()]);
    assert_eq!(code(&build), 0, "{}", stderr(&build));
    let check = run_in(dir.path(), &["code", "check", "--e", "1", "--exhaustive"]);
    assert_eq!(code(&check), 0);
    assert_eq!(report(&check)["pass"], serde_json::Value::Bool(true));

    // 1: the run completes but a check fails.
    let failing = run_in(dir.path(), &["code", "check", "--c", tetracode_gen(), "--e", "1"]);
    assert_eq!(code(&failing), 1);
    assert_eq!(report(&failing)["pass"], serde_json::Value::Bool(false));

    // 2: the request itself is unusable.
    let usage = run_in(
        dir.path(),
        &["simulate", "--c", hamming_gen(), "--e", "1", "--sweep", "junk"],
    );
    assert_eq!(code(&usage), 2);
    assert!(stderr(&usage).contains("sweep"), "{}", stderr(&usage));
}

#[test]
fn parse_errors_cite_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.gen");
    std::fs::write(&bad, "# a broken file\n2 3 1\n5 0 0\n").unwrap();

    let out = run_in(dir.path(), &["code", "build", "--c", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let msg = stderr(&out);
    assert!(msg.contains("line 3"), "message cites the offending line: {msg}");
    assert!(msg.contains("out of range"), "{msg}");
}

#[test]
fn missing_cache_points_at_code_build() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["code", "check", "--e", "1"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("code build"), "{}", stderr(&out));
}

#[test]
fn cache_round_trip_preserves_the_code() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("steane.code.json");

    let build = run_in(
        dir.path(),
        &["code", "build", "--c", hamming_gen(), "--out", cache.to_str().unwrap()],
    );
    assert_eq!(code(&build), 0, "{}", stderr(&build));
    assert!(cache.exists());

    let check = run_in(
        dir.path(),
        &["code", "check", "--code", cache.to_str().unwrap(), "--e", "1"],
    );
    assert_eq!(code(&check), 0, "{}", stderr(&check));
    let value = report(&check);
    assert_eq!(value["pass"], serde_json::Value::Bool(true));
    assert_eq!(value["code"]["generators"].as_array().unwrap().len(), 6);

    // The cached convention is forced on reload, not re-derived.
    let cached: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cache).unwrap()).unwrap();
    assert_eq!(cached["convention"], "literal");
    assert_eq!(cached["n"], 2);
    assert_eq!(cached["generators"].as_array().unwrap().len(), 4);
}

#[test]
fn caps_come_from_flags_then_environment() {
    let dir = tempfile::tempdir().unwrap();

    // Environment cap trips the guard: the ambient space has 2^8 vectors.
    let tripped = Command::new(env!("CARGO_BIN_EXE_weylcode"))
        .current_dir(dir.path())
        .env("WEYLCODE_AMBIENT_CAP", "100")
        .args(["code", "build", "--c", hamming_gen()])
        .output()
        .unwrap();
    assert_eq!(code(&tripped), 2);
    let msg = stderr(&tripped);
    assert!(msg.contains("ambient enumeration cap"), "guard is named: {msg}");

    // An explicit flag wins over the environment.
    let passed = Command::new(env!("CARGO_BIN_EXE_weylcode"))
        .current_dir(dir.path())
        .env("WEYLCODE_AMBIENT_CAP", "100")
        .args(["--ambient-cap", "16777216", "code", "build", "--c", hamming_gen()])
        .output()
        .unwrap();
    assert_eq!(code(&passed), 0, "{}", stderr(&passed));
}

#[test]
fn dense_cap_guards_basis_dimension() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["--dense-cap", "20", "basis", "build", "--shift-clock", "6", "--tensor", "6"],
    );
    assert_eq!(code(&out), 2);
    let msg = stderr(&out);
    assert!(msg.contains("dense-dim cap"), "guard is named: {msg}");
    assert!(msg.contains("36"), "detail mentions the requested dimension: {msg}");
}

#[test]
fn text_format_prints_one_line_per_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &["--format", "text", "basis", "verify", "--shift-clock", "3"],
    );
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.starts_with("weylcode"), "header line: {text}");
    assert!(text.contains("PASS trace orthonormality holds"));
    assert!(text.contains("result: PASS"));
    assert!(serde_json::from_str::<serde_json::Value>(&text).is_err(), "text, not JSON");

    let json = run_in(dir.path(), &["basis", "verify", "--shift-clock", "3"]);
    let value = report(&json);
    assert!(!value["checks"].as_array().unwrap().is_empty());
}

#[test]
fn transversal_runs_from_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let build = run_in(dir.path(), &["code", "build", "--c", hamming_gen()]);
    assert_eq!(code(&build), 0);

    let out = run_in(dir.path(), &["transversal", "verify", "--gate", "all"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let value = report(&out);
    let gate_checks = value["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["name"].as_str().unwrap().contains("action matches the prediction"))
        .count();
    assert_eq!(gate_checks, 4, "one check per gate after the construction stages");
}

#[test]
fn rejects_dimension_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["basis", "verify", "--shift-clock", "1"]);
    assert_eq!(code(&out), 2);
}
