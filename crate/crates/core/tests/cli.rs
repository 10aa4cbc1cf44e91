use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

const BIN: &str = env!("CARGO_BIN_EXE_monrep");

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("monrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--report", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (code(&out), v)
}

fn running() -> String {
    example("ex224.mono").to_str().unwrap().to_string()
}

const KRONECKER: &str = "\
field 101
quiver Q {
  vertices 2;
  arrow a: 2 -> 1;
  arrow b: 2 -> 1;
}
rep X {
  at 2: module dims=[1];
  at 1: module dims=[1];
  map a = [[1]];
  map b = [[1]];
}
";

#[test]
fn validate_reports_the_common_fields() {
    let file = running();
    let (exit, v) = json(&["validate", &file]);
    assert_eq!(exit, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "validate");
    assert_eq!(v["verdict"], "valid");
    assert_eq!(v["vertices"], 4);
    assert!(v["seed"].is_null() && v["depth"].is_null());
    assert!(v["elapsed_ms"].is_u64());
    let digest = hex(&Sha256::digest(std::fs::read(&file).unwrap()));
    assert_eq!(v["input_digest"], digest);
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn relation_violations_are_input_errors() {
    let out = run(&["validate", example("ex224_broken.mono").to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("b1.g"), "{err}");
}

#[test]
fn missing_files_and_reps_are_input_errors() {
    assert_eq!(code(&run(&["validate", "/nonexistent/x.mono"])), 2);
    assert_eq!(code(&run(&["check-monic", &running(), "--rep", "Y"])), 2);
    assert_eq!(
        code(&run(&["check-gp", &running(), "--rep", "X", "--mode", "semisimple"])),
        2
    );
    assert_eq!(code(&run(&["no-such-command"])), 2);
}

#[test]
fn parse_errors_carry_a_location() {
    let path = scratch("bad.mono");
    std::fs::write(&path, "field 101\nquiver Q {\n  vertices 2;\n  arrow a: 2 -> 9;\n}\n").unwrap();
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("4:"), "{err}");
}

#[test]
fn the_running_example_is_monic_and_gp() {
    let (exit, v) = json(&["check-monic", &running(), "--rep", "X"]);
    assert_eq!((exit, v["verdict"].as_str()), (0, Some("monic")));
    assert_eq!(v["kernel_formulas"]["holds"], true);
    let (exit, v) = json(&[
        "check-gp",
        &running(),
        "--rep",
        "X",
        "--mode",
        "selfinjective",
        "--seed",
        "5",
    ]);
    assert_eq!(exit, 0);
    assert_eq!(v["verdict"], "gp");
    assert_eq!(v["mode"], "selfinjective");
    assert_eq!(v["seed"], 5);
    assert_eq!(v["depth"], 12);
    assert_eq!(v["cross_check"]["consistent"], true);
}

#[test]
fn non_monic_input_is_a_negative_verdict() {
    let path = scratch("kronecker.mono");
    std::fs::write(&path, KRONECKER).unwrap();
    let file = path.to_str().unwrap();
    let (exit, v) = json(&["check-monic", file, "--rep", "X"]);
    assert_eq!(exit, 1);
    assert_eq!(v["verdict"], "not_monic");
    assert_eq!(v["witnesses"][0]["condition"], "m1");
    let (exit, v) = json(&["check-gp", file, "--rep", "X"]);
    assert_eq!(exit, 1);
    assert_eq!(v["verdict"], "not_gp");
    assert_eq!(v["reasons"], serde_json::json!(["not_monic"]));
}

#[test]
fn shallow_bounded_checks_are_unknown() {
    let (exit, v) = json(&[
        "check-gp",
        &running(),
        "--rep",
        "X",
        "--mode",
        "bounded",
        "--depth",
        "1",
    ]);
    assert_eq!(exit, 3);
    assert_eq!(v["verdict"], "unknown");
}

#[test]
fn constructed_tensors_parse_back() {
    let path = scratch("tensor.mono");
    let out_path = path.to_str().unwrap();
    let (exit, v) = json(&[
        "construct",
        "tensor",
        &running(),
        "--module",
        "regular",
        "--vertex",
        "3",
        "-o",
        out_path,
    ]);
    assert_eq!(exit, 0);
    assert_eq!(v["dims"]["1"], serde_json::json!([4]));
    assert_eq!(v["dims"]["3"], serde_json::json!([2]));
    assert_eq!(v["dims"]["4"], serde_json::json!([0]));
    let (exit, v) = json(&["check-monic", out_path, "--rep", "T"]);
    assert_eq!((exit, v["verdict"].as_str()), (0, Some("monic")));
}

fn without_elapsed(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn suite_reports_are_deterministic_across_jobs() {
    let file = running();
    let base = [
        "suite",
        file.as_str(),
        "--kind",
        "corollary",
        "--samples",
        "12",
        "--seed",
        "3",
    ];
    let (exit1, a) = json(&[&base[..], &["--jobs", "1"]].concat());
    let (exit4, b) = json(&[&base[..], &["--jobs", "4"]].concat());
    assert_eq!((exit1, exit4), (0, 0));
    assert_eq!(a["verdict"], "passed");
    assert_eq!(without_elapsed(a), without_elapsed(b));
}

#[test]
fn text_reports_name_the_verdict() {
    let out = run(&["check-monic", &running(), "--rep", "X"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("monic"));
}
