use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    root.to_str().unwrap().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contraction"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut args = args.to_vec();
    args.push("--json");
    let out = run(&args);
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (value, code(&out))
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn validate_exit_codes() {
    assert_eq!(code(&run(&["validate", &fixture("six-point.txt")])), 0);
    assert_eq!(
        code(&run(&["validate", &fixture("triangle-violation.txt")])),
        1
    );
    assert_eq!(code(&run(&["validate", &fixture("malformed.txt")])), 2);
    assert_eq!(code(&run(&["validate", "no-such-file.txt"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
}

#[test]
fn invalid_metric_reports_the_violation() {
    let (v, exit) = json(&["validate", &fixture("triangle-violation.txt")]);
    assert_eq!(exit, 1);
    assert_eq!(v["exit_code"], 1);
    let text = v["results"].to_string();
    assert!(
        text.contains("TriangleViolation") || text.contains("triangle"),
        "{text}"
    );
}

#[test]
fn every_metric_fixture_validates() {
    for name in ["equilateral.txt", "six-point.txt", "swap.txt"] {
        assert_eq!(code(&run(&["validate", &fixture(name)])), 0, "{name}");
    }
}

#[test]
fn classify_equilateral() {
    let (v, exit) = json(&[
        "classify",
        &fixture("equilateral.txt"),
        "--classes",
        "generalized-chatterjea",
    ]);
    assert_eq!(exit, 0);
    assert_eq!(v["command"], "classify");
    assert!(v["input_digest"].as_str().unwrap().starts_with("sha256:"));
    let report = &v["results"][0];
    assert_eq!(report["lambda_star"], "2/5");
    assert_eq!(report["member"], true);
}

#[test]
fn classify_six_point_lists_all_classes() {
    let out = run(&["classify", &fixture("six-point.txt")]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6, "{text}");
    let members: Vec<bool> = lines.iter().map(|l| l.contains("member=true")).collect();
    assert_eq!(members, [false, false, false, false, true, false]);
}

#[test]
fn classify_step2_generator() {
    let (v, exit) = json(&[
        "classify",
        "--generator",
        "step2",
        "--grid",
        "0:4:1/10",
        "--extra",
        "19/10,21/10",
        "--classes",
        "generalized-chatterjea",
    ]);
    assert_eq!(exit, 0);
    let report = &v["results"][0];
    assert_eq!(report["lambda_star"], "1/3");
    assert_eq!(report["sampled"], true);
    assert_eq!(
        report["witness"]["tuple"],
        serde_json::json!(["0", "1", "2"])
    );
}

#[test]
fn solve_from_b() {
    let (v, exit) = json(&["solve", &fixture("six-point.txt"), "--start", "B"]);
    assert_eq!(exit, 0);
    assert_eq!(
        v["results"]["orbit"],
        serde_json::json!(["B", "D", "F", "F"])
    );
    assert_eq!(v["results"]["terminus"]["point"], "F");
    let cert = &v["results"]["certificate"];
    assert_eq!(cert["alpha"], "1/2");
    assert_eq!(cert["d_sequence"][0]["d"], "4");
    assert_eq!(cert["d_sequence"][1]["d"], "2");
    assert_eq!(cert["violations"], serde_json::json!([]));
}

#[test]
fn solve_text_and_failures() {
    let out = run(&["solve", &fixture("equilateral.txt"), "--start", "z"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("z → x"), "{}", stdout(&out));
    assert_eq!(
        code(&run(&["solve", &fixture("swap.txt"), "--start", "x"])),
        1
    );
    let out = run(&["solve", &fixture("six-point.txt"), "--start", "Q"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Q"));
}

#[test]
fn check_theorem() {
    let (v, exit) = json(&["check-theorem", &fixture("equilateral.txt")]);
    assert_eq!(exit, 0);
    assert_eq!(v["results"]["hypothesis_ii"], true);
    assert_eq!(
        v["results"]["fixed_point_set"],
        serde_json::json!(["x", "y"])
    );
    let (v, exit) = json(&["check-theorem", &fixture("swap.txt")]);
    assert_eq!(exit, 0);
    assert_eq!(v["results"]["hypothesis_i"], false);
}

const SEARCH: [&str; 9] = [
    "search",
    "--points",
    "4",
    "--seed",
    "42",
    "--require",
    "generalized-chatterjea",
    "--exclude",
    "chatterjea",
];

#[test]
fn search_finds_and_is_reproducible() {
    let first = run(&SEARCH);
    let second = run(&SEARCH);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
    let (v, exit) = json(&SEARCH);
    assert_eq!(exit, 0);
    assert_eq!(v["results"]["found"], true);
    assert_eq!(v["results"]["reverified"], true);
}

#[test]
fn search_writes_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("found.txt");
    let mut args = SEARCH.to_vec();
    args.extend(["--out", path.to_str().unwrap()]);
    assert_eq!(code(&run(&args)), 0);
    let out = run(&[
        "classify",
        path.to_str().unwrap(),
        "--classes",
        "generalized-chatterjea",
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&[
        "classify",
        path.to_str().unwrap(),
        "--classes",
        "chatterjea",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn contradictory_search_is_a_usage_error() {
    let out = run(&[
        "search",
        "--points",
        "4",
        "--require",
        "kannan",
        "--exclude",
        "kannan",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let args = ["classify", &fixture("six-point.txt"), "--json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let (v, _) = json(&["classify", &fixture("six-point.txt")]);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["command", "exit_code", "input_digest", "results"]);
}
