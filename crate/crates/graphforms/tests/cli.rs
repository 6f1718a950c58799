//! End-to-end tests of the `graphforms` binary: outputs, exit codes, and
//! byte-for-byte reproducibility of seeded runs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_graphforms"))
}

fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn symanzik_theta_prints_canonical_polynomial() {
    let out = run(&["symanzik", corpus_path("theta.g").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "a1*a2 + a1*a3 + a2*a3\n");
}

#[test]
fn verify_main_prints_ratio_and_exits_zero() {
    let out = run(&[
        "verify",
        corpus_path("dunces_cap.g").to_str().unwrap(),
        "--suite",
        "main",
        "--tree",
        "2,4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("alpha = -1/4 * phi"), "{text}");
    assert!(text.contains("det[C|P] = -1"), "{text}");
}

#[test]
fn phi_on_triangle_reports_odd_loop_number() {
    let out = run(&["phi", corpus_path("triangle.g").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "0  # odd loop number\n");
}

#[test]
fn dodgson_pair_on_dunces_cap() {
    let out = run(&[
        "dodgson",
        corpus_path("dunces_cap.g").to_str().unwrap(),
        "--a",
        "1",
        "--b",
        "3",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_of(&out), "-a4\n");
}

#[test]
fn subdivide_theta_emits_dunces_cap() {
    let out = run(&[
        "subdivide",
        corpus_path("theta.g").to_str().unwrap(),
        "--edge",
        "1",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout_of(&out),
        "e 1 2 1\ne 2 1 3\ne 3 2 3\ne 4 2 3\nvstar 3\n"
    );
}

#[test]
fn subdivide_check_passes() {
    let out = run(&[
        "subdivide",
        corpus_path("theta.g").to_str().unwrap(),
        "--edge",
        "2",
        "--check",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("summary: 1/1 reports passed"));
}

#[test]
fn json_input_and_output_round_trip() {
    let dir = std::env::temp_dir().join("graphforms-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dunce.json");
    std::fs::write(&path, r#"{"edges":[[2,1],[1,3],[2,3],[2,3]],"v_star":3}"#).unwrap();
    let out = run(&[
        "--output",
        "json",
        "symanzik",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("valid json");
    assert_eq!(
        value["symanzik"],
        "a1*a3 + a2*a3 + a1*a4 + a2*a4 + a3*a4"
    );
}

#[test]
fn malformed_input_exits_two() {
    let dir = std::env::temp_dir().join("graphforms-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.g");
    std::fs::write(&bad, "e 1 1 2\ne 2 3 4\n").unwrap(); // disconnected
    let out = run(&["symanzik", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let missing = dir.join("does-not-exist.g");
    let out = run(&["alpha", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn seeded_verify_is_byte_identical() {
    let args = [
        "verify",
        "--suite",
        "signs",
        "--seed",
        "7",
        "--count",
        "3",
        "--max-edges",
        "7",
    ];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn dipole_integrate_quadrature() {
    let out = run(&["dipole", "--i", "1", "--integrate"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let value: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("integral = "))
        .and_then(|rest| rest.split_whitespace().next())
        .expect("integral line present")
        .parse()
        .expect("numeric value");
    assert!((value - 1.0).abs() < 1e-3, "{text}");
}

#[test]
fn verify_all_on_small_sample_exits_zero() {
    let out = run(&[
        "verify",
        "--suite",
        "all",
        "--count",
        "3",
        "--max-edges",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("summary:"), "{text}");
}

#[test]
fn explicit_basis_flag_matches_tree_flag() {
    let theta = corpus_path("theta.g");
    let by_tree = run(&["phi", theta.to_str().unwrap(), "--tree", "3"]);
    let by_columns = run(&[
        "phi",
        theta.to_str().unwrap(),
        "--basis",
        "1,0,-1;0,1,-1",
    ]);
    assert!(by_tree.status.success());
    assert!(by_columns.status.success());
    assert_eq!(by_tree.stdout, by_columns.stdout);
}
