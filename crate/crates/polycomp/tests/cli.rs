//! Golden-file tests for the CLI: pinned stdout bytes, exit codes, and
//! round-trips of printed values through the parsers.

use std::process::{Command, Output};

use polycomp::ffpoly::{parse_field, parse_poly};
use polycomp::matrix::parse_matrix;
use polycomp::polytype::counterexample_matrix;

fn polycomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polycomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn simtype_pinned_output() {
    let out = polycomp(&["simtype", "--field", "GF(2)", "--f", "X^4", "--g", "X^3+1"]);
    assert_eq!(stdout_of(&out), "(X+1)^2, (X+1), (X+1)\n");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn span_pinned_output() {
    let out = polycomp(&["span", "--field", "GF(2)", "--f", "X^2+X+1", "--g", "X^2+1"]);
    assert_eq!(stdout_of(&out), "dim=4 predicted=4\n");
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn counterexample_round_trips() {
    let out = polycomp(&["counterexample", "--field", "GF(2)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let parsed = parse_matrix(&text).expect("CLI output re-parses");
    assert_eq!(
        parsed,
        counterexample_matrix(&parse_field("GF(2)").unwrap())
    );
}

#[test]
fn polytype_counterexample_pinned_output() {
    let dir = std::env::temp_dir().join(format!("polycomp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cex_gf2.mat");
    let emitted = polycomp(&["counterexample", "--field", "GF(2)"]);
    std::fs::write(&path, emitted.stdout).unwrap();

    let out = polycomp(&["polytype", "--matrix", path.to_str().unwrap()]);
    assert_eq!(stdout_of(&out), "No (exhausted 1024 pairs)\n");
    assert_eq!(out.status.code(), Some(0), "No is an answer, not a failure");
    // the exhaustion certificate goes to stderr as a flat key=value block
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("field=GF(2)"));
    assert!(err.contains("n=5"));
    assert!(err.contains("pairs=1024"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn polytype_yes_on_companion_matrix() {
    let dir = std::env::temp_dir().join(format!("polycomp-cli-yes-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("companion.mat");
    std::fs::write(&path, "GF(2)\n2\n0 1\n1 1\n").unwrap();

    let out = polycomp(&["polytype", "--matrix", path.to_str().unwrap()]);
    assert_eq!(stdout_of(&out), "Yes f=X^2+X+1 g=X strategy=cyclic\n");
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn nilpotent_verdicts() {
    let out = polycomp(&["nilpotent", "--field", "GF(2)", "--profile", "1,3,5"]);
    assert_eq!(stdout_of(&out), "No\n");
    assert_eq!(out.status.code(), Some(0));

    let out = polycomp(&["nilpotent", "--field", "GF(3)", "--profile", "1,3,5"]);
    let text = stdout_of(&out);
    assert!(text.starts_with("Yes "), "got: {}", text);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn eldiv_output() {
    let out = polycomp(&[
        "eldiv",
        "--field",
        "GF(2)",
        "--invariants",
        "X,X^4+X^3",
        "--g",
        "X+1",
    ]);
    assert_eq!(stdout_of(&out), "(X), (X+1)^3, (X+1)\n");
}

#[test]
fn factor_is_deterministic_and_round_trips() {
    let args = [
        "factor",
        "--field",
        "GF(3)",
        "--poly",
        "X^6+2X^2+2",
        "--seed",
        "7",
    ];
    let a = polycomp(&args);
    let b = polycomp(&args);
    assert_eq!(a.stdout, b.stdout, "byte-identical across runs");
    let text = stdout_of(&a);
    assert_eq!(text, "(X^3+X^2+2*X+1) (X^3+2*X^2+2*X+2)\n");
    // every printed factor re-parses
    let field = parse_field("GF(3)").unwrap();
    for part in text.trim().split(' ') {
        let inner = part.trim_start_matches('(').trim_end_matches(')');
        parse_poly(&field, inner).expect("factor re-parses");
    }
}

#[test]
fn element_report() {
    let out = polycomp(&[
        "element", "--field", "GF(2)", "--f", "X^3+X+1", "--g", "X^2",
    ]);
    assert_eq!(
        stdout_of(&out),
        "minpoly=X^3+X+1\ntrace=0\nnorm=1\ninverse=X^2+X+1\nrep:\n0 1 0\n0 1 1\n1 0 1\n"
    );
}

#[test]
fn exit_codes() {
    // exit 2: malformed polynomial
    let out = polycomp(&["simtype", "--field", "GF(2)", "--f", "X^2", "--g", "bogus!"]);
    assert_eq!(out.status.code(), Some(2));
    // exit 2: malformed field spec
    let out = polycomp(&["factor", "--field", "GF(4.5)", "--poly", "X"]);
    assert_eq!(out.status.code(), Some(2));
    // exit 2: missing matrix file
    let out = polycomp(&["polytype", "--matrix", "/nonexistent/nowhere.mat"]);
    assert_eq!(out.status.code(), Some(2));
    // exit 1: engine rejects reducible f for element data
    let out = polycomp(&["element", "--field", "GF(2)", "--f", "X^2+1", "--g", "X"]);
    assert_eq!(out.status.code(), Some(1));
}
