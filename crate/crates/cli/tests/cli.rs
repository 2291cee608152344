use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use tempfile::TempDir;

const W5: &str = "vertices: 0 1 2 3 4 5\nedges: 0-1 0-2 0-3 0-4 0-5 1-2 2-3 3-4 4-5 5-1\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twuality"))
}

fn file(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

#[test]
fn wheel_taudeltatau() {
    let dir = TempDir::new().unwrap();
    let w5 = file(&dir, "w5.graft", W5);
    let o = run(&["compute", "--format", "graft", "--ops", "taudeltatau", w5.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "5*z^4 + 26*z^5 + 33*z^6\n");
}

#[test]
fn empty_matrix_is_one() {
    let dir = TempDir::new().unwrap();
    let m = file(&dir, "empty.mat", "field gf2\nn 0\n");
    let o = run(&["compute", "--format", "matrix", "--ops", "tau", m.to_str().unwrap()]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn single_orientable_loop_delta() {
    let dir = TempDir::new().unwrap();
    let b = file(&dir, "loop.bq", "word: a a\n");
    let o = run(&["compute", "--format", "bouquet", "--ops", "delta", b.to_str().unwrap()]);
    assert_eq!(stdout(&o), "2\n");
}

#[test]
fn several_operators_are_named() {
    let o = run_stdin(&["compute", "--format", "graft", "--ops", "deltatau,tau", "-"], W5);
    assert_eq!(stdout(&o), "deltatau: 15*z^3 + 5*z^4 + 33*z^5 + 11*z^6\ntau: 5*z^4 + 26*z^5 + 33*z^6\n");
}

#[test]
fn json_round_trips() {
    let o = run_stdin(&["compute", "--format", "graft", "--out", "json", "-"], W5);
    assert!(o.status.success());
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[4], r#"{"operator":"taudeltatau","field":"gf2","n":6,"coefficients":[0,0,0,0,5,26,33]}"#);
    for line in &lines {
        let rec = twuality_record(line);
        assert_eq!(rec.to_json(), *line);
    }
}

fn twuality_record(s: &str) -> twuality::twuality::PolynomialRecord {
    twuality::twuality::PolynomialRecord::from_json(s).unwrap()
}

#[test]
fn single_subset_exponents() {
    let o = run_stdin(&["compute", "--format", "graft", "--set", "-", "-"], W5);
    assert_eq!(stdout(&o), "delta: 6\ntau: 6\ndeltatau: 6\ntaudelta: 6\ntaudeltatau: 6\n");
}

#[test]
fn transform_pivot_and_invert() {
    let o = run_stdin(&["transform", "--invert", "-"], "field q\nn 2\n1 0\n0 1\n");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "field q\nn 2\n1 0\n0 1\n");
    let o = run_stdin(&["transform", "--pivot", "0,1", "-"], "field gf2\nn 2\n0 1\n1 0\n");
    assert_eq!(stdout(&o), "field gf2\nn 2\n0 1\n1 0\n");
    let o = run_stdin(&["transform", "--pivot", "0", "-"], "field gf2\nn 2\n0 0\n0 1\n");
    assert_eq!(o.status.code(), Some(4));
    assert!(stdout(&o).is_empty());
}

#[test]
fn exit_codes() {
    let o = run_stdin(&["compute", "-"], "field q\nn 2\n1 x\n0 1\n");
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3, column 3"), "{err}");
    let o = run_stdin(&["compute", "--format", "graft", "--max-n", "5", "-"], W5);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["compute", "/nonexistent/file"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn field_override_changes_results() {
    let k3 = "field q\nn 3\n0 1 1\n1 0 1\n1 1 0\n";
    let q = run_stdin(&["compute", "--ops", "delta", "-"], k3);
    let gf2 = run_stdin(&["compute", "--ops", "delta", "--field", "gf2", "-"], k3);
    assert_eq!(stdout(&q), "6*z^2 + 2*z^3\n");
    assert_eq!(stdout(&gf2), "8*z^2\n");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let rows: Vec<String> = (0..13)
        .map(|i| (0..13).map(|j| ((i * 7 + j * 3 + i * j) % 5 % 2).to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    let m = file(&dir, "big.mat", &format!("field gf2\nn 13\n{}\n", rows.join("\n")));
    let a = run(&["compute", "--threads", "1", m.to_str().unwrap()]);
    let b = run(&["compute", "--threads", "4", m.to_str().unwrap()]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn kn_and_check_suites() {
    let o = run(&["kn", "--n", "4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).matches("match").count(), 3);
    let o = run(&["check", "--suite", "kn"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.contains("PASS")));
    let a = run(&["check", "--suite", "leaf", "--seed", "7"]);
    let b = run(&["check", "--suite", "leaf", "--seed", "7"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(&["check", "--suite", "bogus"]).status.code(), Some(2));
}
