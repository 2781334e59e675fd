use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::tempdir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pa-degree-forge")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn certify_issued_exits_zero() {
    let o = run(&["certify", "G1Block", "y=12"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("trace field degree d = 2"), "{out}");
    assert!(out.contains("Q(n^2) = 1276"), "{out}");
}

#[test]
fn reducible_matrix_is_refuted() {
    let dir = tempdir().unwrap();
    let m = write(dir.path(), "m.txt", "2 2\n2 1\n1 2\n");
    let o = run(&["certify", "--matrix", &m]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("refuted"));
}

#[test]
fn reducible_bipartite_is_unknown() {
    let dir = tempdir().unwrap();
    let m = write(dir.path(), "m.txt", "1 1\n4\n");
    let o = run(&["certify", "--matrix", &m, "--with-bipartite"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("bipartite unknown"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&run(&["certify", "Nope", "x=1"])), 64);
    assert_eq!(code(&run(&["certify"])), 64);
    assert_eq!(code(&run(&["certify", "G1Block", "y=12", "--epsilon", "3"])), 64);
    assert_eq!(code(&run(&["frobnicate"])), 64);
    let dir = tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "4\n");
    assert_eq!(code(&run(&["certify", "--matrix", &bad])), 64);
    assert_eq!(code(&run(&["verify", dir.path().join("missing.json").to_str().unwrap()])), 64);
}

#[test]
fn help_exits_zero() {
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn build_certify_verify_round_trip() {
    let dir = tempdir().unwrap();
    let matrix = dir.path().join("m3.txt");
    let matrix = matrix.to_str().unwrap();
    let o = run(&["build", "MgNg", "g=3", "--matrix", matrix]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dimension 8"));

    let report = dir.path().join("r.json");
    let report = report.to_str().unwrap();
    let o = run(&["certify", "--matrix", matrix, "--json", report]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&["verify", report]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("ok: "));

    let o = run(&["certify", "MgNg", "g=3", "--with-ll", "--json", report]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&run(&["verify", report])), 0);
}

#[test]
fn ll_needs_a_grid() {
    let dir = tempdir().unwrap();
    let m = write(dir.path(), "m.txt", "1 1\n4\n");
    assert_eq!(code(&run(&["certify", "--matrix", &m, "--with-ll"])), 64);
}

#[test]
fn tampered_report_fails_verification() {
    let dir = tempdir().unwrap();
    let report = dir.path().join("r.json");
    let report = report.to_str().unwrap();
    assert_eq!(code(&run(&["certify", "G1Block", "y=12", "--json", report])), 0);
    let text = fs::read_to_string(report).unwrap();
    assert!(text.contains("1276"));
    fs::write(report, text.replacen("1276", "1275", 1)).unwrap();
    let o = run(&["verify", report]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("verification failed"));
}

#[test]
fn sequential_matches_parallel() {
    let par = run(&["certify", "MgNg", "g=4", "--json", "-"]);
    let seq = run(&["--sequential", "certify", "MgNg", "g=4", "--json", "-"]);
    assert_eq!(code(&par), 0);
    assert_eq!(code(&seq), 0);
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().retain(|k, _| !k.starts_with("timing"));
        v
    };
    assert_eq!(strip(&par), strip(&seq));
}

#[test]
fn reproduce_genus2_table() {
    let o = run(&["reproduce", "genus2-table"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("all items passed"));
}

#[test]
fn spec_file_input() {
    let dir = tempdir().unwrap();
    let spec = write(dir.path(), "s.json", r#"{"variant":"TorelliG2Block","params":{"y":2}}"#);
    let o = run(&["certify", "--spec", &spec]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dimension   4"));
}

#[test]
fn reproduce_writes_csv() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("g2.csv");
    let o = run(&["reproduce", "genus2-table", "--csv", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,name,passed,checks");
    assert_eq!(lines.len(), 4);
    assert!(lines[1..].iter().all(|l| l.contains(",true,")));
}
