use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use adaptq::circuit::from_text;
use adaptq::sim::ShotHistogram;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adaptq")).args(args).current_dir(root()).output().expect("run adaptq")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn build_writes_parseable_circuit() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ghz.txt");
    let o = run(&["build", "ghz", "--n", "4", "--variant", "adaptive", "-o", path_str(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let c = from_text(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(c.validate().is_ok());
    let k = c.counts();
    assert_eq!((k.cnot, k.measure), (6, 3));
}

#[test]
fn build_rejects_small_w() {
    let o = run(&["build", "w", "--n", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("n ≥ 2"));
}

#[test]
fn analyze_reproduces_device_numbers() {
    let o = run(&["analyze", "ghz", "--n", "55", "--cal", "brisbane.json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    let row = |v: &str| s.lines().find(|l| l.split_whitespace().next() == Some(v)).unwrap().to_string();
    assert!(row("linear").contains("4.52e-4"), "{s}");
    assert!(row("adaptive").contains("4.82e-2"), "{s}");
    assert!(s.contains("MISMATCH"), "reference flag missing: {s}");
}

#[test]
fn perfect_device_gives_unit_probability() {
    let o = run(&["analyze", "ghz", "--n", "6", "--cal", "ones.json"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for v in ["all", "linear", "adaptive"] {
        let line = s.lines().find(|l| l.split_whitespace().next() == Some(v)).unwrap();
        assert_eq!(line.split_whitespace().nth(1), Some("1.00e0"), "{line}");
    }
}

#[test]
fn mismatch_exit_code_respects_report_only() {
    let o = run(&["analyze", "ghz", "--n", "8", "--k", "2", "--cal", "ones.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["analyze", "ghz", "--n", "8", "--k", "2", "--cal", "ones.json", "--report-only"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn analyze_csv_has_one_row_per_variant() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a.csv");
    let o = run(&["analyze", "ghz", "--n", "10", "--cal", "brisbane.json", "--csv", path_str(&out)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 4, "{csv}");
}

#[test]
fn crossover_requires_terms_for_a_table() {
    let o = run(&["crossover", "linear"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--cal"));
}

#[test]
fn crossover_minimum_winning_n() {
    let o = run(&["crossover", "linear", "--cal", "brisbane.json"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| l.trim() == "minimum winning n = 15"));
}

#[test]
fn ideal_histogram_round_trips_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = run(&["simulate", "ghz", "--n", "4", "--variant", "adaptive", "--ideal", "--shots", "200", "--seed", "7", "-o", path_str(p)]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let h = ShotHistogram::from_csv(&text).unwrap();
    assert_eq!(h.shots, 200);
    assert_eq!(h.count("0000") + h.count("1111"), 200);
}

#[test]
fn noisy_run_writes_event_log() {
    let dir = tempfile::tempdir().unwrap();
    let ev = dir.path().join("events.json");
    let o = run(&[
        "simulate", "ghz", "--n", "6", "--variant", "linear", "--cal", "brisbane.json", "--shots", "64", "--events",
        path_str(&ev),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("clean_fraction"));
    let log: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&ev).unwrap()).unwrap();
    assert!(log.is_array() || log.is_object());
}

#[test]
fn qubit_cap_error_names_the_flag() {
    let o = run(&["simulate", "ghz", "--n", "30", "--variant", "linear", "--cal", "brisbane.json", "--shots", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--qubit-cap"), "{}", stderr(&o));
}
