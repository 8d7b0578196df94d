use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const SYNTHETIC: &str = r#"{"arms": [
    {"theta": 0.8, "cost_mean": 0.55}, {"theta": 0.7, "cost_mean": 0.55},
    {"theta": 0.6, "cost_mean": 0.55}, {"theta": 0.5, "cost_mean": 0.55},
    {"theta": 0.4, "cost_mean": 0.55}, {"theta": 0.3, "cost_mean": 0.55}
], "horizon": 300, "runs": 2, "log_every": 100}"#;

fn ccb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccb"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn offline_prints_optimal_list() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "c.json", SYNTHETIC);
    let out = ccb(&["offline", "--config", s(&cfg)]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("list: (0,1,2)"), "{text}");
    assert!(text.contains("L: 3"));
    assert!(text.contains("expected_net_reward: 0.283"));
}

#[test]
fn bruteforce_certifies() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "c.json", SYNTHETIC);
    let out = ccb(&["bruteforce", "--config", s(&cfg)]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("certified: true"));

    let out = ccb(&["bruteforce", "--config", s(&cfg), "--max-k", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_writes_trace_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "c.json", SYNTHETIC);
    let out = ccb(&["simulate", "--config", s(&cfg)]);
    assert!(out.status.success());
    let trace = stdout(&out);
    let lines: Vec<&str> = trace.lines().collect();
    assert_eq!(lines[0], "run,t,cum_regret");
    assert_eq!(lines.len(), 1 + 2 * 3);
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.contains("unknown,"), "{summary}");

    let sum_path = dir.path().join("sum.csv");
    let out = ccb(&["simulate", "--config", s(&cfg), "--known-cost", "--summary", s(&sum_path)]);
    assert!(out.status.success());
    let summary = std::fs::read_to_string(sum_path).unwrap();
    assert!(summary.lines().nth(1).unwrap().starts_with("known,"));
}

#[test]
fn bounds_prints_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "c.json", SYNTHETIC);
    let out = ccb(&["bounds", "--config", s(&cfg)]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("upper_coeff: 6077.86"), "{text}");
    assert!(text.contains("lower_coeff: 15.228"));
}

#[test]
fn table2_small_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let out = ccb(&[
        "table2", "--runs", "1", "--horizon", "200", "--cost-dist", "constant", "--out", s(&path),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().count(), 1 + 18);
    assert!(text.contains("\nK6_L3_gap0.1_known,"));
}

#[test]
fn ingest_builds_known_cost_config() {
    let dir = tempfile::tempdir().unwrap();
    let log = write(
        &dir,
        "clicks.tsv",
        "# query\tshown\tclicked\nq1\ta,b,c\tb\nq2\ta,b\t-\nq3\tc,a\ta\n",
    );
    let cfg_path = dir.path().join("cfg.json");
    let out = ccb(&["ingest", "--log", s(&log), "--cost", "0.2", "--out", s(&cfg_path)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json = std::fs::read_to_string(&cfg_path).unwrap();
    assert!(json.contains("\"known_cost\": true") || json.contains("\"known_cost\":true"));
    // The generated config drives the other subcommands.
    let out = ccb(&["offline", "--config", s(&cfg_path)]);
    assert!(out.status.success());
}

#[test]
fn ingest_warns_on_clamped_rates() {
    let dir = tempfile::tempdir().unwrap();
    let log = write(&dir, "clicks.tsv", "q1\ta,b\ta\nq2\ta,b\ta\n");
    let out = ccb(&["ingest", "--log", s(&log), "--cost", "0.2"]);
    assert!(out.status.success());
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("clamped"), "{err}");
}

#[test]
fn validation_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(&dir, "c.json", r#"{"arms": [{"theta": 0.4, "cost_mean": 0.4}], "horizon": 10}"#);
    let out = ccb(&["offline", "--config", s(&cfg)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error:"));

    let cfg = write(&dir, "a.json", r#"{"arms": [{"theta": 0.6, "cost_mean": 0.4}], "horizon": 10, "alpha": 1.0}"#);
    assert_eq!(ccb(&["simulate", "--config", s(&cfg)]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(ccb(&["offline", "--config", s(&missing)]).status.code(), Some(2));

    let bad = write(&dir, "bad.json", "{not json");
    assert_eq!(ccb(&["bounds", "--config", s(&bad)]).status.code(), Some(2));

    let unknown_field = write(&dir, "u.json", r#"{"arms": [], "horizon": 10, "colour": 1}"#);
    assert_eq!(ccb(&["offline", "--config", s(&unknown_field)]).status.code(), Some(2));

    let log = write(&dir, "bad.tsv", "q1\ta,b\n");
    assert_eq!(ccb(&["ingest", "--log", s(&log), "--cost", "0.2"]).status.code(), Some(2));

    let empty = write(&dir, "empty.tsv", "# nothing\n\n");
    assert_eq!(ccb(&["ingest", "--log", s(&empty), "--cost", "0.2"]).status.code(), Some(2));
}
