use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn critpoint(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_critpoint"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

const CONVERGENCE: &str = r#"{
  "experiment": "convergence",
  "measure": {"kind": "uniform_circle", "params": {"center": [0, 0], "radius": 1}},
  "n_schedule": [16, 32, 64],
  "seed": 11,
  "options": {"reference_size": 2000}
}"#;

const JENSEN: &str = r#"{
  "experiment": "jensen",
  "measure": {"kind": "uniform_disk", "params": {"center": [0, 0], "radius": 1}},
  "n_schedule": [16],
  "trials": 1000,
  "seed": 5
}"#;

#[test]
fn two_roots_give_the_midpoint() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "roots2.json", "[[1,0],[-1,0]]");
    let out = critpoint(&["critical", "--roots", "roots2.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let pts: Vec<[f64; 2]> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(pts.len(), 1);
    assert!(pts[0][0].abs() < 1e-15 && pts[0][1].abs() < 1e-15, "{pts:?}");
}

#[test]
fn reruns_write_identical_series() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "conv.json", CONVERGENCE);
    let a = critpoint(&["run", "--config", "conv.json", "--out", "a", "--quiet"], dir.path());
    let b = critpoint(&["--threads", "1", "run", "--config", "conv.json", "--out", "b", "--quiet"], dir.path());
    assert!(matches!(a.status.code(), Some(0 | 1)), "{a:?}");
    assert_eq!(a.status.code(), b.status.code());
    let sa = fs::read(dir.path().join("a/series.csv")).unwrap();
    let sb = fs::read(dir.path().join("b/series.csv")).unwrap();
    assert!(!sa.is_empty());
    assert_eq!(sa, sb);
}

#[test]
fn outputs_parse() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "conv.json", CONVERGENCE);
    critpoint(&["run", "--config", "conv.json", "--out", "o", "--quiet"], dir.path());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("o/report.json")).unwrap()).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["experiment"], "convergence");
    assert_eq!(report["config"]["trials"], 1);

    let mut rdr = csv::Reader::from_path(dir.path().join("o/series.csv")).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["experiment", "n", "stat_name", "value"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), report["rows"].as_array().unwrap().len());
    assert!(rows.iter().all(|r| &r[0] == "convergence"));
}

#[test]
fn jensen_small_run_passes() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "jensen.json", JENSEN);
    let out = critpoint(&["run", "--config", "jensen.json", "--out", "j"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("j/report.json")).unwrap()).unwrap();
    let rate = report["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["stat_name"] == "pass_rate")
        .unwrap()["value"]
        .as_f64()
        .unwrap();
    assert!(rate >= 0.99, "{rate}");
}

#[test]
fn seed_override_keeps_the_schema() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "conv.json", CONVERGENCE);
    critpoint(&["run", "--config", "conv.json", "--out", "a", "--quiet"], dir.path());
    critpoint(&["run", "--config", "conv.json", "--out", "b", "--quiet", "--seed", "99"], dir.path());
    let read = |d: &str| -> serde_json::Value {
        serde_json::from_str(&fs::read_to_string(dir.path().join(d).join("report.json")).unwrap()).unwrap()
    };
    let (a, b) = (read("a"), read("b"));
    assert_ne!(a["rows"], b["rows"]);
    assert_eq!(b["config"]["seed"]["master_seed"], 99);
    let keys = |v: &serde_json::Value| v.as_object().unwrap().keys().cloned().collect::<Vec<_>>();
    assert_eq!(keys(&a), keys(&b));
    let names = |v: &serde_json::Value| {
        v["rows"].as_array().unwrap().iter().map(|r| (r["n"].clone(), r["stat_name"].clone())).collect::<Vec<_>>()
    };
    assert_eq!(names(&a), names(&b));
}

#[test]
fn failing_verdict_exits_one() {
    let dir = TempDir::new().unwrap();
    // A growth bound no polynomial can meet.
    write(
        dir.path(),
        "growth.json",
        r#"{"experiment": "growth",
            "measure": {"kind": "uniform_circle", "params": {"center": [0, 0], "radius": 1}},
            "n_schedule": [16, 32],
            "tolerances": {"max_growth_ratio": 1e-9}}"#,
    );
    let out = critpoint(&["run", "--config", "growth.json", "--out", "g", "--quiet"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(dir.path().join("g/report.json").exists());
}

#[test]
fn malformed_config_exits_two_with_a_line() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "bad.json", "{\"experiment\": \"jensen\",\n  \"colour\": 1}");
    let out = critpoint(&["run", "--config", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn unknown_tolerance_is_rejected() {
    let dir = TempDir::new().unwrap();
    let text = JENSEN.replace("\"seed\": 5", "\"seed\": 5, \"tolerances\": {\"tol\": 1}");
    write(dir.path(), "bad.json", &text);
    assert_eq!(critpoint(&["run", "--config", "bad.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn missing_files_exit_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(critpoint(&["run", "--config", "absent.json"], dir.path()).status.code(), Some(2));
    assert_eq!(critpoint(&["critical", "--roots", "absent.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn critical_accepts_a_config() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "crit.json",
        r#"{"experiment": "critical",
            "measure": {"kind": "complex_gaussian", "params": {"mean": [0, 0], "scale": 1}},
            "n_schedule": [8, 32], "trials": 5}"#,
    );
    let out = critpoint(&["critical", "--config", "crit.json", "--out", "c", "--quiet"], dir.path());
    assert_eq!(out.status.code(), Some(0));
}
