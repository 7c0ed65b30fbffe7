use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lobachevsky")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_report_schema() {
    let out = run(&["verify", "parallels", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["suite"], "parallels");
    assert_eq!(v["seed"], 7);
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["name", "max_residual", "tolerance", "pass"] {
            assert!(c.get(key).is_some(), "missing {key} in {c}");
        }
        assert_eq!(c["pass"], true, "{c}");
    }
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", "horosphere", "--seed", "3"]);
    let b = run(&["verify", "horosphere", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_writes_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("units.json");
    let out = run(&["verify", "units", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "units");
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn zero_tolerance_fails() {
    let out = run(&["verify", "duality", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["pass"] == false));
}

#[test]
fn bad_curvature_is_a_usage_error() {
    assert_eq!(run(&["--curvature", "-1", "verify", "all"]).status.code(), Some(2));
}

#[test]
fn table_csv() {
    let out = run(&["table", "--d-min", "0.01", "--d-max", "5", "--steps", "100"]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap(), vec!["d", "analytic", "oracle", "abs_diff"]);
    let rows: Vec<[f64; 4]> = rdr
        .records()
        .map(|r| {
            let r = r.unwrap();
            [0, 1, 2, 3].map(|i| r[i].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 100);
    assert!(rows.windows(2).all(|w| w[1][1] < w[0][1]));
    assert!(rows.iter().all(|r| r[3] < 1e-7));
}

#[test]
fn table_known_value() {
    // Π(ln 2) = 2 atan(1/2)
    let d = 2f64.ln().to_string();
    let out = run(&["table", "--d-min", &d, "--d-max", "1", "--steps", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let first = rdr.records().next().unwrap().unwrap();
    let pi: f64 = first[1].parse().unwrap();
    assert!((pi - 0.927_295_218_001_612_2).abs() < 1e-7, "{pi}");
}

#[test]
fn table_bad_range_is_a_usage_error() {
    assert_eq!(run(&["table", "--d-min", "3", "--d-max", "1"]).status.code(), Some(2));
    assert_eq!(run(&["table", "--d-min", "0", "--d-max", "1"]).status.code(), Some(2));
}

fn render(dir: &Path, name: &str, extra: &[&str]) -> Vec<u8> {
    let path = dir.join(format!("{name}.svg"));
    let mut args = vec!["figure", name, "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    fs::read(path).unwrap()
}

#[test]
fn every_figure_renders_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    for i in 1..=8 {
        let name = format!("fig{i}");
        let a = render(dir.path(), &name, &[]);
        let text = String::from_utf8(a.clone()).unwrap();
        assert!(text.starts_with("<svg") || text.starts_with("<?xml"), "{name}");
        assert!(text.contains("<polyline") || text.contains("<path"), "{name}");
        assert_eq!(a, render(dir.path(), &name, &[]), "{name}");
    }
}

#[test]
fn klein_differs_from_poincare() {
    let dir = tempfile::tempdir().unwrap();
    let p = render(dir.path(), "fig2", &[]);
    let k = render(dir.path(), "fig2", &["--projection", "klein"]);
    assert_ne!(p, k);
}

#[test]
fn figure_scene_json() {
    let dir = tempfile::tempdir().unwrap();
    let scene = dir.path().join("fig7.json");
    render(dir.path(), "fig7", &["--scene", scene.to_str().unwrap()]);
    let v: Value = serde_json::from_slice(&fs::read(&scene).unwrap()).unwrap();
    assert_eq!(v["name"], "fig7");
    assert!(!v["items"].as_array().unwrap().is_empty());
    assert!(!v["checks"].as_array().unwrap().is_empty());
}

#[test]
fn unknown_figure_is_a_usage_error() {
    assert_eq!(run(&["figure", "fig9"]).status.code(), Some(2));
}

#[test]
fn duality_report() {
    let out = run(&["--curvature", "3", "duality", "--a", "0.5", "--b", "1.2", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["r"], 3.0);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}
