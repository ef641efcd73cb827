use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn fraclap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fraclap"))
        .args(args)
        .env_remove("FRACLAP_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows of a CSV document, metadata and header stripped.
fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    stdout(o)
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn column(rows: &[Vec<String>], i: usize) -> Vec<f64> {
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

fn meta(o: &Output, key: &str) -> String {
    let prefix = format!("# {key} = ");
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix(&prefix).map(str::to_owned))
        .unwrap_or_else(|| panic!("no metadata key {key}"))
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn nearest_neighbour_row() {
    let v = column(&csv_rows(&fraclap(&["matrix", "--alpha", "2", "--n", "4"])), 1);
    for (a, b) in v.iter().zip([2.0, -1.0, 0.0, -1.0]) {
        assert!((a - b).abs() < 1e-14, "{v:?}");
    }
}

#[test]
fn two_site_row() {
    let v = column(&csv_rows(&fraclap(&["matrix", "--alpha", "1", "--n", "2"])), 1);
    assert_eq!(v, vec![1.0, -1.0]);
}

#[test]
fn both_methods_agree() {
    let o = fraclap(&["matrix", "--alpha", "1.5", "--n", "64", "--method", "both"]);
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 64);
    assert!(column(&rows, 3).iter().all(|d| *d <= 1e-8));
    assert!(meta(&o, "max_abs_diff").parse::<f64>().unwrap() <= 1e-8);
}

#[test]
fn full_matrix_has_zero_row_sums() {
    let rows = csv_rows(&fraclap(&["matrix", "--alpha", "0.7", "--n", "6", "--full"]));
    assert_eq!(rows.len(), 6);
    for r in &rows {
        let s: f64 = r[1..].iter().map(|v| v.parse::<f64>().unwrap()).sum();
        assert!(s.abs() < 1e-13);
    }
}

#[test]
fn dispersion_surface() {
    let o = fraclap(&["dispersion", "--alpha", "0.001,2,3", "--kappa-grid", "0.1:2pi:63,pi"]);
    assert_eq!(o.status.code(), Some(2), "a range and a list cannot be mixed");

    let rows = csv_rows(&fraclap(&[
        "dispersion",
        "--alpha",
        "0.001,2,3",
        "--kappa-grid",
        "pi/3,pi",
    ]));
    let w = column(&rows, 3);
    assert!((w[0] - 0.5).abs() < 1e-3 && (w[1] - 0.5).abs() < 1e-3);
    assert!((w[2] - 0.5).abs() < 1e-14 && (w[3] - 1.0).abs() < 1e-15);
    assert!((w[5] - std::f64::consts::SQRT_2).abs() < 1e-15);

    let rows = csv_rows(&fraclap(&["dispersion", "--alpha", "2", "--kappa-grid", "0:2pi:101"]));
    let w = column(&rows, 3);
    let max = w.iter().cloned().fold(0.0, f64::max);
    assert!((max - 1.0).abs() < 1e-15);
}

#[test]
fn kernel_values() {
    let rows = csv_rows(&fraclap(&[
        "kernel", "--alpha", "1,2,3", "--length", "1", "--x-grid", "0.5",
    ]));
    let k = column(&rows, 2);
    assert!((k[0] - PI).abs() < 1e-12);
    assert_eq!(k[1], 0.0);
    assert!(k[2] < 0.0);
}

#[test]
fn default_kernel_grid_spans_two_periods() {
    let rows = csv_rows(&fraclap(&["kernel"]));
    assert_eq!(rows.len(), 7 * 40);
    let first = column(&rows, 1);
    assert_eq!(first[0], 0.025);
    assert_eq!(first[39], 1.975);
}

#[test]
fn lattice_points_need_regularization() {
    let o = fraclap(&["kernel", "--alpha", "1.5", "--x-grid", "0,0.5,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lattice point"));

    let o = fraclap(&["kernel", "--alpha", "1.5", "--x-grid", "0,0.5,1", "--eps", "1e-3"]);
    assert_eq!(meta(&o, "representation"), "regularized");
    let k = column(&csv_rows(&o), 2);
    assert!(k[0] < 0.0 && k[1] > 0.0 && (k[0] - k[2]).abs() < 1e-9 * k[0].abs());

    let o = fraclap(&["kernel", "--infinite", "--alpha", "1", "--x-grid", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn convergence_run() {
    let o = fraclap(&["converge", "--alpha", "1", "--length", "1", "--x", "0.5"]);
    assert_eq!(meta(&o, "monotone"), "true");
    let err = column(&csv_rows(&o), 6);
    assert!(err.windows(2).all(|w| w[1] < w[0]));
    assert!(err[err.len() - 1] * 10.0 <= err[0]);

    let rows = csv_rows(&fraclap(&["converge", "--alpha", "2", "--x", "0.25"]));
    assert!(column(&rows, 5).iter().all(|v| *v == 0.0));
    assert!(column(&rows, 4).iter().all(|v| v.abs() < 1e-8));

    let o = fraclap(&["converge", "--alpha", "1", "--x", "0.3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_layout() {
    let j = json(&fraclap(&["matrix", "--alpha", "1", "--n", "2", "--format", "json"]));
    assert_eq!(j["meta"]["tool"], "fraclap");
    assert_eq!(j["meta"]["n"], 2);
    assert_eq!(j["data"][1]["value"], -1.0);
}

#[test]
fn verify_single_identity() {
    let o = fraclap(&["verify", "--only", "euler-reflection"]);
    assert!(o.status.success());
    let j = json(&o);
    assert_eq!(j["data"].as_array().unwrap().len(), 1);
    assert_eq!(j["data"][0]["check"], "euler-reflection");
    assert_eq!(j["data"][0]["pass"], true);
    assert!(j["data"][0]["residual"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn verify_full_suite_passes() {
    let o = fraclap(&["verify"]);
    let j = json(&o);
    assert!(o.status.success(), "{j:#}");
    assert_eq!(j["meta"]["failed"], 0);
}

#[test]
fn injected_perturbation_fails() {
    let o = fraclap(&["verify", "--only", "euler-reflection,duplication", "--perturb", "1e-6"]);
    assert_eq!(o.status.code(), Some(1));
    let j = json(&o);
    assert_eq!(j["meta"]["failed"], 2);
}

#[test]
fn unknown_check_is_a_usage_error() {
    assert_eq!(fraclap(&["verify", "--only", "no-such-check"]).status.code(), Some(2));
}

#[test]
fn non_convergence_exit_code() {
    let o = fraclap(&[
        "matrix", "--alpha", "0.5", "--n", "64", "--method", "imagesum", "--tol", "1e-300",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn validation_exit_codes() {
    assert_eq!(fraclap(&["matrix", "--alpha=-1", "--n", "3"]).status.code(), Some(2));
    assert_eq!(fraclap(&["matrix", "--alpha", "1", "--n", "0"]).status.code(), Some(2));
    assert_eq!(fraclap(&["kernel", "--x-grid", "0:1"]).status.code(), Some(2));
    assert_eq!(fraclap(&["bogus"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_fraclap"))
        .args(["matrix", "--alpha", "1", "--n", "3"])
        .env("FRACLAP_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "4", "4"] {
        let path = dir.path().join(format!("k{}.json", outputs.len()));
        let status = Command::new(env!("CARGO_BIN_EXE_fraclap"))
            .args(["kernel", "--alpha", "0.5:3.5:7", "--format", "json", "--out"])
            .arg(&path)
            .env("FRACLAP_THREADS", threads)
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push(std::fs::read(&path).unwrap());
    }
    assert!(!outputs[0].is_empty());
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[1], outputs[2]);
}
