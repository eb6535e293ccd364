//! End-to-end tests of the `bouncer` binary: output shape, determinism,
//! exit codes, configuration handling.

use std::process::{Command, Output};

fn bouncer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bouncer"))
        .args(args)
        .env_remove("BOUNCER_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn spectrum_default_grid_and_determinism() {
    let first = bouncer(&["spectrum"]);
    assert_eq!(first.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&first.stderr));
    let text = stdout(&first);
    let lines: Vec<&str> = text.lines().collect();
    // header + 100 cells x 3 method rows
    assert_eq!(lines.len(), 301);
    assert_eq!(lines[0], "s,n,method,value,status,flags");
    // every data row carries a method tag
    assert!(lines[1..]
        .iter()
        .all(|l| l.contains(",lattice,") || l.contains(",bessel,") || l.contains(",perturbative,")));
    // a known six-digit reference cell, s = 10, n = 1
    assert!(
        text.contains("10,1,bessel,0.01168598"),
        "missing reference cell in output"
    );
    // suspect reference cells are flagged
    assert!(text.contains("2,6,lattice") && text.contains("suspect_reference"));
    // byte-identical across runs
    let second = bouncer(&["spectrum"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn spectrum_beyond_solver_range_is_partial() {
    let out = bouncer(&["spectrum", "--s", "20", "--nmax", "3"]);
    assert_eq!(out.status.code(), Some(4), "partial results exit code");
    let text = stdout(&out);
    assert!(text.contains("extrapolated"));
    assert!(text.contains("error: unsupported scale"));
    // lattice values still present
    assert!(text.contains("20,1,lattice,0.0029223"));
}

#[test]
fn spectrum_json_is_machine_readable() {
    let out = bouncer(&["spectrum", "--s", "3", "--nmax", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    let methods: Vec<&str> = rows[0]["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|mv| mv["method"].as_str().unwrap())
        .collect();
    assert_eq!(methods, ["lattice", "bessel", "perturbative"]);
    assert!(rows[0]["route_agreement"].as_f64().unwrap() < 1e-8);
}

#[test]
fn profile_overlay_quality() {
    // s = 10: near-coincident columns; peak-relative sup deviation < 1%.
    let text = stdout(&bouncer(&["profile", "--s", "10", "--n", "1"]));
    let (sup10, sum10) = profile_stats(&text);
    assert!(sup10 < 0.01, "s = 10 deviation {sup10}");
    assert!((sum10 - 1.0).abs() < 1e-10, "normalization {sum10}");
    // s = 1: visibly departing columns.
    let text1 = stdout(&bouncer(&["profile", "--s", "1", "--n", "1"]));
    let (sup1, sum1) = profile_stats(&text1);
    assert!(sup1 > 0.05, "s = 1 deviation only {sup1}");
    assert!((sum1 - 1.0).abs() < 1e-10);
}

/// (peak-relative sup deviation between columns, lattice sum x lambda).
fn profile_stats(csv: &str) -> (f64, f64) {
    let mut rows: Vec<(f64, f64, f64)> = Vec::new();
    for line in csv.lines().skip(1) {
        let mut it = line.split(',');
        let z: f64 = it.next().unwrap().parse().unwrap();
        let a: f64 = it.next().unwrap().parse().unwrap();
        let b: f64 = it.next().unwrap().parse().unwrap();
        rows.push((z, a, b));
    }
    let lambda = rows[1].0 - rows[0].0;
    let peak = rows.iter().map(|r| r.2).fold(0.0f64, f64::max);
    let sup = rows
        .iter()
        .map(|r| (r.1 - r.2).abs())
        .fold(0.0f64, f64::max)
        / peak;
    let sum: f64 = rows.iter().map(|r| r.1).sum::<f64>() * lambda;
    (sup, sum)
}

#[test]
fn bound_report_scales() {
    let out = bouncer(&["bound"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // free-fall bound of a few microns and a centrifugal bound of ~1.7 A
    assert!(text.contains("bound,1,0.102,1,"));
    assert!(text.contains("bound,1,0.102,1e7,"));
    let centrifugal: f64 = text
        .lines()
        .find(|l| l.starts_with("bound,1,0.102,1e7"))
        .unwrap()
        .split(',')
        .nth(5)
        .unwrap()
        .parse()
        .unwrap();
    assert!(centrifugal > 0.2e-10 && centrifugal < 1.8e-10);
    // heights present and inside the published bars
    assert!(text.lines().filter(|l| l.starts_with("height,")).count() == 2);
    assert!(text.lines().filter(|l| l.starts_with("height,")).all(|l| l.ends_with(",true")));
}

#[test]
fn lifetime_report_value() {
    let out = bouncer(&["lifetime"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let data_line = text.lines().nth(1).unwrap();
    let lambda_max: f64 = data_line.split(',').last().unwrap().parse().unwrap();
    assert!(lambda_max > 1e-7 && lambda_max < 1e-6, "lambda_max {lambda_max}");
}

#[test]
fn rate_report_coefficient() {
    let out = bouncer(&["rate"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let coeff: f64 = text
        .lines()
        .find(|l| l.starts_with("fitted_coefficient"))
        .unwrap()
        .split(',')
        .last()
        .unwrap()
        .parse()
        .unwrap();
    assert!((coeff - 0.5).abs() < 0.05, "coefficient {coeff}");
}

#[test]
fn config_file_applies_and_flags_override() {
    let dir = std::env::temp_dir().join(format!("bouncer-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.json");
    std::fs::write(&path, r#"{"s_values": [4.0], "n_max": 2, "format": "csv"}"#).unwrap();
    let out = bouncer(&["spectrum", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 1 + 2 * 3);
    // flag overrides the file
    let out = bouncer(&["spectrum", "--config", path.to_str().unwrap(), "--nmax", "1"]);
    assert_eq!(stdout(&out).lines().count(), 1 + 3);
    // environment variable names the default config
    let out = Command::new(env!("CARGO_BIN_EXE_bouncer"))
        .args(["spectrum"])
        .env("BOUNCER_CONFIG", path.to_str().unwrap())
        .output()
        .unwrap();
    assert_eq!(stdout(&out).lines().count(), 1 + 2 * 3);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn config_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("bouncer-cli-err-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // unknown key rejected
    let bad_key = dir.join("bad_key.json");
    std::fs::write(&bad_key, r#"{"mass": 1.0}"#).unwrap();
    assert_eq!(
        bouncer(&["spectrum", "--config", bad_key.to_str().unwrap()]).status.code(),
        Some(2)
    );
    // non-positive override rejected
    let bad_value = dir.join("bad_value.json");
    std::fs::write(&bad_value, r#"{"mass_kg": -1.0}"#).unwrap();
    assert_eq!(
        bouncer(&["spectrum", "--config", bad_value.to_str().unwrap()]).status.code(),
        Some(2)
    );
    // unknown flag and unknown command
    assert_eq!(bouncer(&["spectrum", "--bogus", "1"]).status.code(), Some(2));
    assert_eq!(bouncer(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bouncer(&["spectrum", "--format", "xml"]).status.code(), Some(2));
    // s below the supported range
    assert_eq!(bouncer(&["spectrum", "--s", "0.5"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("bouncer-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let out = bouncer(&["spectrum", "--s", "6", "--nmax", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("s,n,method,value,status,flags\n"));
    assert!(written.contains("6,1,bessel,0.03243854"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn table_format_renders() {
    let out = bouncer(&["spectrum", "--s", "5", "--nmax", "2", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("lattice"));
    assert!(text.contains("0.0466891993"));
}
