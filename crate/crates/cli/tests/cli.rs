use std::f64::consts::PI;
use std::process::{Command, Output};

use oam_mzi_cli::output::{parse_csv, FIELD_HEADER, SWEEP_HEADER};
use serde_json::Value;

fn oam_mzi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oam-mzi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn sweep_l0_sensitivity_equals_distinguishability() {
    let pi = PI.to_string();
    let out = oam_mzi(&["sweep", "--l", "0", "--steps", "4", "--alpha-max", &pi]);
    assert!(out.status.success());
    let (schema, header, rows) = parse_csv(&stdout(&out)).unwrap();
    assert_eq!(schema, 1);
    assert_eq!(header, SWEEP_HEADER);
    assert_eq!(rows.len(), 5);
    for r in &rows {
        assert!((r[2] - r[3]).abs() <= 1e-12, "{r:?}");
    }
}

#[test]
fn sweep_l2_operating_row() {
    let pi = PI.to_string();
    let out = oam_mzi(&["sweep", "--l", "2", "--steps", "2", "--alpha-max", &pi]);
    let (_, _, rows) = parse_csv(&stdout(&out)).unwrap();
    let mid = &rows[1];
    assert_eq!(mid[0], PI / 2.0);
    let want = [0.5, 1.0 / 3.0, 1.0, 1.0];
    for (got, want) in mid[1..].iter().zip(want) {
        assert!((got - want).abs() <= 1e-12, "{mid:?}");
    }
}

#[test]
fn sweep_json_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.json");
    let out = oam_mzi(&[
        "sweep",
        "--steps",
        "8",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
    assert_eq!(v["rows"][0]["likelihood"], 0.5);
}

#[test]
fn sweep_validation_exit_codes() {
    let out = oam_mzi(&["sweep", "--steps", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("steps"));

    let out = oam_mzi(&["sweep", "--c1-re", "1", "--c2-re", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("|c1|^2 + |c2|^2"));

    let out = oam_mzi(&["sweep", "--alpha-min", "1", "--alpha-max", "-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_defaults() {
    let v = json(&oam_mzi(&["budget", "--l", "2"]));
    assert_eq!(v["schema"], 1);
    assert_eq!(v["criterion"], "unit-SNR");
    let n = v["photon"]["n_photons"].as_f64().unwrap();
    assert!((n - 9.0e4).abs() < 1.0);
    assert!(v["photon"]["expected_wrong"].as_f64().unwrap() < 1.0);
    let cn = v["comparator"]["n_photons"].as_f64().unwrap();
    let cw = v["comparator"]["expected_wrong"].as_f64().unwrap();
    assert!((cn - 5.3e4).abs() < 0.05e4 && (cw - 2.6e3).abs() < 0.05e3);
    assert_eq!(v["frontier"].as_array().unwrap().len(), 20);

    let v = json(&oam_mzi(&["budget", "--l", "0"]));
    assert!((v["photon"]["n_photons"].as_f64().unwrap() - 1.0e4).abs() < 1e-6);
}

#[test]
fn budget_unbounded_comparator_is_flagged() {
    let v = json(&oam_mzi(&["budget", "--compare-d", "1"]));
    assert_eq!(v["comparator"]["n_photons"], "unbounded");
}

#[test]
fn budget_degenerate_exit_codes() {
    assert_eq!(oam_mzi(&["budget", "--alpha0", "0"]).status.code(), Some(3));
    assert_eq!(oam_mzi(&["budget", "--phase-shift", "-1"]).status.code(), Some(2));
    assert_eq!(oam_mzi(&["budget", "--compare-d", "1.5"]).status.code(), Some(2));
}

#[test]
fn shots_perfect_guessing_and_determinism() {
    let args = [
        "shots", "--l", "2", "--alpha", "1.570796", "--n", "100000", "--seed", "7",
    ];
    let first = oam_mzi(&args);
    let v = json(&first);
    assert_eq!(v["summary"]["wrong_guesses"], 0);
    assert_eq!(v["mode"], "which-way");
    assert_eq!(first.stdout, oam_mzi(&args).stdout);
}

#[test]
fn shots_discrimination_band() {
    let v = json(&oam_mzi(&[
        "shots",
        "--delta-alpha",
        "0.003333",
        "--n",
        "90000",
        "--trials",
        "100",
        "--summary-only",
    ]));
    assert_eq!(v["mode"], "discrimination");
    let rate = v["summary"]["success_rate"].as_f64().unwrap();
    assert!((0.76..=0.92).contains(&rate), "rate {rate}");
    assert!(v["summary"]["mean_wrong_paths"].as_f64().unwrap() < 1.0);
    assert!(v["summary"].get("trials").is_none());
}

#[test]
fn shots_validation() {
    assert_eq!(oam_mzi(&["shots", "--n", "0"]).status.code(), Some(2));
    assert_eq!(oam_mzi(&["shots", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(
        oam_mzi(&["shots", "--alpha", "0", "--delta-alpha", "0.01"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn modes_grid_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("field.csv");
    let out = oam_mzi(&[
        "modes",
        "--family",
        "lg",
        "--l",
        "2",
        "--p",
        "0",
        "--s",
        "+1",
        "--grid",
        "21",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("3-fold"));
    let (schema, header, rows) = parse_csv(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((schema, header.as_str()), (1, FIELD_HEADER));
    assert_eq!(rows.len(), 21 * 21);
    // row-major, y outer
    assert_eq!((rows[1][0], rows[1][1]), (rows[0][0] + 0.25, rows[0][1]));
}

#[test]
fn modes_gaussian_peak_at_center() {
    let out = oam_mzi(&["modes", "--l", "0", "--s", "+1", "--grid", "11"]);
    let (_, _, rows) = parse_csv(&stdout(&out)).unwrap();
    let mag = |r: &Vec<f64>| r[2].hypot(r[3]);
    let center = &rows[5 * 11 + 5];
    assert_eq!((center[0], center[1]), (0.0, 0.0));
    assert!(rows.iter().all(|r| mag(r) <= mag(center)));
}

#[test]
fn modes_minus_spin_and_errors() {
    let out = oam_mzi(&["modes", "--l", "2", "--s", "-1", "--grid", "9"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("1-fold"));
    assert_eq!(oam_mzi(&["modes", "--grid", "0"]).status.code(), Some(2));
    assert_eq!(oam_mzi(&["modes", "--family", "hg"]).status.code(), Some(2));
    assert_eq!(oam_mzi(&["modes", "--s", "0"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_catches_fault() {
    let out = oam_mzi(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAIL"));

    let out = oam_mzi(&["verify", "--inject-fault", "bs-convention"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("beam-splitter unitarity"));
}
