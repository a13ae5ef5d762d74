//! End-to-end checks of the command-line surface: the exit-code contract
//! (0 success, 2 domain/solver failure, 64 usage), the output file formats,
//! and replayability.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quadfam"))
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quadfam-cli-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn no_arguments_exits_64() {
    let out = bin().output().unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn unknown_subcommand_exits_64() {
    let out = bin().arg("eigenvalues").output().unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn superstable_success_prints_root_and_exits_0() {
    let dir = tmpdir("ss-ok");
    let out = bin()
        .args([
            "superstable",
            "--window",
            "0.9:1.1",
            "--period",
            "2",
            "--out",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("a* = 1"), "stdout: {stdout}");
    assert!(stdout.contains("period cap"), "stdout: {stdout}");
    let json = std::fs::read_to_string(dir.join("result.json")).unwrap();
    assert!(json.contains("\"kind\":\"superstable\""));
    assert!(json.contains("\"a\":1.0000000000000000e0"));
    assert!(dir.join("manifest.json").exists());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn superstable_no_sign_change_exits_2() {
    let dir = tmpdir("ss-fail");
    let out = bin()
        .args([
            "superstable",
            "--window",
            "1.2:1.3",
            "--period",
            "2",
            "--out",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("sign"), "stderr: {stderr}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn bad_parameter_exits_2() {
    let dir = tmpdir("orbit-bad");
    let out = bin()
        .args([
            "orbit", "--a", "2.5", "--x0", "0.0", "--n", "5", "--out",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn measure_then_wasserstein_against_arcsine() {
    let dir = tmpdir("measure");
    let status = bin()
        .args([
            "measure", "--a", "2.0", "--n", "20000", "--burn", "100", "--seed", "7",
            "--bins", "16", "--out", dir.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    // histogram: header plus one line per bin, masses summing to ~1
    let hist = std::fs::read_to_string(dir.join("histogram.csv")).unwrap();
    let lines: Vec<&str> = hist.lines().collect();
    assert_eq!(lines[0], "bin_left,bin_right,mass");
    assert_eq!(lines.len(), 17);
    let total: f64 = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(2).unwrap().parse::<f64>().unwrap())
        .sum();
    assert!((total - 1.0).abs() < 1e-9);
    let dir2 = tmpdir("w1");
    let out = bin()
        .args([
            "wasserstein",
            "--mu",
            dir.join("measure.json").to_str().unwrap(),
            "--arcsine",
            "--out",
            dir2.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json = std::fs::read_to_string(dir2.join("result.json")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    let w1 = value["w1"].as_f64().unwrap();
    assert!(w1 > 0.0 && w1 < 0.05, "w1 = {w1}");
    let _ = std::fs::remove_dir_all(&dir);
    let _ = std::fs::remove_dir_all(&dir2);
}

#[test]
fn wasserstein_requires_exactly_one_reference() {
    let dir = tmpdir("w1-bad");
    let out = bin()
        .args(["wasserstein", "--mu", "nope.json", "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn bc_check_writes_exact_schema() {
    let dir = tmpdir("bc");
    let status = bin()
        .args([
            "bc-check", "--a", "1.0", "--depth", "3", "--out", dir.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let json = std::fs::read_to_string(dir.join("result.json")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["depth"], 3);
    assert_eq!(value["first_violation"], 2);
    assert_eq!(value["recurrence_violations"][0], 2);
    // min_exponent is -inf here, which serializes as null
    assert!(value["min_exponent"].is_null());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn invalid_diagnostics_config_exits_2() {
    let dir = tmpdir("bc-bad");
    let out = bin()
        .args([
            "bc-check", "--a", "2.0", "--depth", "10", "--alpha", "0.5", "--out",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("alpha"), "stderr: {stderr}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn scan_csv_layout() {
    let dir = tmpdir("scan");
    let status = bin()
        .args([
            "scan", "--range", "1.0:1.0", "--grid", "1", "--n", "20000", "--out",
            dir.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.join("scan.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "a,kind,period,multiplier,lyapunov");
    assert!(lines[1].starts_with("1.0000000000000000e0,attracting,2,"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn extended_precision_reports_higher_cap() {
    let dir = tmpdir("ext");
    let out = bin()
        .args([
            "superstable",
            "--window",
            "1.7:1.8",
            "--period",
            "3",
            "--precision",
            "extended",
            "--out",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("n <= 40"), "stdout: {stdout}");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn identical_runs_are_byte_identical() {
    let dir_a = tmpdir("det-a");
    let dir_b = tmpdir("det-b");
    for dir in [&dir_a, &dir_b] {
        let status = bin()
            .args([
                "lyapunov", "--a", "2.0", "--n", "50000", "--burn", "100", "--seed", "99",
                "--out", dir.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    }
    let a = std::fs::read(dir_a.join("result.json")).unwrap();
    let b = std::fs::read(dir_b.join("result.json")).unwrap();
    assert_eq!(a, b);
    let _ = std::fs::remove_dir_all(&dir_a);
    let _ = std::fs::remove_dir_all(&dir_b);
}
