use std::path::Path;
use std::process::{Command, Output};

fn noisecap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_noisecap")).args(args).output().expect("binary runs")
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<f64>], name: &str) -> Vec<f64> {
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i]).collect()
}

#[test]
fn surface_reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for path in [&a, &b] {
        let out = noisecap(&["surface", "--eta-steps", "6", "--s-steps", "5", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn surface_has_no_quantum_capacity_at_eta_below_half() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("surface.csv");
    let out = noisecap(&["surface", "--eta-steps", "6", "--s-steps", "6", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = read_csv(&path);
    assert_eq!(header, ["eta", "s", "c1", "q1", "fidelity", "entropy"]);
    let (eta, q1) = (column(&header, &rows, "eta"), column(&header, &rows, "q1"));
    let at_04: Vec<f64> = eta.iter().zip(&q1).filter(|(e, _)| (**e - 0.4).abs() < 1e-12).map(|(_, q)| *q).collect();
    assert_eq!(at_04.len(), 6);
    assert!(at_04.iter().all(|&q| q == 0.0));
}

#[test]
fn surface_corners() {
    let out = noisecap(&["surface", "--eta-steps", "2", "--s-steps", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    let corner: Vec<f64> = lines[4].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(&corner[..5], &[1.0; 5], "{}", lines[4]);
}

#[test]
fn twosite_trajectory_follows_rabi_oscillation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.csv");
    let out = noisecap(&["trajectory", "--model", "twosite", "--dephasing-scale", "0", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = read_csv(&path);
    assert_eq!(header, ["t", "eta", "s", "c1", "q1", "fidelity", "entropy", "degenerate_flag"]);
    let (t, eta) = (column(&header, &rows, "t"), column(&header, &rows, "eta"));
    for (t, eta) in t.iter().zip(&eta) {
        assert!((eta - t.sin().powi(2)).abs() < 1e-6, "t {t}");
    }
    assert_eq!(column(&header, &rows, "degenerate_flag")[0], 1.0);
}

#[test]
fn noiseless_threesite_never_carries_quantum_information() {
    let out = noisecap(&["trajectory", "--model", "threesite", "--dephasing-scale", "0", "--t-steps", "101"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        assert_eq!(line.split(',').nth(4), Some("0"), "{line}");
    }
}

#[test]
fn config_file_is_accepted_and_errors_name_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.toml");
    std::fs::write(&good, "[network]\nsites = 2\nhoppings = [[1, 2, 1.0]]\n[sweep]\nt_max = 1.0\nt_steps = 3\n").unwrap();
    let out = noisecap(&["trajectory", "--config", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "[network]\nsites = 2\ndephasing = [0.0, -1.0]\n").unwrap();
    let out = noisecap(&["trajectory", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("network.dephasing"));
}

#[test]
fn verify_fast_passes() {
    let out = noisecap(&["verify", "--level", "fast"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_detects_corrupted_kraus_operators() {
    let out = noisecap(&["verify", "--corrupt-kraus"]);
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("FAIL kraus-completeness")), "{text}");
}

#[test]
fn models_listing() {
    let out = noisecap(&["models"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let names: Vec<&str> = text.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(names, ["twosite", "threesite", "fmo7"]);
    assert!(!text.contains('\x1b'));

    let out = noisecap(&["models", "--json"]);
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 3);
}

#[test]
fn bad_flags_are_validation_errors() {
    assert_eq!(noisecap(&["surface", "--eta-steps", "1"]).status.code(), Some(1));
    assert_eq!(noisecap(&["trajectory", "--model", "nope"]).status.code(), Some(1));
    assert_eq!(noisecap(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(noisecap(&["--help"]).status.code(), Some(0));
}
