use std::process::{Command, Output};

use serde_json::Value;

fn superfock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superfock"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn fock_suite_passes() {
    let out = superfock(&["verify", "--suite", "fock", "--cutoff", "32", "--nu", "0.7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["schema_version"], "1");
    assert_eq!(r["command"], "verify");
    let checks = r["checks"].as_object().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.values().all(|c| c["status"] == "pass"));
    assert!(checks
        .values()
        .all(|c| c["invariant"].as_str().is_some_and(|s| !s.is_empty())));
}

#[test]
fn harmonic_csv_starts_with_paired_levels() {
    let out = superfock(&[
        "spectrum",
        "--model",
        "harmonic-susy",
        "--cutoff",
        "64",
        "--levels",
        "10",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("index,eigenvalue,degeneracy,sector"));
    let values: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), 10);
    for (v, e) in values.iter().zip([0.0, 1.0, 1.0, 2.0, 2.0]) {
        assert!((v - e).abs() < 1e-8, "{v} vs {e}");
    }
}

#[test]
fn csv_and_json_together() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("e.csv");
    let json = dir.path().join("r.json");
    let out = superfock(&[
        "spectrum",
        "--model",
        "susy1d",
        "--g0",
        "0.3",
        "--csv",
        csv.to_str().unwrap(),
        "--output",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let ev: Vec<f64> = r["results"]["spectrum"]["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert!(ev.windows(2).all(|w| w[0] <= w[1]));
    let rows = std::fs::read_to_string(&csv).unwrap().lines().count() - 1;
    assert_eq!(rows, ev.len());
}

#[test]
fn flagship_induction() {
    let out = superfock(&[
        "induce",
        "--group",
        "pauli2",
        "--subgroup",
        "bell",
        "--check-si",
        "--check-irreducible",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["results"]["induction"]["commutant_dimension"], 1);
    assert!(r["checks"]["si_residual"]["value"].as_f64().unwrap() < 1e-12);
    assert_eq!(r["checks"]["irreducible"]["status"], "pass");
}

#[test]
fn induce_variants() {
    // (group, subgroup, induced dim, commutant dim)
    for (group, subgroup, dim, commutant) in [
        ("pauli1", "z", 8, 6),
        ("pauli2", "x", 16, 10),
        ("clifford1", "stab0", 6, 2),
        ("pauli1", "whole", 1, 1),
    ] {
        let out = superfock(&[
            "induce",
            "--group",
            group,
            "--subgroup",
            subgroup,
            "--check-si",
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{group}/{subgroup}: {}",
            stderr(&out)
        );
        let r = report(&out);
        let s = &r["results"]["induction"];
        let product = s["cosets"].as_u64().unwrap() * s["dim_sigma"].as_u64().unwrap();
        assert_eq!(s["dim"].as_u64().unwrap(), product);
        assert_eq!(s["dim"], dim);
        assert_eq!(s["commutant_dimension"], commutant);
    }
}

#[test]
fn bell_orbit_report() {
    let out = superfock(&["orbit", "--group", "pauli2", "--state", "phi-plus"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["results"]["size"], 4);
    assert_eq!(r["checks"]["bell_basis"]["status"], "pass");
}

#[test]
fn odd_tower_passes_and_quadratic_coupling_fails() {
    let out = superfock(&["tower", "--g0", "0", "--depth", "3", "--signs", "1,-1,1"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["results"]["levels"].as_array().unwrap().len(), 4);

    let out = superfock(&["tower", "--g0", "0.3", "--depth", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["checks"]["level1.odd_supercharge"]["status"], "fail");
    assert!(stderr(&out).contains("level1.odd_supercharge"));
}

#[test]
fn nu_constraint_is_cited() {
    let out = superfock(&["verify", "--suite", "fock", "--nu", "-1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("ν > −1"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["verify", "--no-such-flag"],
        &["verify", "--cutoff", "3"],
        &["induce", "--group", "pauli1", "--subgroup", "bell"],
        &["tower", "--depth", "2", "--signs", "1"],
    ] {
        let out = superfock(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn malformed_config_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"cutoff\": 32,\n  \"nu\": \n}\n").unwrap();
    let out = superfock(&["verify", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4"), "{}", stderr(&out));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    std::fs::write(&path, r#"{"suite": "fock", "nu": 0.3, "cutoff": 16}"#).unwrap();
    let out = superfock(&["verify", "--config", path.to_str().unwrap(), "--nu", "0.9"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["params"]["nu"].as_f64(), Some(0.9));
    assert_eq!(r["params"]["cutoff"], 16);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = [
        "spectrum", "--model", "wzqm", "--cutoff", "8", "--g0", "0.2", "--h0", "0.1",
    ];
    let a = superfock(&args);
    let b = superfock(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn timings_are_opt_in() {
    let plain = report(&superfock(&["verify", "--suite", "qubit"]));
    assert!(plain.get("timings").is_none());
    let timed = report(&superfock(&["verify", "--suite", "qubit", "--timings"]));
    assert!(timed["timings"]["total_ms"].as_f64().is_some());
}
