use std::path::Path;
use std::process::{Command, Output};

fn suq2(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_suq2"))
        .args(args)
        .arg("--output")
        .arg(out)
        .env_remove("SUQ2_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn orthogonality_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = suq2(dir.path(), &["orthogonality", "--q", "7/10", "--lmax", "3/2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("PASS"));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("orthogonality.json")).unwrap()).unwrap();
    assert_eq!(report["failures"].as_array().unwrap().len(), 0);
    assert!(report["checks"].as_u64().unwrap() > 0);
}

#[test]
fn laplacian_table_lists_casimir_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = suq2(dir.path(), &["laplacian", "--eigenvalues", "--q", "1/2", "--lmax", "3", "--format", "csv"]);
    assert!(o.status.success());
    let mut rd = csv::Reader::from_path(dir.path().join("laplacian.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 7);
    // [l][l+1] at q = 1/2: [1][2] = 5/2 and [2][3] = 105/8
    let value = |l: &str| rows.iter().find(|r| &r[0] == l).unwrap()[1].parse::<f64>().unwrap();
    assert!((value("1") - 2.5).abs() < 1e-9);
    assert!((value("2") - 13.125).abs() < 1e-9);
    for r in &rows {
        assert_eq!((&r[3], &r[4], &r[5]), ("PASS", "PASS", "PASS"), "{r:?}");
    }
    assert_eq!(stdout(&o), std::fs::read_to_string(dir.path().join("laplacian.csv")).unwrap());
}

#[test]
fn hausdorff_young_ratio_at_classical_point() {
    let dir = tempfile::tempdir().unwrap();
    let o = suq2(dir.path(), &["inequality", "--kind", "hy", "--q", "1", "--p", "1.5", "--trials", "20", "--seed", "42"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut rd = csv::Reader::from_path(dir.path().join("inequality_hy.csv")).unwrap();
    let ratios: Vec<f64> = rd.deserialize::<std::collections::HashMap<String, String>>().map(|r| r.unwrap()["ratio"].parse().unwrap()).collect();
    assert_eq!(ratios.len(), 20);
    assert!(ratios.iter().all(|r| *r <= 1.0 + 1e-5), "{ratios:?}");
}

#[test]
fn identical_seed_gives_identical_artifacts() {
    let runs: Vec<(tempfile::TempDir, Vec<String>)> = (0..2)
        .map(|_| {
            let dir = tempfile::tempdir().unwrap();
            let mut outs = Vec::new();
            for args in [
                &["hopf", "--trials", "20", "--seed", "7"][..],
                &["inequality", "--kind", "paley", "--q", "1", "--trials", "3", "--grid", "16", "--seed", "7"],
                &["commutator", "--scan", "--lmax", "1"],
                &["multiplier", "--bound", "--lmax", "2", "--trials", "3", "--seed", "7"],
            ] {
                let o = suq2(dir.path(), args);
                assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
                outs.push(stdout(&o));
            }
            (dir, outs)
        })
        .collect();
    assert_eq!(runs[0].1, runs[1].1);
    let mut names: Vec<_> = std::fs::read_dir(runs[0].0.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.len() >= 4);
    for n in names {
        let a = std::fs::read(runs[0].0.path().join(&n)).unwrap();
        let b = std::fs::read(runs[1].0.path().join(&n)).unwrap();
        assert_eq!(a, b, "{n:?}");
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"q": "7/10", "lmax": 1, "format": "csv"}"#).unwrap();
    let cfg = cfg.to_str().unwrap();
    let o = suq2(dir.path(), &["orthogonality", "--config", cfg]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("q=7/10 lmax=1"), "{}", stdout(&o));
    let o = suq2(dir.path(), &["orthogonality", "--config", cfg, "--q", "0.5"]);
    assert!(stdout(&o).contains("q=1/2 lmax=1"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exact rational 1/2"));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_suq2"))
        .args(["dirac-geometric", "--eigenvalues", "--q", "4/5"])
        .env("SUQ2_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("dirac_geometric.csv").exists());
}

#[test]
fn errors_exit_with_status_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(suq2(dir.path(), &["orthogonality", "--q", "-1"]).status.code(), Some(2));
    assert_eq!(suq2(dir.path(), &["inequality", "--kind", "hy", "--q", "1/2", "--p", "1.5"]).status.code(), Some(2));
    assert_eq!(suq2(dir.path(), &["calculus", "--kind", "5d", "--check", "growth"]).status.code(), Some(2));
}

#[test]
fn reports_do_not_fail() {
    let dir = tempfile::tempdir().unwrap();
    let o = suq2(dir.path(), &["calculus", "--kind", "4d", "--check", "growth", "--lmax", "4"]);
    assert!(o.status.success());
    assert!(dir.path().join("growth_sigma_22_11.csv").exists());
    let o = suq2(dir.path(), &["spectrum", "--classify", "--dirac", "classical", "--q", "1/2", "--format", "json"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"spectral_dimension\": \"none\""));
}
