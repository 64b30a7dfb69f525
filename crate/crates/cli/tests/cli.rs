use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qgp_core::bits::BitMatrix;

fn qgp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn construct(family: &str, dir: &Path) -> std::path::PathBuf {
    let p = dir.join(format!("{family}.json"));
    let o = qgp(&[
        "construct",
        "--family",
        family,
        "-m",
        "6",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn table_rows() {
    let o = qgp(&["table"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for row in [
        "((64, 2^35, 8))",
        "((256, 2^217, 8))",
        "((1024, 2^975, 8))",
        "[[64, 25, 8]]",
        "[[256, 203, 8]]",
    ] {
        assert!(s.contains(row), "missing {row} in\n{s}");
    }
}

#[test]
fn odd_m_is_a_usage_error() {
    let o = qgp(&["construct", "--family", "goethals", "-m", "7"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qgp(&["construct", "--family", "bch", "-m", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn manifests_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct("gp-quantum", dir.path());
    let first = fs::read(&p).unwrap();
    let p2 = dir.path().join("again.json");
    qgp(&[
        "construct",
        "--family",
        "gp-quantum",
        "-m",
        "6",
        "--out",
        p2.to_str().unwrap(),
    ]);
    assert_eq!(first, fs::read(&p2).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["n"], 64);
    assert_eq!(v["k"], 25);
    assert_eq!(v["K"], 32);
    assert_eq!(v["translation_count"], 1024);
    assert_eq!(v["log2_dim"], 35);
}

#[test]
fn preparata_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let v: serde_json::Value =
        serde_json::from_slice(&fs::read(construct("preparata", dir.path())).unwrap()).unwrap();
    assert_eq!(v["family"], "preparata");
    assert_eq!(v["k_base"], 47);
    assert_eq!(v["reps"].as_array().unwrap().len(), 32);
}

#[test]
fn verify_passes_and_reports_json() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = qgp(&[
        "verify",
        "-m",
        "6",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["certified_distance"], 8);
    assert_eq!(v["checks"].as_array().unwrap().len(), 8);
}

#[test]
fn zero_budget_exits_3() {
    let o = qgp(&["verify", "--budget", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn edited_manifest_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct("gp-quantum", dir.path());
    let mut v: serde_json::Value = serde_json::from_slice(&fs::read(&p).unwrap()).unwrap();
    v["a"] = serde_json::json!(BitMatrix::identity(5).to_hex_rows());
    fs::write(&p, serde_json::to_vec(&v).unwrap()).unwrap();
    let out = dir.path().join("report.json");
    let o = qgp(&[
        "verify",
        "--manifest",
        p.to_str().unwrap(),
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let r: serde_json::Value = serde_json::from_slice(&fs::read(&out).unwrap()).unwrap();
    let failed: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(
        failed.contains(&"D, AD and D + AD have full rank"),
        "{failed:?}"
    );
    assert!(r["certified_distance"].is_null());
}

#[test]
fn kl_check_exit_codes() {
    let o = qgp(&["kl-check", "--instances", "50", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("50/50 instances agree"));
    let o = qgp(&["kl-check", "--instances", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    let o = qgp(&["kl-check", "--instances", "3", "--corrupt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn export_stabilizer_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let p = construct("gp-quantum", dir.path());
    let out = dir.path().join("export");
    let o = qgp(&[
        "export",
        "--manifest",
        p.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stab =
        BitMatrix::from_text(&fs::read_to_string(out.join("stabilizer.txt")).unwrap()).unwrap();
    assert_eq!((stab.nrows(), stab.ncols()), (39, 128));
    assert_eq!(stab.rank(), 39);
    let norm =
        BitMatrix::from_text(&fs::read_to_string(out.join("normalizer.txt")).unwrap()).unwrap();
    assert_eq!(norm.nrows(), 89);
    let gf4 = fs::read_to_string(out.join("stabilizer.gf4")).unwrap();
    assert_eq!(gf4.lines().count(), 39);
    assert!(gf4.lines().all(|l| l.split(' ').count() == 64));
}

#[test]
fn export_of_missing_manifest_is_an_io_error() {
    let o = qgp(&[
        "export",
        "--manifest",
        "/nonexistent/m.json",
        "--out",
        "/tmp/x",
    ]);
    assert_eq!(o.status.code(), Some(4));
}
