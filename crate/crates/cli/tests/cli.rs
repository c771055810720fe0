use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_duflo-cw"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (Output, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--json", &p]);
    let out = run(&full);
    let json = fs::read_to_string(&path).unwrap_or_default();
    (out, json)
}

fn assert_golden(args: &[&str], golden: &str) {
    let (out, json) = run_json(args);
    assert!(out.status.success(), "{out:?}");
    let expect = fs::read_to_string(data("golden").join(golden)).unwrap();
    assert_eq!(json, expect, "{golden} drifted");
}

#[test]
fn duflo_report_matches_golden() {
    assert_golden(&["verify-duflo"], "verify-duflo.json");
}

#[test]
fn index_report_and_table_match_golden() {
    let cfg = data("data/small.cfg");
    assert_golden(&["index", "--config", cfg.to_str().unwrap()], "index.json");
    let out = run(&["index", "--config", cfg.to_str().unwrap()]);
    let expect = fs::read_to_string(data("golden/index.txt")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expect);
}

#[test]
fn theorem_report_matches_golden() {
    let cfg = data("data/small.cfg");
    assert_golden(&["verify-theorem", "--config", cfg.to_str().unwrap()], "verify-theorem.json");
}

#[test]
fn index_at_cutoff_20_fits_exactly() {
    let (out, json) = run_json(&["index", "--cutoff", "20", "--twist", "0"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("residual 0"), "{stdout}");
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["checks"][0]["values"]["fit residual"], "0");
}

#[test]
fn heat_json_is_deterministic_and_records_grid() {
    let cfg = data("data/small.cfg");
    let args = ["heat", "--config", cfg.to_str().unwrap(), "--twist", "1"];
    let (a, ja) = run_json(&args);
    let (_, jb) = run_json(&args);
    assert!(a.status.success(), "{a:?}");
    assert_eq!(ja, jb);
    let v: serde_json::Value = serde_json::from_str(&ja).unwrap();
    let c = &v["checks"][0];
    assert_eq!(c["id"], "heat:w=1:m=-2");
    assert_eq!(c["values"]["t grid"], "[0.4, 0.2, 0.1, 0.05]");
    assert_eq!(c["values"]["spectral cutoff"], "12");
}

#[test]
fn weil_suite_passes_on_shipped_fixtures() {
    let out = run(&["verify-weil", "--order", "6"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn user_algebra_is_validated() {
    let good = data("data/su2.alg");
    let out = run(&["verify-algebra", "--algebra", good.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("PASS algebra:su2"));

    let bad = data("data/broken.alg");
    let out = run(&["verify-algebra", "--algebra", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL algebra:broken"));
}

#[test]
fn bad_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    fs::write(&path, "order = 4\nwibble = 3\n").unwrap();
    let out = run(&["index", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 2: unknown key `wibble`"));

    let out = run(&["heat", "--t-grid", "0.1,-0.2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"]);
    assert!(!out.status.success());
}

#[test]
fn all_passes_on_a_clean_checkout() {
    let (out, json) = run_json(&["all"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] != "fail"));
    // the |m - w| = 4 heat cases cannot be resolved by the t grid and are flagged
    let flagged: Vec<&str> =
        checks.iter().filter(|c| c["status"] == "flagged").map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(flagged, ["heat:w=0:m=-4", "heat:w=0:m=4"]);
}
