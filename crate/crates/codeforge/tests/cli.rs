//! End-to-end checks of the command-line contract: exit codes, single JSON
//! document on stdout in --json mode, config files, and cache determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_codeforge"))
}

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = bin();
    cmd.args(args).env_remove("CODEFORGE_CACHE_DIR");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is exactly one JSON document")
}

#[test]
fn analyze_json_contract() {
    let out = run(
        &["analyze", "--family", "norm-trace", "-q", "3", "-r", "2", "--json"],
        &[],
    );
    let doc = stdout_json(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["computed"]["n"], 21);
    assert_eq!(doc["computed"]["k"], 5);
    assert_eq!(doc["computed"]["d"], 12);
    assert_eq!(doc["computed"]["dual_d"]["Exact"], 3);
    assert_eq!(doc["computed"]["locality"]["Exact"], 2);
    assert_eq!(doc["computed"]["self_orthogonal"], true);
    assert_eq!(doc["matches"]["overall"], true);
}

#[test]
fn analyze_bent_example() {
    let out = run(
        &["analyze", "--family", "bent", "-p", "3", "-e", "4", "--fn", "tr-x2", "--json"],
        &[],
    );
    let doc = stdout_json(&out);
    assert_eq!(doc["computed"]["n"], 81);
    assert_eq!(doc["computed"]["k"], 6);
    assert_eq!(doc["computed"]["d"], 51);
    assert_eq!(doc["computed"]["epsilon"], -1);
}

#[test]
fn analyze_quadratic_example() {
    let out = run(
        &["analyze", "--family", "quadratic", "-q", "3", "-m", "5", "--json"],
        &[],
    );
    let doc = stdout_json(&out);
    assert_eq!(doc["computed"]["n"], 81);
    assert_eq!(doc["computed"]["k"], 6);
    assert_eq!(doc["computed"]["d"], 48);
    assert_eq!(doc["computed"]["dual_d"]["Exact"], 3);
}

#[test]
fn spec_errors_exit_2_and_caps_exit_3() {
    let out = run(&["analyze", "--family", "nonsense", "-q", "3", "-r", "2"], &[]);
    assert_eq!(out.status.code(), Some(2));
    // q = 3, r = 9 needs GF(3^18) > 2^24
    let out = run(&["analyze", "--family", "norm-trace", "-q", "3", "-r", "9"], &[]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("codeforge-cli-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("spec.cfg");
    std::fs::write(&cfg, "family = norm-trace\nq = 3\nr = 3\nvariant = canonical\n").unwrap();
    // override r = 3 down to r = 2 on the command line
    let out = run(
        &["analyze", "--config", cfg.to_str().unwrap(), "-r", "2", "--json"],
        &[],
    );
    let doc = stdout_json(&out);
    assert_eq!(doc["computed"]["n"], 21);
    assert_eq!(doc["spec"]["variant"], "canonical");
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn cache_roundtrip_is_byte_identical() {
    let dir: PathBuf = std::env::temp_dir().join(format!("codeforge-cli-cache-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let args = ["analyze", "--family", "quadratic", "-q", "3", "-m", "3", "--json"];
    let cold = run(&args, &[("CODEFORGE_CACHE_DIR", dir.to_str().unwrap())]);
    assert!(cold.status.success());
    assert!(dir.exists(), "cache dir populated via CODEFORGE_CACHE_DIR");
    let warm = run(&args, &[("CODEFORGE_CACHE_DIR", dir.to_str().unwrap())]);
    assert_eq!(cold.stdout, warm.stdout, "cache hit reproduces the document");
    assert!(String::from_utf8_lossy(&warm.stderr).contains("cache hit"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn export_weights_csv_rows() {
    let out = run(
        &["export", "--family", "norm-trace", "-q", "3", "-r", "2", "--what", "weights", "--format", "csv"],
        &[],
    );
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let rows: Vec<&str> = text.trim().lines().collect();
    assert_eq!(rows[0], "weight,count");
    assert_eq!(rows.len(), 6);
}

#[test]
fn export_matrix_shape() {
    let out = run(
        &["export", "--family", "bent", "-p", "3", "-e", "3", "--fn", "tr-wx2", "--what", "matrix"],
        &[],
    );
    let doc = stdout_json(&out);
    assert_eq!(doc["rows"], 5);
    assert_eq!(doc["cols"], 27);
    let entries = doc["entries"].as_array().unwrap();
    assert!(entries
        .iter()
        .flat_map(|r| r.as_array().unwrap())
        .all(|v| v.as_u64().unwrap() < 3));
}

#[test]
fn export_defining_set_zero_last() {
    let out = run(
        &["export", "--family", "norm-trace", "-q", "2", "-r", "3", "--what", "defining-set"],
        &[],
    );
    let doc = stdout_json(&out);
    assert_eq!(doc["size"], 28);
    let els = doc["elements"].as_array().unwrap();
    assert_eq!(els.len(), 28);
    assert_eq!(els.last().unwrap().as_u64(), Some(0));
}

#[test]
fn defining_set_export_rejects_bent_family() {
    let out = run(
        &["export", "--family", "bent", "-p", "3", "-e", "2", "--fn", "tr-x2", "--what", "defining-set"],
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nothing to export"));
}

#[test]
fn suite_filter_and_exit_code() {
    let out = run(&["suite", "--filter", "bounds"], &[]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 3);
}

#[test]
fn charsum_verify_json() {
    let out = run(&["charsum-verify", "--filter", "weil", "--json"], &[]);
    let doc = stdout_json(&out);
    assert_eq!(doc["pass"], true);
    assert!(doc["items"].as_array().unwrap().len() >= 2);
}

#[test]
fn bounds_subcommand() {
    let out = run(&["bounds", "-n", "28", "-k", "21", "-d", "4", "-q", "2", "-r", "11"], &[]);
    let doc = stdout_json(&out);
    assert_eq!(doc["lrc_cadambe_mazumdar"]["bound"], 22);
    // ⌊28 − log₂ 29⌋ = 23
    assert_eq!(doc["sphere_packing_kmax"], 23);
}
