//! End-to-end tests of the stonedual binary: file round trips, exit
//! codes, JSON output shapes, and a reduced suite run.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stonedual"))
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stonedual-cli-{tag}"));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn check_reports_classification() {
    let out = bin()
        .args(["check", "--monoid", "fixture:S5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("restriction: true, ample: true, inverse: false, boolean: true"));
}

#[test]
fn check_json_output_parses() {
    let out = bin()
        .args(["check", "--monoid", "fixture:I2", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["elements"], 7);
    assert_eq!(value["classification"]["inverse"], true);
}

#[test]
fn kb_exports_a_loadable_monoid() {
    let dir = tempdir("kb");
    let path = dir.join("kb_pair2.json");
    let out = bin()
        .args(["kb", "--category", "fixture:PAIR2", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    // the exported file round-trips through `check`
    let out = bin().args(["check", "--monoid"]).arg(&path).output().unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("7 elements"));
}

#[test]
fn kb_refuses_large_categories_without_cap_override() {
    let out = bin()
        .args(["kb", "--category", "fixture:PAIR2", "--cap-arrows", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("cap-arrows"));
}

#[test]
fn fractions_exports_the_groupoid() {
    let dir = tempdir("fractions");
    let path = dir.join("g.json");
    let out = bin()
        .args(["fractions", "--category", "fixture:ARROW", "--seed", "1", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = bin().args(["category", "--category"]).arg(&path).output().unwrap();
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("4 arrows"));
    assert!(text.contains("groupoid: true"));
}

#[test]
fn fractions_rejects_non_reversible_input_with_usage_exit() {
    let out = bin()
        .args(["fractions", "--category", "fixture:FORK"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn embed_fails_with_condition_c_counterexample() {
    let out = bin()
        .args(["embed", "--monoid", "fixture:KB_FORK"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("condition (C)"));
}

#[test]
fn corrupted_files_exit_with_usage_error() {
    let dir = tempdir("corrupt");
    let path = dir.join("broken.json");
    std::fs::write(&path, "{ this is not json").unwrap();
    let out = bin().args(["check", "--monoid"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_writes_the_three_files() {
    let dir = tempdir("generate");
    let out = bin()
        .args([
            "generate",
            "--seed",
            "7",
            "--components",
            "1",
            "--objects-min",
            "2",
            "--objects-max",
            "2",
            "--group",
            "trivial",
            "--density",
            "1.0",
            "--out-dir",
        ])
        .arg(&dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    for name in ["g.json", "c.json", "s.json"] {
        assert!(dir.join(name).exists(), "missing {name}");
    }
    let out = bin()
        .args(["check", "--monoid"])
        .arg(dir.join("s.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("inverse: true"));
}

#[test]
fn duality_roundtrip_over_files() {
    let dir = tempdir("duality");
    let hom = dir.join("hom.json");
    std::fs::write(
        &hom,
        r#"{"source": "fixture:S5", "target": "fixture:I2",
            "map": {"{}": "0", "{id_e}": "e1", "{id_f}": "e2", "{a}": "s12", "{id_e,id_f}": "1"}}"#,
    )
    .unwrap();
    let out = bin().args(["duality", "--hom"]).arg(&hom).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("roundtrip: ok"));
    assert!(text.contains("factorization: ok"));
}

#[test]
fn reduced_suite_passes_and_respects_expectations() {
    let dir = tempdir("suite");
    let config = dir.join("config.json");
    std::fs::write(
        &config,
        r#"{"law_instances": 6, "condc_instances": 5, "condc_negatives": 1,
            "presentation_instances": 2,
            "embed": [
              {"source": "fixture:S5", "expect": "pass"},
              {"source": "fixture:KB_FORK", "expect": "condition-c-fails"}
            ]}"#,
    )
    .unwrap();
    let out = bin()
        .args(["suite", "--format", "json", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "suite failed: {}",
        stdout(&out)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["suite"], "acceptance");
    assert_eq!(report["version"], 1);
    let checks = report["checks"].as_array().unwrap();
    let fork = checks
        .iter()
        .find(|c| c["name"] == "embed:fixture:KB_FORK")
        .unwrap();
    assert_eq!(fork["status"], "expected-negative");
    assert!(checks.iter().all(|c| c["status"] != "fail"));
}

#[test]
fn suite_with_missing_config_exits_with_usage_error() {
    let out = bin()
        .args(["suite", "--config", "/nonexistent/config.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn suite_with_a_wrong_expectation_exits_nonzero() {
    let dir = tempdir("suite-fail");
    let config = dir.join("config.json");
    // claiming the flagship fixture fails condition (C) must fail the run
    std::fs::write(
        &config,
        r#"{"law_instances": 2, "condc_instances": 2, "condc_negatives": 0,
            "presentation_instances": 1,
            "embed": [{"source": "fixture:S5", "expect": "condition-c-fails"}]}"#,
    )
    .unwrap();
    let out = bin()
        .args(["suite", "--format", "json", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let case = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "embed:fixture:S5")
        .unwrap();
    assert_eq!(case["status"], "fail");
}
