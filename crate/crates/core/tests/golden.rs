//! Set `UPDATE_GOLDEN=1` to rewrite the stored reports.

use std::path::Path;

use barrier_models::section6::{verify_section6, Section6Config};

fn check(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "{name} drifted; rerun with UPDATE_GOLDEN=1 after checking the diff");
}

#[test]
fn default_section6_report() {
    let report = verify_section6(&Section6Config::default()).unwrap();
    assert!(report.all_passed);
    check("section6.json", &(serde_json::to_string_pretty(&report).unwrap() + "\n"));
}

#[test]
fn cli_section6_report_is_the_library_report() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_barrier-models"))
        .arg("verify-section6")
        .env_remove("BARRIER_MODELS_OUT_DIR")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let mut cli: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    cli.as_object_mut().unwrap().remove("schema_version");
    let lib = serde_json::to_value(verify_section6(&Section6Config::default()).unwrap()).unwrap();
    assert_eq!(cli, lib);
}
