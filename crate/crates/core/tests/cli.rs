use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

const SECTION6_SPEC: &str = r#"{"type":"supfamily","terms":[{"w":"3/4","m":2},{"w":"9/16","m":8}]}"#;
const EVEN_PAIR: &str = r#"{"type":"supfamily","terms":[{"w":"3/4","m":2,"filter":"even"}]}"#;
const SINGLETONS: &str = r#"[{"type":"cube","k":1},{"type":"cube","k":1}]"#;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_barrier-models"));
    c.env_remove("BARRIER_MODELS_OUT_DIR");
    c
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, stdout, stderr) = run(args);
    let text = if stdout.is_empty() { stderr } else { stdout };
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

fn temp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("barrier-models-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn rank_of_a_cube() {
    let (code, v) = json(&["barrier", "rank", "--descriptor", r#"{"type":"cube","k":3}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], "w^3");
    assert_eq!(v["confirmed"], true);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn invalid_descriptor_goes_to_stderr_with_exit_two() {
    let (code, stdout, stderr) = run(&["barrier", "rank", "--descriptor", r#"{"type":"cube","k":0}"#]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&stderr).unwrap();
    assert_eq!(v["error"], "invalid-json");
    let (code, v) = json(&["norm", "eval", "--spec", r#"{"type":"supfamily","terms":[{"w":"3/4","m":2,"x":1}]}"#, "--vector", "[1]"]);
    assert_eq!(code, 2);
    assert!(v["message"].as_str().unwrap().contains("unknown field `x`"), "{v}");
}

#[test]
fn unknown_flags_are_rejected() {
    let (code, _, stderr) = run(&["norm", "eval", "--spec", SECTION6_SPEC, "--vector", "[1]", "--colour", "red"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--colour"));
}

#[test]
fn help_exits_zero() {
    let (code, stdout, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("verify-section6"));
}

#[test]
fn norm_values_are_exact_strings() {
    let (code, v) = json(&["norm", "eval", "--spec", SECTION6_SPEC, "--vector", r#"{"4":"1","9":"1"}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "3/2");
    assert_eq!(v["exact"], true);
    let (_, v) = json(&["norm", "eval", "--spec", SECTION6_SPEC, "--vector", "[1,1,1,1,1,1,1,1]"]);
    assert_eq!(v["value"], "9/2");
}

#[test]
fn stable_subsequence_and_gap() {
    let (code, v) = json(&[
        "oscillation", "stable", "--spec", EVEN_PAIR, "--family", SINGLETONS, "--epsilon", "1/4", "--universe", "1..10",
        "--target", "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "found");
    assert_eq!(v["subset"], serde_json::json!([1, 2, 3, 5, 7]));
    let (code, v) = json(&["oscillation", "gap", "--spec", EVEN_PAIR, "--family", SINGLETONS, "--universe", "1..8"]);
    assert_eq!(code, 0);
    assert_eq!(v["gap"], "1/2");
}

#[test]
fn failed_searches_exit_one_with_best_partial() {
    let (code, v) = json(&[
        "ramsey", "mono", "--descriptor", r#"{"type":"cube","k":2}"#, "--coloring", r#"{"rule":"sum-parity"}"#,
        "--universe", "1..4", "--target", "3",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "not-found");
    assert_eq!(v["best"]["subset"], serde_json::json!([1, 2]));
    let (code, v) = json(&[
        "oscillation", "asymptotic", "--spec", EVEN_PAIR, "--family", SINGLETONS, "--universe", "1..16", "--stages", "3",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["all_passed"], false);
}

#[test]
fn model_named_values() {
    let seq = r#"{"prefix":[{"type":"cube","k":2},{"type":"cube","k":2}],"tail":{"type":"cube","k":8}}"#;
    let (code, v) = json(&["model", "eval", "--spec", SECTION6_SPEC, "--sequence", seq, "--coeffs", "[1,1]"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "3/2");
    assert_eq!(v["stabilized"], true);
    let (_, v) = json(&["model", "eval", "--spec", SECTION6_SPEC, "--sequence", seq, "--coeffs", r#"[0,0,"1","1"]"#]);
    assert_eq!(v["value"], "1/1");
    let (code, v) = json(&[
        "model", "spreading", "--spec", SECTION6_SPEC, "--sequence", seq, "--k", "2", "--placements", "[[3,4]]",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], false);
    assert_eq!(v["witness"]["at_placement"], "1/1");
}

#[test]
fn file_inputs_and_outputs() {
    let dir = temp_dir("io");
    let spec = dir.join("spec.json");
    std::fs::write(&spec, SECTION6_SPEC).unwrap();
    let out = dir.join("report.json");
    let at = format!("@{}", spec.display());
    let (code, stdout, _) = run(&["norm", "block-vector", "--spec", &at, "--set", "[1,2]", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), stdout);
    let (code, v) = json(&["norm", "eval", "--spec", "@/nonexistent/spec.json", "--vector", "[1]"]);
    assert_eq!(code, 2);
    assert!(v["message"].as_str().unwrap().contains("cannot read"));
}

#[test]
fn output_directory_from_environment() {
    let dir = temp_dir("env");
    let out = bin()
        .env("BARRIER_MODELS_OUT_DIR", &dir)
        .args(["barrier", "enumerate", "--descriptor", r#"{"type":"schreier"}"#, "--n", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(dir.join("barrier-enumerate.json")).unwrap();
    assert_eq!(written.as_bytes(), out.stdout.as_slice());
}

#[test]
fn csv_rows_carry_exact_rationals() {
    let (code, stdout, _) = run(&["norm", "dk", "--spec", SECTION6_SPEC, "--other", r#"{"type":"sup"}"#, "--k", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut rows = csv::Reader::from_reader(stdout.as_bytes());
    let rows: Vec<csv::StringRecord> = rows.records().map(Result::unwrap).collect();
    let distance = rows.iter().find(|r| &r[0] == "distance").unwrap();
    assert_eq!(&distance[1], "1/2");
}

#[test]
fn reruns_are_byte_identical_and_reparse() {
    let commands: Vec<Vec<&str>> = vec![
        vec!["barrier", "check-axioms", "--descriptor", r#"{"type":"schreier"}"#, "--n", "9", "--seed", "3"],
        vec!["blocks", "enumerate", "--family", r#"[{"type":"schreier"},{"type":"cube","k":1}]"#, "--n", "7"],
        vec!["ramsey", "mono", "--descriptor", r#"{"type":"cube","k":2}"#, "--coloring", r#"{"rule":"sum-parity"}"#, "--universe", "1..8", "--target", "4"],
        vec!["ramsey", "diagonal", "--family", SINGLETONS, "--spec", EVEN_PAIR, "--coeffs", "[1,1]", "--universe", "1..12"],
        vec!["norm", "degenerate-demo", "--n-max", "6", "--grid-q", "2"],
        vec!["model", "equivalence", "--spec", SECTION6_SPEC, "--sequence", r#"{"tail":{"type":"cube","k":8}}"#,
             "--other", r#"{"prefix":[{"type":"cube","k":2},{"type":"cube","k":2}],"tail":{"type":"cube","k":8}}"#,
             "--k-max", "3", "--grid-q", "2"],
    ];
    for args in commands {
        let (c1, first, _) = run(&args);
        let (c2, second, _) = run(&args);
        assert_eq!(c1, c2);
        assert_eq!(first, second, "{args:?}");
        let v: Value = serde_json::from_str(&first).unwrap();
        assert_eq!(v["schema_version"], 1, "{args:?}");
        assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", first);
    }
}
