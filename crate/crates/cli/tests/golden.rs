//! Golden tests for every subcommand: exact outputs, JSON schemas, and the
//! exit-code contract (0 success/falsified, 1 inconclusive, 2 input error).

use clap::Parser;
use hypersieve_cli::{execute, Cli, CmdOutput};
use serde_json::{json, Value};
use std::path::PathBuf;

fn run(args: &[&str]) -> CmdOutput {
    let mut argv = vec!["hypersieve"];
    argv.extend_from_slice(args);
    let cli = Cli::try_parse_from(argv).expect("test arguments must parse");
    execute(cli)
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("hypersieve-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("write temp file");
    path
}

fn peaked_file() -> PathBuf {
    write_temp(
        "peaked.json",
        r#"{"prefix":["1/8","1","2"],"tail":{"kind":"zeros"}}"#,
    )
}

#[test]
fn check_passes_on_8th_sequence() {
    let path = peaked_file();
    let out = run(&["check", path.to_str().unwrap(), "--degree", "50"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("polya-schur   pass"));
    assert!(out.stdout.contains("overall: all checks pass"));
}

#[test]
fn check_constant_sequence_passes() {
    let path = write_temp(
        "constant.json",
        r#"{"prefix":["5"],"tail":{"kind":"constant"}}"#,
    );
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stdout);
}

#[test]
fn check_flags_turan_violation() {
    let path = write_temp("turan.json", r#"{"prefix":["1","1","2"],"tail":{"kind":"zeros"}}"#);
    let out = run(&["check", path.to_str().unwrap(), "--output", "json"]);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["all_pass"], json!(false));
    let turan = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "turan")
        .unwrap();
    assert_eq!(turan["pass"], json!(false));
    assert!(turan["detail"].as_str().unwrap().contains("k=1"));
}

#[test]
fn check_rejects_malformed_input() {
    let path = write_temp("bad.json", r#"{"prefix":[],"tail":{"kind":"zeros"}}"#);
    let out = run(&["check", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.starts_with("error:"));

    let out = run(&["check", "/nonexistent/sequence.json"]);
    assert_eq!(out.code, 2);
}

#[test]
fn falsify_reports_the_quadratic_witness() {
    let path = peaked_file();
    let out = run(&[
        "falsify",
        path.to_str().unwrap(),
        "--basis",
        "hermite:-1",
        "--degree",
        "4",
        "--trials",
        "0",
        "--output",
        "json",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["outcome"]["kind"], "counterexample_found");
    assert_eq!(v["outcome"]["f"]["coeffs"], json!(["0", "0", "1"]));
    assert_eq!(v["outcome"]["image"]["coeffs"], json!(["15/8", "0", "2"]));
    assert_eq!(v["outcome"]["cert"]["verdict"], "HasNonRealRoot");
    assert_eq!(v["basis"], json!({"kind": "generalized_hermite", "alpha": "-1"}));
    assert_eq!(v["degree_budget"], json!(4));
}

#[test]
fn falsify_constant_sequence_is_inconclusive() {
    let path = write_temp(
        "const2.json",
        r#"{"prefix":["3"],"tail":{"kind":"constant"}}"#,
    );
    let out = run(&[
        "falsify",
        path.to_str().unwrap(),
        "--basis",
        "q2",
        "--degree",
        "4",
        "--trials",
        "25",
    ]);
    assert_eq!(out.code, 1, "{}", out.stdout);
    assert!(out.stdout.contains("no counterexample within degree budget 4"));
}

#[test]
fn falsify_finds_the_q3_witness_for_the_peaked_sequence() {
    let path = peaked_file();
    let out = run(&[
        "falsify",
        path.to_str().unwrap(),
        "--basis",
        "q3",
        "--degree",
        "2",
        "--trials",
        "0",
        "--output",
        "json",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["outcome"]["f"]["coeffs"], json!(["0", "0", "1"]));
    assert_eq!(v["outcome"]["image"]["coeffs"], json!(["15/8", "0", "2"]));
}

#[test]
fn falsify_writes_the_report_file() {
    let path = write_temp(
        "const3.json",
        r#"{"prefix":["3"],"tail":{"kind":"constant"}}"#,
    );
    let out_path = std::env::temp_dir().join(format!(
        "hypersieve-test-{}-report.json",
        std::process::id()
    ));
    let out = run(&[
        "falsify",
        path.to_str().unwrap(),
        "--basis",
        "q3",
        "--degree",
        "2",
        "--trials",
        "0",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 1); // constants are universal multiplier sequences
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(report["outcome"]["kind"], "none_found_within_budget");
    std::fs::remove_file(out_path).ok();
}

#[test]
fn falsify_rejects_unknown_basis() {
    let path = peaked_file();
    let out = run(&["falsify", path.to_str().unwrap(), "--basis", "fourier"]);
    assert_eq!(out.code, 2);
}

#[test]
fn expand_q1_witness() {
    let out = run(&["expand", "--basis", "q1", "4x^2+4x+1"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "[1, 0, 4]\n");

    let out = run(&["expand", "--basis", "q1", "4x^2+4x+1", "--output", "json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["coeffs"], json!(["1", "0", "4"]));
    assert_eq!(v["poly"]["coeffs"], json!(["1", "4", "4"]));
}

#[test]
fn expand_rejects_bad_literal() {
    let out = run(&["expand", "--basis", "q1", "4y+1"]);
    assert_eq!(out.code, 2);
}

#[test]
fn apply_peaked_to_binomial_cube() {
    let path = peaked_file();
    let out = run(&[
        "apply",
        "--basis",
        "std",
        "--seq",
        path.to_str().unwrap(),
        "(1+x)^3",
    ]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "6*x^2 + 3*x + 1/8\n");

    let out = run(&[
        "apply",
        "--basis",
        "std",
        "--seq",
        path.to_str().unwrap(),
        "(1+x)^3",
        "--output",
        "json",
    ]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["image"]["coeffs"], json!(["1/8", "3", "6"]));
}

#[test]
fn en_bound_brackets_one_for_the_hermite_quadratic() {
    let out = run(&[
        "en-bound",
        "--basis",
        "hermite:1",
        "--n",
        "2",
        "--tol",
        "1/256",
        "--output",
        "json",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["n"], json!(2));
    assert_eq!(v["lo"], json!("1"));
    assert_eq!(v["hi"], json!("257/256"));
    assert_eq!(v["width"], json!("1/256"));
}

#[test]
fn en_bound_rejects_double_roots() {
    let out = run(&["en-bound", "--basis", "std", "--n", "2"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("not real-rooted with simple zeros"));
}

#[test]
fn converge_traces_the_q2_quadratic() {
    let out = run(&["converge", "--basis", "q2", "x^2-1", "--output", "json"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["pass"], json!(true));
    assert_eq!(v["trace"]["alphas"], json!(["10", "100", "1000"]));
    assert_eq!(v["trace"]["rows"][0], json!(["-1", "-1/10", "1"]));
    assert_eq!(v["trace"]["rows"][2], json!(["-1", "-1/1000", "1"]));
    assert_eq!(v["trace"]["target_coeffs"], json!(["-1", "0", "1"]));
}

#[test]
fn converge_rejects_bad_schedules() {
    for schedule in ["10", "10,5", "1/2,10"] {
        let out = run(&["converge", "--basis", "q2", "--schedule", schedule, "x^2-1"]);
        assert_eq!(out.code, 2, "schedule {schedule}");
    }
}

#[test]
fn reproduce_paper_default_all_pass() {
    let out = run(&["reproduce-paper"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("overall: all facts reproduce"));
}

#[test]
fn reproduce_paper_json_lists_every_fact() {
    let out = run(&["reproduce-paper", "--output", "json"]);
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 7);
    for row in rows {
        assert_eq!(row["status"]["kind"], "pass", "{row}");
    }
}

#[test]
fn reproduce_paper_small_budget_skips_and_fails() {
    let out = run(&["reproduce-paper", "--degree", "3", "--trials", "0"]);
    assert_eq!(out.code, 1, "{}", out.stdout);
    assert!(out.stdout.contains("SKIPPED-BUDGET"));
    assert!(out.stdout.contains("NOT all facts reproduce"));
}

// spawn the real binary so the env override stays process-scoped
#[test]
fn seed_env_var_overrides_and_validates() {
    let path = write_temp(
        "const4.json",
        r#"{"prefix":["3"],"tail":{"kind":"constant"}}"#,
    );
    let bin = env!("CARGO_BIN_EXE_hypersieve");
    let base = |env_val: &str| {
        std::process::Command::new(bin)
            .args([
                "falsify",
                path.to_str().unwrap(),
                "--basis",
                "q3",
                "--degree",
                "2",
                "--trials",
                "5",
            ])
            .env(hypersieve_cli::SEED_ENV_VAR, env_val)
            .output()
            .expect("binary runs")
    };

    let bad = base("not-a-number");
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stdout).contains("HYPERSIEVE_SEED"));

    let good = base("12345");
    assert_eq!(good.status.code(), Some(1));
}
