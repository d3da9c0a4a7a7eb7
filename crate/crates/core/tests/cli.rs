use std::process::Command;

use corep::cli::{run_args, INPUT_ERROR};
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(file: Option<&str>, args: &[&str]) -> (i32, String) {
    let mut all: Vec<String> = Vec::new();
    if let Some(f) = file {
        all.push("--file".into());
        all.push(data(f));
    }
    all.extend(args.iter().map(|s| s.to_string()));
    run_args(&all)
}

fn report(out: &str) -> Value {
    serde_json::from_str(out).unwrap_or_else(|e| panic!("not JSON ({e}): {out}"))
}

#[test]
fn verify_accepts_the_data_files() {
    for f in ["morita.toml", "dual_numbers.toml"] {
        let (code, out) = run(Some(f), &["verify"]);
        assert_eq!(code, 0, "{f}: {out}");
        assert_eq!(report(&out)["command"], "verify");
    }
}

#[test]
fn morita_dual_basis_is_found() {
    let (code, out) = run(Some("morita.toml"), &["dualbasis1", "--U", "U", "--V", "V", "--seed", "1"]);
    assert_eq!(code, 0, "{out}");
    let r = report(&out);
    assert_eq!(r["status"], "FOUND");
    assert_eq!(r["dual_basis"]["search"]["seed"], 1);
}

#[test]
fn supplied_non_separable_witness_is_a_definitive_no() {
    let (code, out) = run(Some("dual_numbers.toml"), &["separable", "--witness", "first"]);
    assert_eq!(code, 1, "{out}");
    assert_eq!(report(&out)["status"], "NO");
}

#[test]
fn equivalence_of_the_dual_numbers_pair_is_rejected() {
    let (code, out) = run(Some("dual_numbers.toml"), &["equivalence", "--U", "U", "--V", "V", "--seed", "2"]);
    assert_eq!(code, 1, "{out}");
}

#[test]
fn catalog_references_work_without_a_file() {
    let (code, out) = run(None, &["natspace", "--V", "catalog:matrix/2"]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = run(None, &["forgetful", "--coring", "catalog:grouplike/2", "--seed", "0"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn budget_flag_is_recorded_in_the_trace() {
    let (_, out) = run(Some("morita.toml"), &["frobenius", "--U", "U", "--V", "V", "--seed", "4", "--budget", "9"]);
    assert!(out.contains("\"budget\": 9"), "{out}");
}

#[test]
fn input_errors_exit_with_three() {
    let cases: &[(Option<&str>, &[&str])] = &[
        (None, &["no-such-command"]),
        (Some("morita.toml"), &["dualbasis1", "--U", "U", "--V", "V"]),
        (Some("morita.toml"), &["dualbasis1", "--U", "missing", "--V", "V", "--seed", "0"]),
        (None, &["natspace", "--V", "catalog:no-such-entry/3"]),
        (Some("absent.toml"), &["verify"]),
    ];
    for (file, args) in cases {
        let (code, out) = run(*file, args);
        assert_eq!(code, INPUT_ERROR, "{args:?}: {out}");
    }
}

#[test]
fn error_reports_are_json() {
    let (_, out) = run(Some("morita.toml"), &["dualbasis1", "--U", "missing", "--V", "V", "--seed", "0"]);
    let r = report(&out);
    assert_eq!(r["status"], "INPUT_ERROR");
    assert!(r["error"].as_str().unwrap().contains("missing"));
}

#[test]
fn help_is_not_an_error() {
    let (code, out) = run(None, &["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("dualbasis1"));
}

#[test]
fn binary_exit_codes_match_the_library() {
    let bin = env!("CARGO_BIN_EXE_corep");
    let cases: &[(&[&str], i32)] =
        &[(&["verify"], 0), (&["separable", "--witness", "first"], 1), (&["bogus"], INPUT_ERROR)];
    for (args, expected) in cases {
        let out = Command::new(bin).arg("--file").arg(data("dual_numbers.toml")).args(*args).output().unwrap();
        assert_eq!(out.status.code(), Some(*expected), "{args:?}");
        let stream = if *expected == INPUT_ERROR { &out.stderr } else { &out.stdout };
        assert!(!stream.is_empty());
    }
}

#[test]
fn budget_falls_back_to_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_corep"))
        .env(corep::cli::BUDGET_ENV, "5")
        .args(["--file", &data("morita.toml"), "dualbasis1", "--U", "U", "--V", "V", "--seed", "0"])
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).contains("\"budget\": 5"));
}
