use std::process::{Command, Output};

use eulersum_core::closed::closed_form;
use eulersum_core::{SumSpec, ZetaExpr};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulersum"))
        .args(args)
        .env_remove("EULERSUM_DIGITS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn eval_text() {
    let out = run(&["eval", "--family", "HyperBinom", "--r", "2", "--p", "5", "--l", "2", "--pi"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("(1/540)*pi^6"), "{text}");
    assert!(text.contains("3.4878816965626528568"), "{text}");
}

#[test]
fn eval_json_round_trips() {
    for label in ["HyperShifted(2,4,5,2)", "H2Binom(2,1)", "HyperPairBinom(2,1,4,1)", "NegEuler(2,3)"] {
        let out = run(&["eval", label, "--format", "json"]);
        assert_eq!(code(&out), 0, "{label}");
        let doc = json(&out);
        assert_eq!(doc["spec"], label);
        let expr = ZetaExpr::from_json(&doc["expr"].to_string()).unwrap();
        let spec: SumSpec = label.parse().unwrap();
        assert_eq!(expr, closed_form(&spec).unwrap(), "{label}");
    }
}

#[test]
fn negative_parameters_pass_through() {
    let out = run(&["eval", "--family", "HyperShifted", "--r", "-2", "--m", "1", "--p", "2", "--l", "1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn invalid_input_exits_with_two() {
    let cases: &[&[&str]] = &[
        &["verify", "--family", "Hes", "--r", "1", "--p", "2"],
        &["eval", "Hes(1,2)"],
        &["verify", "H2(3)", "--digits", "19"],
        &["verify", "H2(3)", "--digits", "30"],
        &["verify", "H2(3)", "--max-terms", "10"],
        &["verify", "--family", "NoSuchFamily", "--p", "2"],
        &["verify", "--family", "H2"],
        &["verify", "H2(3)", "--format", "xml"],
        &["sweep", "--family", "Mu", "--p", "x..y"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn precision_env_var() {
    let out = Command::new(env!("CARGO_BIN_EXE_eulersum"))
        .args(["verify", "H2(3)"])
        .env("EULERSUM_DIGITS", "12")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_eulersum"))
        .args(["verify", "H2(3)", "--format", "json"])
        .env("EULERSUM_DIGITS", "45")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let value = json(&out)["closed_numeric"].as_str().unwrap().to_string();
    let mantissa = value.split('e').next().unwrap();
    assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 45, "{value}");
}

#[test]
fn verify_verdicts_and_exit_codes() {
    let out = run(&["verify", "HyperBinom(2,5,2)", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["verdict"], "pass");
    assert_eq!(doc["strict"], true);
    // precondition policy: no closed form, not a failure
    let out = run(&["verify", "HyperBinom(3,2,2)"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("skipped"));
}

#[test]
fn empty_sweep_succeeds() {
    let out = run(&["sweep", "--family", "Mu", "--p", "3..2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["summary"]["points"], 0);
    assert_eq!(doc["results"].as_array().unwrap().len(), 0);
}

#[test]
fn sweep_reports_are_deterministic() {
    let args = ["sweep", "--family", "HyperBinom", "--r", "1..2", "--p", "3..4", "--l", "0..1", "--format", "json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let doc = json(&a);
    assert_eq!(doc["summary"]["points"], 8);
    assert_eq!(doc["summary"]["pass"], 8);
    let ledger = doc["typo_ledger"].as_array().unwrap();
    let bbg = ledger.iter().find(|e| e["formula"] == "BBG Eq (2)").unwrap();
    assert_eq!(bbg["status"], "corrected");
    for key in ["config", "results", "summary"] {
        assert!(doc.get(key).is_some(), "{key}");
    }
}

#[test]
fn sweep_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mu.csv");
    let out = run(&["sweep", "--family", "Mu", "--p", "2", "--j", "1..3", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let body = std::fs::read_to_string(&path).unwrap();
    let mut lines = body.lines();
    assert_eq!(lines.next(), Some("family,params,closed_numeric,oracle,abs_err,tail_bound,verdict,strict"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].starts_with("Mu,p=2;j=1,"), "{}", rows[0]);
    assert!(rows.iter().all(|r| r.contains(",pass,")));
}

#[test]
fn selftest_report() {
    let out = run(&["selftest", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let doc = json(&out);
    assert_eq!(doc["passed"], true);
    assert!(doc["suites"].as_array().unwrap().len() >= 8);
    assert!(!doc["typo_ledger"].as_array().unwrap().is_empty());
}
