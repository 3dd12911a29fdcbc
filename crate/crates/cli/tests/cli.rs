//! End-to-end tests of the `lkmt` binary: exit codes, report shapes,
//! and the JSON switch.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lkmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lkmt"))
        .args(args)
        .output()
        .expect("spawning lkmt")
}

fn lkmt_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lkmt"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawning lkmt")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn fixture_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lkmt-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = lkmt(&["fixtures", dir.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    dir
}

#[test]
fn check_reports_conclusion_and_status() {
    let dir = fixture_dir();
    let out = lkmt_in(&dir, &["check", "peirce.lkp"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("conclusion:  |- ((X -> Y) -> X) -> X |"), "{text}");
    assert!(text.contains("status: normal"), "{text}");

    let out = lkmt_in(&dir, &["check", "peirce_cut.lkp"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("status: non-normal"));
}

#[test]
fn check_rejects_broken_files_with_exit_1() {
    let dir = fixture_dir();
    let bad = dir.join("bad.lkp");
    std::fs::write(&bad, "(rule AxR (seq rfocus \"X\" \"Y\" \"\"))").unwrap();
    let out = lkmt_in(&dir, &["check", "bad.lkp"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("wrong active formula"), "{}", stderr(&out));

    let out = lkmt_in(&dir, &["check", "no-such-file.lkp"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    let out = lkmt(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = lkmt(&["audit"]);
    assert_eq!(out.status.code(), Some(2));
    // depth bound below 1 violates the invariant
    let dir = fixture_dir();
    let out = lkmt_in(&dir, &["audit", "dp.model", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn normalize_output_rechecks_in_a_fresh_process() {
    let dir = fixture_dir();
    for input in ["cut_contr.lkp", "peirce_cut.lkp", "cut_modus_ponens.lkp", "cut_dneg_elim.lkp"] {
        let out_name = format!("norm-{input}");
        let out = lkmt_in(&dir, &["normalize", input, &out_name]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(stdout(&out).contains("cuts: "), "{}", stdout(&out));
        let recheck = lkmt_in(&dir, &["check", &out_name]);
        assert!(recheck.status.success(), "{}", stderr(&recheck));
        assert!(stdout(&recheck).contains("status: normal"));
    }
}

#[test]
fn model_eval_matches_the_shipped_witness() {
    let dir = fixture_dir();
    let out = lkmt_in(&dir, &["model-eval", "dp.model", "X | ~X", "w0", "forces"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "true");
    let out = lkmt_in(&dir, &["model-eval", "dp.model", "X", "w0", "forces"]);
    assert_eq!(stdout(&out).trim(), "false");
    let out = lkmt_in(&dir, &["model-eval", "dp.model", "X", "w1", "srefutes"]);
    assert_eq!(stdout(&out).trim(), "true");
    let out = lkmt_in(&dir, &["model-eval", "dp.model", "T", "w0", "refutes"]);
    assert_eq!(stdout(&out).trim(), "false");
    // loader reports the closure it added
    assert!(stderr(&out).contains("leq closure added"), "{}", stderr(&out));
}

#[test]
fn dn_translate_prints_the_sugar_form() {
    let out = lkmt(&["dn-translate", "A | B"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "~(~A & ~B)");
    let out = lkmt(&["dn-translate", "exists x. P(x)"]);
    assert_eq!(stdout(&out).trim(), "~(forall x. ~P(x))");
}

#[test]
fn json_reports_are_machine_readable() {
    let dir = fixture_dir();
    let out = lkmt_in(&dir, &["--json", "check", "peirce.lkp"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["normal"], serde_json::Value::Bool(true));
    assert!(v["conclusion"].as_str().unwrap().contains("(X -> Y)"));

    let out = lkmt_in(&dir, &["--json", "model-eval", "dp.model", "X | ~X", "w0", "forces"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["result"], serde_json::Value::Bool(true));
    assert_eq!(v["closure_added"].as_array().unwrap().len(), 3);

    let out = lkmt_in(&dir, &["--json", "audit", "dp.model", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
    assert!(v["clauses"].as_array().unwrap().len() >= 20);

    let out = lkmt_in(&dir, &["--json", "dn-translate", "A | B"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["formula"], serde_json::Value::String("~(~A & ~B)".into()));
}

#[test]
fn audit_text_report_has_the_matrix() {
    let dir = fixture_dir();
    let out = lkmt_in(&dir, &["audit", "dp.model", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("monotone-srefutes"), "{text}");
    assert!(text.contains("dn-translation-matches-forcing"), "{text}");
    assert!(text.contains("overall: PASS"), "{text}");
}
