//! End-to-end checks of the binary: output formats, exit codes, and the
//! documented JSON envelope.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    run_env(args, &[])
}

fn run_env(args: &[&str], envs: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vincular"));
    cmd.args(args);
    for (key, value) in envs {
        cmd.env(key, value);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn json(stdout: &str) -> serde_json::Value {
    serde_json::from_str(stdout).expect("valid json")
}

#[test]
fn count_formats() {
    let (code, stdout, _) = run(&["count", "2153-4", "8"]);
    assert_eq!((code, stdout.trim()), (0, "37875"));

    let (code, stdout, _) = run(&["count", "2153-4", "8", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "pattern,n,count\n2153-4,8,37875\n");

    let (code, stdout, _) = run(&["count", "2153-4", "8", "--format", "json"]);
    assert_eq!(code, 0);
    let doc = json(&stdout);
    assert_eq!(doc["command"], "count");
    assert_eq!(doc["inputs"]["pattern"], "2153-4");
    assert_eq!(doc["result"]["count"], 37875);
    assert_eq!(doc["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn count_oracle_agrees_with_pruned() {
    let (_, pruned, _) = run(&["count", "12-3", "6"]);
    let (_, naive, _) = run(&["count", "12-3", "6", "--oracle"]);
    assert_eq!(pruned, naive);
}

#[test]
fn count_usage_errors() {
    let (code, _, stderr) = run(&["count", "99x", "5"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("invalid pattern character"));

    let (code, _, stderr) = run(&["count", "132", "15"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("cap"));

    let (code, _, _) = run_env(&["count", "132", "6"], &[("VW_MAX_N", "5")]);
    assert_eq!(code, 2);
    let (code, stdout, _) = run_env(&["count", "132", "6"], &[("VW_MAX_N", "6")]);
    assert_eq!((code, stdout.trim()), (0, "296"));
}

#[test]
fn list_outputs_sorted_avoiders() {
    let (code, stdout, _) = run(&["list", "132", "4"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 16);
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(lines, sorted);
    assert!(lines.contains(&"4321"));
    assert!(!lines.contains(&"1324"));

    let (code, _, stderr) = run(&["list", "132", "4", "--format", "csv"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("no csv form"));
}

#[test]
fn classify_small_length_csv() {
    let (code, stdout, _) = run(&["classify", "4", "--n-max", "8", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines[0], "label,member,n5,n6,n7,n8");
    assert_eq!(lines.len(), 1 + 12);
}

#[test]
fn classify_reports_unseparated_range() {
    let (code, _, stderr) = run(&["classify", "5", "--n-max", "9"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("does not separate"), "stderr: {stderr}");

    let (code, _, stderr) = run(&["classify", "6", "--n-max", "10"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("lengths 4 and 5"));
}

#[test]
fn verify_table_passes() {
    let (code, stdout, _) = run(&["verify-table"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "26 classes verified");
}

#[test]
fn bijection_modes_and_rejection() {
    let (code, stdout, _) = run(&["bijection", "1342", "1432", "--n", "6"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("involution verified over 720 permutations"));

    let (code, stdout, _) = run(&["bijection", "1342", "1432", "--n", "6", "--dashed-tail", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("containment exchange verified over 720 permutations"));
    assert!(stdout.contains("1453-2 <-> 1543-2"));

    let (code, stdout, _) = run(&["bijection", "1453-2", "1543-2", "--n", "6"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("containment exchange"));

    let (code, _, stderr) = run(&["bijection", "1234", "1324", "--n", "5"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("pair rejected"));
}

#[test]
fn recursion_formats() {
    let (code, stdout, _) = run(&["recursion", "--n-max", "6"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("2153-4, n = 6 (total 704)"));
    assert!(stdout.contains("3154-2, n = 6 (total 704)"));

    let (code, stdout, _) = run(&[
        "recursion", "--n-max", "6", "--pattern", "2153-4", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("n,k,l,value\n"));
    assert!(stdout.contains("5,2,1,5\n"));
    assert_eq!(stdout.lines().count(), 1 + 25 + 36);

    let (code, _, stderr) = run(&["recursion", "--n-max", "6", "--format", "csv"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--pattern"));

    let (code, _, stderr) = run(&["recursion", "--n-max", "6", "--pattern", "1234"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("2153-4 and 3154-2 only"));
}

#[test]
fn verify_thm_h_passes() {
    let (code, stdout, _) = run(&["verify-thm-h", "--n-max", "10"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("relations verified for n = 5..=10"));
}

#[test]
fn fillings_check_passes_and_detects() {
    let (code, stdout, _) = run(&["fillings-check", "1342", "1432", "--max-cells", "6"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("no counterexamples"));

    let (code, stdout, _) = run(&["fillings-check", "12", "1-2", "--max-cells", "6"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("diagram 2,2,2"), "stdout: {stdout}");
}

#[test]
fn sandcastle_reports_partner_or_none() {
    let (code, stdout, _) = run(&["sandcastle", "1243-5"]);
    assert_eq!((code, stdout.trim()), (0, "1243-5 <-> 1253-4"));

    let (code, stdout, _) = run(&["sandcastle", "1234-5"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("no tail swap applies"));

    let (code, stdout, _) = run(&["sandcastle", "1234-5", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(json(&stdout)["result"]["partner"].is_null());
}

#[test]
fn ek_lift_exit_codes() {
    let (code, stdout, _) = run(&["ek-lift", "1342", "1432", "--n-max", "6"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("counts agree through n = 6"));

    let (code, _, _) = run(&["ek-lift", "1234", "1342", "--n-max", "6"]);
    assert_eq!(code, 1);
}

#[test]
fn json_envelope_is_uniform() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["count", "132", "5"],
        vec!["list", "132", "4"],
        vec!["sandcastle", "1243-5"],
        vec!["ek-lift", "1342", "1432", "--n-max", "5"],
        vec!["bijection", "1342", "1432", "--n", "5"],
        vec!["verify-thm-h", "--n-max", "8"],
        vec!["fillings-check", "1342", "1432", "--max-cells", "5"],
        vec!["recursion", "--n-max", "6"],
        vec!["classify", "4", "--n-max", "8"],
    ];
    for mut args in cases {
        let shown = args.join(" ");
        args.extend(["--format", "json"]);
        let (code, stdout, _) = run(&args);
        assert_eq!(code, 0, "{shown}");
        let doc = json(&stdout);
        for key in ["command", "inputs", "result", "violations"] {
            assert!(doc.get(key).is_some(), "{shown} lacks {key}");
        }
    }
}

#[test]
fn threads_flag_is_accepted() {
    let (code, stdout, _) = run(&["count", "2153-4", "7", "--threads", "2"]);
    assert_eq!((code, stdout.trim()), (0, "4838"));

    let (code, _, _) = run(&["count", "132", "5", "--threads", "0"]);
    assert_eq!(code, 2);
}
