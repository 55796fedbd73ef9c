//! Black-box tests of the `scf` binary: golden outputs, JSON schemas, exit
//! codes, and the orbit height cap.

use std::process::Command;

fn run_env(args: &[&str], envs: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_scf"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_env(args, &[])
}

fn json(args: &[&str]) -> serde_json::Value {
    let (code, stdout, stderr) = run(args);
    assert_eq!(code, 0, "command {args:?} failed: {stderr}");
    serde_json::from_str(&stdout).expect("valid JSON")
}

#[test]
fn transform_golden() {
    let (code, stdout, _) = run(&["transform", "2", "3", "3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "-51/73\n");
}

#[test]
fn transform_accepts_negative_arguments() {
    // Bare hyphenated values and the `--` separator must both work.
    let (code, stdout, _) = run(&["transform", "-1", "1", "3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "3\n");
    let (code, stdout, _) = run(&["transform", "--", "-1", "1", "3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "3\n");
    let (code, stdout, _) = run(&["transform", "2", "3", "--", "-51/73"]);
    assert_eq!(code, 0);
    assert!(stdout.trim().contains('/'));
}

#[test]
fn transform_json_round_trips() {
    let doc = json(&["transform", "2", "3", "3", "--json"]);
    assert_eq!(doc["k"], "3");
    assert_eq!(doc["witness"], "2:3");
    assert_eq!(doc["k2"], "-51/73");
}

#[test]
fn equiv_json_golden() {
    let doc = json(&["equiv", "3", "3/19", "--json"]);
    assert_eq!(doc["equivalent"], true);
    let wits: Vec<&str> = doc["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(wits, ["1:2", "-2:3", "-3:1"]);
    let rev: Vec<&str> = doc["reverse_witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(rev, ["-1:3", "2:1", "-3:2"]);
}

#[test]
fn equiv_negative_answer_is_success() {
    let (code, stdout, _) = run(&["equiv", "0", "1"]);
    assert_eq!(code, 0, "a negative answer is a result, not an error");
    assert_eq!(stdout, "not equivalent\n");
    let doc = json(&["equiv", "0", "1", "--json"]);
    assert_eq!(doc["equivalent"], false);
    assert!(doc["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn classify_json_golden() {
    let doc = json(&["classify", "3/2", "--json"]);
    assert_eq!(doc["class"], "degenerate");
    let roots: Vec<&str> = doc["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(roots, ["-1", "1/2", "2"]);

    let doc = json(&["classify", "3", "--json"]);
    assert_eq!(doc["class"], "generating");
    assert_eq!(doc["discriminant"], "81");
    assert_eq!(doc["sqrt_discriminant"], "9");
}

#[test]
fn minpoly_golden_and_cross_checked() {
    let (code, stdout, _) = run(&["minpoly", "5", "-2", "2", "3", "3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "x^3 + (51/73)*x^2 - (270/73)*x + 1\n");
    let doc = json(&["minpoly", "5", "-2", "2", "3", "3", "--json"]);
    let coeffs: Vec<&str> = doc["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["1", "-270/73", "51/73", "1"]);
}

#[test]
fn basis_golden() {
    let (code, stdout, _) = run(&["basis", "5", "-2", "2", "3", "3"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "-74/73 + 171/73*A + -38/73*A^2\n");
    let doc = json(&["basis", "5", "-2", "2", "3", "3", "--json"]);
    let coords: Vec<&str> = doc["coordinates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(coords, ["-74/73", "171/73", "-38/73"]);
}

#[test]
fn roots_decimal_and_exact() {
    let doc = json(&["roots", "3", "--json"]);
    assert_eq!(doc["exact"], false);
    assert_eq!(doc["digits"], 12);
    let roots: Vec<&str> = doc["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(roots[0], "2.879385241572");
    assert_eq!(roots.len(), 3);

    let doc = json(&["roots", "3/2", "--json"]);
    assert_eq!(doc["exact"], true);
    let roots: Vec<&str> = doc["roots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(roots, ["-1", "1/2", "2"]);
}

#[test]
fn degenerate_golden() {
    let (code, stdout, _) = run(&["degenerate", "1", "4"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "-17/12\n");
    let (code, _, stderr) = run(&["degenerate", "2", "2"]);
    assert_eq!(code, 3, "p = q is out of domain: {stderr}");
}

#[test]
fn orbit_golden_and_parallel_agreement() {
    let (code, sequential, _) = run(&["orbit", "3", "--height", "3", "--json"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = sequential.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[0], r#"{"k":"-3","witness":"1:1","verified":true}"#);
    for line in &lines {
        let doc: serde_json::Value = serde_json::from_str(line).expect("JSONL row");
        assert_eq!(doc["verified"], true);
    }
    let (code, parallel, _) = run(&["orbit", "3", "--height", "3", "--parallel", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(parallel, sequential, "parallel output must be identical");
}

#[test]
fn orbit_height_cap() {
    let (code, _, stderr) = run(&["orbit", "3", "--height", "100"]);
    assert_eq!(code, 2, "default cap is 64: {stderr}");
    let (code, _, _) = run_env(&["orbit", "3", "--height", "3"], &[("SCF_MAX_HEIGHT", "2")]);
    assert_eq!(code, 2);
    let (code, _, _) = run_env(
        &["orbit", "3", "--height", "70"],
        &[("SCF_MAX_HEIGHT", "80")],
    );
    assert_eq!(code, 0);
}

#[test]
fn domain_errors_exit_3() {
    for args in [
        ["transform", "0", "0", "3"].as_slice(),
        ["minpoly", "1", "0", "0", "1", "3/2"].as_slice(),
        ["basis", "1", "2", "2", "4", "3"].as_slice(), // det = 0
        ["classify", "abc"].as_slice(),
        ["roots", "1/0"].as_slice(),
        ["orbit", "3/2", "--height", "2"].as_slice(),
    ] {
        let (code, _, stderr) = run(args);
        assert_eq!(code, 3, "{args:?} should be a domain error: {stderr}");
    }
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        ["transform", "2", "3"].as_slice(),
        ["no-such-verb"].as_slice(),
        ["orbit", "3", "--height", "0"].as_slice(),
        ["roots", "3", "--digits", "nope"].as_slice(),
    ] {
        let (code, _, _) = run(args);
        assert_eq!(code, 2, "{args:?} should be a usage error");
    }
}

#[test]
fn selftest_passes() {
    let (code, stdout, _) = run(&["selftest"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("all 12 suites passed"), "got: {stdout}");
    let doc = json(&["selftest", "--json"]);
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["suites"].as_array().unwrap().len(), 12);
}
