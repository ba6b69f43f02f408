use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn catalog() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

fn file(name: &str) -> String {
    catalog().join(name).display().to_string()
}

fn nilalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilalg")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn count_over_small_primes() {
    for (p, want) in [("F3", "55"), ("F5", "59"), ("F7", "63")] {
        let o = nilalg(&["--field", p, "count"]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o).lines().next(), Some(want));
    }
    let o = nilalg(&["--field", "Q", "--json", "count"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["nonmalcev"], "infinite");
}

#[test]
fn count_refuses_characteristic_two() {
    let o = nilalg(&["--field", "F2", "count"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn identities_of_a_catalog_file() {
    let o = nilalg(&["identities", &file("B_6_2.json")]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("BinaryLie: holds"), "{out}");
    assert!(out.contains("Malcev: counterexample"), "{out}");
}

#[test]
fn named_and_file_references_agree() {
    let a = nilalg(&["--json", "invariants", "B_6_3"]);
    let b = nilalg(&["--json", "invariants", &file("B_6_3.json")]);
    assert_eq!(code(&a), 0);
    assert_eq!(json(&a), json(&b));
}

#[test]
fn extension_by_a_cocycle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ext.json");
    let o = nilalg(&["extend", "M_5_1", "--cocycle", "D45", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let a = nilalg(&["--json", "invariants", out.to_str().unwrap()]);
    let b = nilalg(&["--json", "invariants", "B_6_2"]);
    assert_eq!(json(&a), json(&b));
}

#[test]
fn extension_by_a_non_cocycle_is_refused() {
    let o = nilalg(&["extend", "L_5_6", "--cocycle", "D15 - D24"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("refused"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"field\": \"Q\", ").unwrap();
    let o = nilalg(&["identities", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    assert_eq!(code(&nilalg(&["identities", "X_9_9"])), 2);
    assert_eq!(code(&nilalg(&["no-such-command"])), 2);
}

#[test]
fn act_and_iso_with_matrix_files() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    std::fs::write(&m, "[[1,0,0],[0,1,0],[0,0,1]]").unwrap();
    let o = nilalg(&["act", "L_3_2", "--matrix", m.to_str().unwrap(), "--cocycle", "D13"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("phi.theta = "));
    assert_eq!(code(&nilalg(&["iso", "L_3_2", "L_3_2", "--map", m.to_str().unwrap()])), 0);
    std::fs::write(&m, "[[1,0,0],[0,1,0],[0,0,0]]").unwrap();
    assert_eq!(code(&nilalg(&["iso", "L_3_2", "L_3_2", "--map", m.to_str().unwrap()])), 1);
}

#[test]
fn brute_force_budget_overrun() {
    let o = nilalg(&["--field", "F3", "iso", "B_6_1:alpha=1", "B_6_1:alpha=2", "--brute", "--budget", "10"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn degeneration_witness_files() {
    let ok = nilalg(&["degeneration", &file("witnesses/B_6_3-to-B_6_2.json")]);
    assert_eq!(code(&ok), 0);
    assert_eq!(stdout(&ok).trim(), "verified");
    let eps = nilalg(&["degeneration", &file("witnesses/B_6_3-to-M_6.json")]);
    assert_eq!(code(&eps), 0);
    assert_eq!(stdout(&eps).lines().count(), 5);
    let bad = nilalg(&["degeneration", &file("witnesses/B_6_3-to-B_6_1.alpha_1.json")]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).starts_with("not verified"));
}

#[test]
fn verify_sections_exit_codes() {
    assert_eq!(code(&nilalg(&["verify-paper", "--section", "thm1"])), 0);
    assert_eq!(code(&nilalg(&["verify-paper", "--section", "degen"])), 1);
}

#[test]
fn json_output_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_nilalg"))
            .args(["--seed", "7", "--json", "verify-paper", "--section", "thm2"])
            .env("NILALG_THREADS", threads)
            .output()
            .unwrap()
    };
    let (a, b) = (run("1"), run("4"));
    assert_eq!(code(&a), code(&b));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn brute_force_fingerprint_shortcut() {
    let o = nilalg(&["--field", "F3", "iso", "B_6_3", "B_6_2", "--brute", "--budget", "10"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("not isomorphic"));
}
