use std::process::{Command, Output};

fn nc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nc")).args(args).output().expect("nc runs")
}

fn stdout(args: &[&str]) -> String {
    let out = nc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn normalize() {
    assert_eq!(stdout(&["normalize", "u2h", "dx*x"]), "x*dx + (h/2)*dtt");
    assert_eq!(stdout(&["normalize", "u2h", "x*y - y*x"]), "h*z");
    assert_eq!(stdout(&["normalize", "u2h", "1"]), "1");
    assert_eq!(stdout(&["normalize", "mrea", "(q - q^-1)*b*c"]), "((q^2 - 1)/q)*b*c");
}

#[test]
fn act() {
    assert_eq!(stdout(&["act", "u2h", "dx", "x^3"]), "3*x^2 - h^2/4");
    assert_eq!(stdout(&["act", "u2h", "dx^2+dy^2+dz^2", "x^2+y^2+z^2"]), "6");
    assert_eq!(stdout(&["act", "u2h", "dx", "1"]), "0");
    assert_eq!(stdout(&["act", "u2h", "dalembertian", "t^2"]), "2");
    assert_eq!(stdout(&["act", "weyl-n", "dc", "c"]), "1/q^3");
}

#[test]
fn radial() {
    assert_eq!(stdout(&["radial", "mu"]), "-24");
    assert_eq!(stdout(&["radial", "lambda"]), "0");
    assert_eq!(stdout(&["radial", "1"]), "0");
}

#[test]
fn limits() {
    let q1 = stdout(&["limit", "weyl-n", "--q1"]);
    assert!(q1.contains("da*a -> a*da + h*da + 1"), "{q1}");
    let h0 = stdout(&["limit", "mrea", "--hbar0", "--json"]);
    assert!(!h0.contains("\"h"), "{h0}");
}

#[test]
fn usage_and_parse_errors_exit_2() {
    assert_eq!(nc(&["normalize", "u2h", "foo"]).status.code(), Some(2));
    assert_eq!(nc(&["normalize", "no-such-table", "x"]).status.code(), Some(2));
    assert_eq!(nc(&["limit", "u2h"]).status.code(), Some(2));
    assert_eq!(nc(&["act", "u2h", "dx", "dx"]).status.code(), Some(2));
    assert_eq!(nc(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_json() {
    let out = nc(&["verify", "ch", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let checks = report.as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["status"] == "pass" && c["check"].is_string()));
}

#[test]
fn verify_corrupted_table_fails_with_rule() {
    let dir = tempfile::tempdir().unwrap();
    let src = braided_weyl::bundled::table_json("u2h").unwrap();
    let bad = src.replacen("\"h/2\"", "\"h/3\"", 1);
    assert_ne!(bad, src);
    std::fs::write(dir.path().join("u2h.json"), bad).unwrap();
    let out = nc(&["verify", "tables", "--tables", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let line = text.lines().find(|l| l.starts_with("FAIL") && l.contains("bundled tables")).expect(&text);
    assert!(line.contains("u2h: ") && line.contains("->"), "{line}");
}
