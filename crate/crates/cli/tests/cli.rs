//! End-to-end checks of the `frobtau` binary: text output, JSON shape,
//! and exit codes.

use std::process::{Command, Output};

fn frobtau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobtau"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = frobtau(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn decompose_example() {
    let out = stdout(&["decompose", "-p", "2", "-d", "2", "-e", "1", "x^3+x*y^2"]);
    assert_eq!(out, "lambda [1, 0]: x + y\n");
}

#[test]
fn trace_example() {
    let out = stdout(&["trace", "-p", "3", "-d", "2", "-e", "1", "x^2*y^2 + x^5*y^2"]);
    assert_eq!(out, "trace = x + 1\n");
}

#[test]
fn fpt_example() {
    let out = stdout(&["fpt", "-p", "7", "-d", "2", "--emax", "1", "x^2+y^3"]);
    assert_eq!(out, "nu = 5\nfpt in (5/7, 6/7]\n");
}

#[test]
fn root_and_gb() {
    let out = stdout(&["root", "-p", "2", "-d", "2", "-e", "1", "x^3 + x*y^2"]);
    assert_eq!(out, "I_1 = (x + y)\n");
    let out = stdout(&["gb", "-p", "5", "-d", "2", "x^2 + y, x*y + x"]);
    // reduced deg-lex GB, ascending by leading monomial
    assert!(out.starts_with("("), "{out}");
    let rerun = stdout(&["gb", "-p", "5", "-d", "2", "x*y + x, x^2 + y"]);
    assert_eq!(out, rerun);
}

#[test]
fn check_example() {
    let out = stdout(&[
        "check", "-p", "3", "-d", "2", "--base", "1/2*div(x)", "--pert", "1/3*div(y)",
    ]);
    assert!(out.starts_with("equal = true"), "{out}");
}

#[test]
fn testideal_text_and_json() {
    let out = stdout(&["testideal", "-p", "5", "-d", "2", "--divisor", "1*div(x)"]);
    assert!(out.contains("tau = (x)"), "{out}");
    let js = stdout(&["testideal", "-p", "5", "-d", "2", "--divisor", "1*div(x)", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&js).unwrap();
    assert_eq!(v["command"], "testideal");
    assert_eq!(v["result"]["generators"], serde_json::json!(["x"]));
    assert_eq!(v["result"]["capped"], false);
    assert!(v["meta"]["elapsedMs"].is_u64());
}

#[test]
fn jumps_smallest() {
    let out = stdout(&[
        "jumps", "-p", "5", "-d", "2", "x", "--smallest", "--max-den", "6",
    ]);
    assert_eq!(out, "smallest jumping number = 1\n");
}

#[test]
fn scan_reports_tail() {
    let js = stdout(&[
        "scan", "-p", "2", "-d", "2", "--probe", "x", "--nmax", "2", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&js).unwrap();
    assert_eq!(v["result"]["baseTau"], serde_json::json!(["1"]));
    assert_eq!(v["result"]["firstJump"], serde_json::Value::Null);
    assert_eq!(v["result"]["tailIndices"][0]["tailFrom"], 1);
}

#[test]
fn exit_codes() {
    // domain error: 4 is not prime
    let out = frobtau(&["fpt", "-p", "4", "-d", "2", "x"]);
    assert_eq!(out.status.code(), Some(1));
    // domain error: unit polynomial has no nu
    let out = frobtau(&["fpt", "-p", "5", "-d", "2", "x + 1"]);
    assert_eq!(out.status.code(), Some(1));
    // usage error: unknown subcommand
    let out = frobtau(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // usage error: missing required argument
    let out = frobtau(&["check", "-p", "3"]);
    assert_eq!(out.status.code(), Some(2));
}
