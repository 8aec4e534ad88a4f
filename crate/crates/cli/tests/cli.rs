use std::process::Command;

use serde_json::Value;

fn solset(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_solset")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

const EXAM: &str = "sqrt(x)+sqrt(2*x+1) = 3";

#[test]
fn exam_trace_ends_with_summary() {
    let (code, out, err) = solset(&["solve", EXAM, "--domain", "[0,inf)", "--trace"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("SquareBoth [superset]"));
    assert!(out.contains("side condition 3*x - 8 <= 0"));
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("1 solution: 26 - 6*sqrt(17) ≈ 1.261366246…(certified ±1e-"), "{last}");
    assert!(last.ends_with("; rejected candidate: 26 + 6*sqrt(17) (side condition 3x-8 <= 0 violated)"), "{last}");
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["solve", EXAM, "--domain", "[0,inf)", "--trace"],
        vec!["solve", "exp(x) = x + 2", "--json"],
        vec!["isolate", "x^5 - x - 1"],
    ] {
        assert_eq!(solset(&args), solset(&args));
    }
}

#[test]
fn json_output_follows_schema() {
    let (code, out, _) = solset(&["solve", "exp(x) = 1/2", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["solutions"], serde_json::json!({"kind": "finite", "solutions": [{"rep": "closed_form", "expr": "ln(1/2)"}]}));
    assert!(v["trace"]["steps"].is_array());
    assert_eq!(v["trace"]["overall_relation"], "equivalent");

    let (_, out, _) = solset(&["solve", "exp(x) = -1", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["solutions"], serde_json::json!({"kind": "empty", "solutions": []}));

    let (_, out, _) = solset(&["solve", "exp(x) = exp(x)", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["solutions"], serde_json::json!({"kind": "identity"}));
}

#[test]
fn json_enclosures_are_exact_rational_pairs() {
    let (_, out, _) = solset(&["solve", "x^2 = 2", "--json", "--precision", "64"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let enc = v["enclosures"].as_array().unwrap();
    assert_eq!(enc.len(), 2);
    for pair in enc {
        for end in pair.as_array().unwrap() {
            assert!(end["num"].is_string() && end["den"].is_string());
        }
    }
}

#[test]
fn width_limits_displayed_digits() {
    let (_, wide, _) = solset(&["solve", "x^5 - x - 1 = 0", "--precision", "16"]);
    let (_, narrow, _) = solset(&["solve", "x^5 - x - 1 = 0"]);
    assert!(narrow.contains("1.167303978…"), "{narrow}");
    assert!(!wide.contains("1.167303978…"), "{wide}");
    assert!(wide.contains("1.167"), "{wide}");
}

#[test]
fn classify_prints_certificates() {
    let (code, out, _) = solset(&["classify", "root(3,2*x) + sqrt(5)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("algebraic; annihilator: y^6 - 15*y^4 - 4*x*y^3 + 75*y^2 - 60*x*y + 4*x^2 - 125"));
    assert!(out.contains("check: verified"));
    let (_, out, _) = solset(&["classify", "exp(x)"]);
    assert!(out.starts_with("transcendental; rule R1"));
    let (_, out, _) = solset(&["classify", "sin(x)/x + W(0, x)"]);
    assert_eq!(out, "unknown\n");
}

#[test]
fn enumerate_starts_with_zero_minus_one_one() {
    let (code, out, _) = solset(&["enumerate-algebraic", "--count", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "   1. 0  root of x\n   2. -1  root of x + 1\n   3. 1  root of x - 1\n");
}

#[test]
fn isolate_and_check() {
    let (_, out, _) = solset(&["isolate", "x^2 - 2"]);
    assert!(out.starts_with("x^2 - 2: 2 real roots"));
    assert!(out.contains("1.414213562…"));
    let (_, out, _) = solset(&["check", EXAM, "--candidate", "26 - 6*sqrt(17)"]);
    assert_eq!(out, "verified: 26 - 6*sqrt(17) is a solution\n");
    let (_, out, _) = solset(&["check", EXAM, "--candidate", "26 + 6*sqrt(17)"]);
    assert!(out.starts_with("rejected: 26 + 6*sqrt(17) is not a solution"));
}

#[test]
fn exit_codes() {
    let (code, _, err) = solset(&["solve", "2x = 1"]);
    assert_eq!(code, 2);
    assert!(err.contains("2x = 1\n ^\n"), "{err}");
    assert_eq!(solset(&["solve", "x = 1 = 2"]).0, 2);
    assert_eq!(solset(&["solve", "x = 1", "--domain", "[0,1"]).0, 2);
    assert_eq!(solset(&["isolate", "exp(x)"]).0, 2);
    assert_eq!(solset(&["solve", "x = 1", "--precision", "many"]).0, 3);
    assert_eq!(solset(&["solve", "x = 1", "--bogus"]).0, 3);
    assert_eq!(solset(&["frobnicate"]).0, 3);
    assert_eq!(solset(&["check", "x = 1", "--candidate", "x"]).0, 3);
    assert_eq!(solset(&["--help"]).0, 0);
}

#[test]
fn unsolved_and_empty_results_exit_zero() {
    let (code, out, _) = solset(&["solve", "sin(x) = x/2"]);
    assert_eq!(code, 0);
    assert!(out.lines().last().unwrap().starts_with("unsolved: "), "{out}");
    assert!(out.starts_with("equation: "));
    let (code, out, _) = solset(&["solve", "sqrt(x) = -1"]);
    assert_eq!(code, 0);
    assert!(out.contains("no solutions"), "{out}");
}

#[test]
fn lambert_and_substitution_in_text_mode() {
    let (_, out, _) = solset(&["solve", "exp(x) = x + 2"]);
    assert!(out.contains("-W(0, -exp(-2)) - 2 ≈ -1.84140566"), "{out}");
    assert!(out.contains("-W(-1, -exp(-2)) - 2 ≈ 1.146193221"), "{out}");
    let (_, out, _) = solset(&["solve", "x^6 - x^3 - 1 = 0", "--trace"]);
    assert!(out.contains("Substitute(y = x^3)"), "{out}");
    assert!(out.contains("2 solutions"), "{out}");
}
