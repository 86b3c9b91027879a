use std::process::Command;

use gradedq::rewrite::textfmt::serialize;
use gradedq::rewrite::{standard_ruleset, CalculusConfig, Group};
use gradedq::suites::coefficient_mutations;

fn gradedq(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gradedq"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn normalize_prints_normal_form() {
    let (code, out, _) = gradedq(&["normalize", "d*a"]);
    assert_eq!(code, 0);
    assert_eq!(out, "a*d - (q-1)*b*g\n");
}

#[test]
fn d_cubed_vanishes_from_the_command_line() {
    let (_, d2, _) = gradedq(&["diff2", "a*b"]);
    let (_, d3, _) = gradedq(&["diff", d2.trim()]);
    assert_eq!(d3.trim(), "0");
}

#[test]
fn passing_suite_exits_zero() {
    let (code, out, _) = gradedq(&["check", "covariance"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("suite covariance (case I, P1=q2, P2=1)"));
}

#[test]
fn failing_suite_exits_one() {
    let (code, out, _) = gradedq(&["check", "confluence", "--p1", "q", "--p2", "q2"]);
    assert_eq!(code, 1);
    assert!(out.contains("overlaps fail"));
}

#[test]
fn mutated_rule_file_is_caught() {
    let rs = standard_ruleset(CalculusConfig::standard()).unwrap();
    let m = coefficient_mutations(&rs.restrict(&[Group::Coord]), 1).remove(0);
    let path = std::env::temp_dir().join(format!("gradedq-mutated-{}.txt", std::process::id()));
    std::fs::write(&path, serialize(&m.rules)).unwrap();
    let (code, out, err) = gradedq(&["check", "relations", "--rules", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 1, "{out}{err}");
}

#[test]
fn bad_input_exits_two() {
    for args in [
        &["normalize", "a+*b"][..],
        &["check", "nonsense"],
        &["check", "forms", "--case", "II"],
        &["matrix", "sigma", "z"],
        &["check", "all", "--rules", "/nonexistent/rules.txt"],
        &[],
    ] {
        let (code, _, err) = gradedq(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn json_report_parses() {
    let (code, out, _) = gradedq(&["check", "forms", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["summary"]["erratum"], 2);
}

#[test]
fn json_is_byte_stable() {
    let a = gradedq(&["check", "all", "--format", "json"]);
    let b = gradedq(&["check", "all", "--format", "json"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

#[test]
fn check_all_flips_to_one_under_mutation() {
    let rs = standard_ruleset(CalculusConfig::standard()).unwrap();
    for (k, m) in coefficient_mutations(&rs, 4).into_iter().enumerate() {
        let path = std::env::temp_dir().join(format!("gradedq-all-{}-{k}.txt", std::process::id()));
        std::fs::write(&path, serialize(&m.rules)).unwrap();
        let (code, _, err) = gradedq(&["check", "all", "--max-len", "2", "--rules", path.to_str().unwrap()]);
        std::fs::remove_file(&path).ok();
        assert_eq!(code, 1, "{}: {err}", m.description);
    }
}
