//! End-to-end runs of the `lconvex` binary: outputs, reports and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lconvex")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn read_json(path: &std::path::Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(code(&[]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["check-lattice", "no-such-lattice"]), 1);
    assert_eq!(code(&["check-order", "/nonexistent/file.order"]), 1);
    assert_eq!(code(&["search", "nothing"]), 1);
    assert_eq!(code(&["theorems", "--only", "no-such-check"]), 1);
    assert_eq!(code(&["theorems", "--mutate", "no-such-mutation", "--only", "hull-laws"]), 1);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn check_lattice() {
    let out = stdout(&["check-lattice", "lukasiewicz4"]);
    assert_eq!(out.matches(" pass ").count(), 6, "{out}");
    assert!(stdout(&["check-lattice", &data("godel3.lattice")]).contains("godel3file (3 elements)"));
    assert_eq!(code(&["check-lattice", &data("broken.lattice")]), 2);
}

#[test]
fn check_order() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("o.json");
    let out = stdout(&["check-order", &data("fuzzy.order"), "--report", report.to_str().unwrap()]);
    assert!(out.contains("E1 E2 E3 hold"));
    assert_eq!(read_json(&report)["e"][0][1], "1/2");
    assert_eq!(code(&["check-order", &data("bad.order")]), 2);
}

#[test]
fn check_space() {
    let out = stdout(&["check-space", &data("graded.space")]);
    assert!(out.contains("8 members"), "{out}");
    // generated from the same subsets, the family is fine
    assert_eq!(code(&["check-space", &data("not_closed.space")]), 0);
    let failed = run(&["check-space", "--closed", &data("not_closed.space")]);
    assert_eq!(failed.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&failed.stdout).contains("C3  FAIL"));
}

#[test]
fn sobrify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("s.json");
    stdout(&["sobrify", &data("sierpinski.space"), "--report", report.to_str().unwrap()]);
    let v = read_json(&report);
    assert_eq!(v["verdicts"]["sober"], true);
    assert_eq!(v["verdicts"]["xi_homeomorphism"], true);
    assert_eq!(v["xf"]["points"].as_array().unwrap().len(), 2);

    stdout(&["sobrify", &data("graded.space"), "--report", report.to_str().unwrap()]);
    let v = read_json(&report);
    assert_eq!(v["verdicts"]["sober"], false);
    assert_eq!(v["verdicts"]["xf_sober"], true);
    assert_eq!(v["verdicts"]["xi_homeomorphism"], false);
    assert_eq!(v["witnesses"]["sober"]["hull"], "b=1 c=1/2");
    assert_eq!(v["xf"]["points"].as_array().unwrap().len(), 6);
    assert_eq!(v["xi"].as_object().unwrap().len(), 3);

    stdout(&["sobrify", &data("indiscrete.space"), "--report", report.to_str().unwrap()]);
    let v = read_json(&report);
    assert_eq!(v["verdicts"]["s0"], false);
    assert_eq!(v["xf"]["points"].as_array().unwrap().len(), 1);
    assert_eq!(code(&["sobrify", "--closed", &data("not_closed.space")]), 2);
}

#[test]
fn specialize() {
    let out = stdout(&["specialize", &data("sierpinski.space")]);
    assert!(out.contains("a 1 1") && out.contains("b 0 1"), "{out}");
    assert!(out.contains("sober: true"));
    assert_eq!(code(&["specialize", &data("indiscrete.space")]), 2);
}

#[test]
fn scott_and_complete() {
    let out = stdout(&["scott", &data("fuzzy.order")]);
    assert!(out.contains("7 members"), "{out}");

    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("c.json");
    let out = stdout(&["complete", &data("antichain.order"), "--verify-universal", "--report", report.to_str().unwrap()]);
    assert!(out.contains("3 points"), "{out}");
    let v = read_json(&report);
    assert_eq!(v["join_semilattice"], true);
    assert_eq!(v["universal"]["accepted"], true);
    assert_eq!(v["xi"].as_array().unwrap().len(), 2);

    assert!(stdout(&["complete", &data("chain.order")]).contains("2 points"));
    assert_eq!(code(&["complete", &data("fuzzy.order"), "--max-scott", "10"]), 3);
}

#[test]
fn theorems_small_spec() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let spec = data("small.spec.json");
    let out = stdout(&["theorems", "--spec", &spec, "--json", a.to_str().unwrap()]);
    assert!(!out.contains("FAIL"), "{out}");
    stdout(&["theorems", "--spec", &spec, "--json", b.to_str().unwrap()]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v = read_json(&a);
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["spec"]["space_points"], 2);

    let mutated = run(&["theorems", "--spec", &spec, "--only", "hull-operator", "--mutate", "hull"]);
    assert_eq!(mutated.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&mutated.stdout).contains("FAIL"));

    // a zero budget skips, which is not a failure
    let zero = ["--max-family", "0", "--max-scan", "0", "--max-scott", "0", "--max-maps", "0"];
    let mut args = vec!["theorems", "--spec", &spec, "--only", "hull-laws"];
    args.extend(zero);
    assert_eq!(code(&args), 0);
}

#[test]
fn search_targets() {
    let dir = tempfile::tempdir().unwrap();
    let out_file = dir.path().join("s.json");
    let spec = data("small.spec.json");
    stdout(&["search", "any-equivalence", "--spec", &spec, "--json", out_file.to_str().unwrap()]);
    let v = read_json(&out_file);
    let findings = v["findings"].as_array().unwrap();
    assert!(!findings.is_empty());
    assert!(findings.iter().all(|f| f["hypothesis"] == "all-spaces-sober"));
    stdout(&["search", "scott-inclusion", "--spec", &spec, "--json", out_file.to_str().unwrap()]);
    let v = read_json(&out_file);
    let findings = v["findings"].as_array().unwrap();
    // the one-point Goedel space {0, 1} is sober, yet the constant 1/2 is Scott convex
    assert!(findings.iter().any(|f| f["origin"] == "godel3/1pt#0"), "{v}");
    assert!(findings.iter().all(|f| !f["origin"].as_str().unwrap().starts_with("boolean")));
}
