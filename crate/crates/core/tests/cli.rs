use std::io::Write;
use std::path::Path;

use hadamono::cli::run;
use hadamono::PairSet;
use serde_json::Value;

const PROBLEM: &str = r#"{
  "space": {"kind": "spoke_tree"},
  "points": {
    "o": {"spoke": 0, "radius": "0"},
    "x1": {"spoke": 1, "radius": "1"},
    "x2": {"spoke": 2, "radius": "1"},
    "x3": {"spoke": 3, "radius": "1"},
    "h": {"spoke": 1, "radius": "1/2"}
  },
  "pair_sets": {
    "M": {"pairs": [
      {"point": "x1", "dual": {"terms": [{"tail": "x2", "head": "o"}]}},
      {"point": "x2", "dual": {"terms": [{"tail": "x3", "head": "o"}]}}
    ]},
    "E": {"pairs": []},
    "Bad": {"pairs": [
      {"point": "x1", "dual": {"terms": [{"tail": "x1", "head": "x2"}]}},
      {"point": "x2", "dual": {"terms": [{"tail": "x2", "head": "x2"}]}}
    ]}
  },
  "ground_sets": {
    "G": {"include": ["M"], "pairs": [{"point": "o", "dual": {"terms": [{"tail": "h", "head": "x1"}]}}]},
    "Small": {"pairs": [{"point": "o", "dual": "0"}]}
  },
  "objectives": {"f": {"op": "sqdist", "anchor": "x1", "scale": "1/2"}},
  "grids": {"W": ["o", "x1", "x2", "h"]}
}"#;

fn write_problem(dir: &Path, text: &str) -> String {
    let path = dir.join("problem.json");
    std::fs::File::create(&path).unwrap().write_all(text.as_bytes()).unwrap();
    path.display().to_string()
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("hadamono").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn empty_set_is_vacuously_monotone() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_problem(dir.path(), PROBLEM);
    let (code, out, _) = call(&["--format", "json", "check-monotone", &f, "--set", "E"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], "hadamono/1");
    assert_eq!(v["report"]["inconclusive"], true);
}

#[test]
fn failing_check_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_problem(dir.path(), PROBLEM);
    let (code, out, _) = call(&["--format", "json", "check-monotone", &f, "--set", "Bad"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], false);
    assert!(v["report"]["witness"].is_object());
}

#[test]
fn ground_set_must_contain_the_set() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_problem(dir.path(), PROBLEM);
    let (code, _, err) = call(&["polar", &f, "--set", "M", "--ground", "Small"]);
    assert_eq!(code, 2);
    assert!(err.contains("ground set"), "{err}");
}

#[test]
fn polar_output_is_a_pair_set() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_problem(dir.path(), PROBLEM);
    let (code, out, _) = call(&["--format", "json", "polar", &f, "--set", "M", "--ground", "G"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["source"]["operation"], "polar");
    let set: PairSet = serde_json::from_value(v["result"].clone()).unwrap();
    assert_eq!(set.len(), 3);

    let (code, out, _) = call(&["--format", "json", "closure", &f, "--set", "M", "--ground", "G"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let closure: PairSet = serde_json::from_value(v["result"].clone()).unwrap();
    assert!(closure.set_eq(&set));
}

#[test]
fn malformed_files_report_locations() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_problem(dir.path(), &PROBLEM.replace(r#""tail": "x3""#, r#""tail": "nowhere""#));
    let (code, _, err) = call(&["check-monotone", &f, "--set", "M"]);
    assert_eq!(code, 2);
    assert!(err.contains("pair_sets.M.pairs[1].dual.terms[0].tail"), "{err}");

    let f = write_problem(dir.path(), "{ \"space\": ");
    let (code, _, err) = call(&["check-monotone", &f, "--set", "M"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["no-such-command"]).0, 2);
    assert_eq!(call(&["polar"]).0, 2);
    assert_eq!(call(&["--format", "yaml", "repro-paper"]).0, 2);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("repro-paper"));
}

#[test]
fn flatness_fails_on_the_spoke_tree_and_holds_on_the_plane() {
    assert_eq!(call(&["check-flat", "--space", "spoke-tree"]).0, 1);
    assert_eq!(call(&["check-flat", "--space", "euclidean:2", "--samples", "100"]).0, 0);
}

#[test]
fn variational_commands() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_problem(dir.path(), PROBLEM);
    let (code, out, _) = call(&["--format", "json", "mf-member", &f, "--objective", "f", "--x", "x1", "--grid", "W"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["verdict"], "consistent");

    let (code, out, _) = call(&["prox", &f, "--objective", "f", "--y", "o", "--p", "o"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("minimizer [(1,1/2)] value 1/4"), "{out}");
}

#[test]
fn repro_is_exact_and_deterministic() {
    let (code, a, _) = call(&["--format", "json", "--seed", "7", "repro-paper"]);
    let (_, b, _) = call(&["--format", "json", "--seed", "7", "repro-paper"]);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    for needle in ["-5/24 vs -1/8", "1/24 <= 1/40", "[(1,1/6)]", "38 twos, 342 zeros", "1/2,3/2"] {
        assert!(a.contains(needle), "missing {needle}");
    }
}

#[test]
fn thread_cap_does_not_change_output() {
    let bin = env!("CARGO_BIN_EXE_hadamono");
    let go = |threads: &str| {
        std::process::Command::new(bin)
            .env("HADAMONO_THREADS", threads)
            .args(["--format", "json", "check-laws", "--space", "spoke-tree", "--instances", "20"])
            .output()
            .unwrap()
    };
    let (one, many) = (go("1"), go("4"));
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}
