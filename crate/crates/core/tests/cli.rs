mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::corpus_dir;
use serde_json::Value;
use tautri::algebra::format;

fn tautri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tautri")).args(args).output().unwrap()
}

fn corpus_file(name: &str) -> String {
    corpus_dir().join(name).to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn without_elapsed(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn explore_reports_finite_counts() {
    let out = tautri(&["explore", &corpus_file("t2a2.alg")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "Finite");
    assert_eq!(v["count"], 46);
    assert_eq!(v["regular"], true);
}

#[test]
fn explore_output_does_not_depend_on_workers() {
    let a3 = corpus_file("a3.alg");
    let one = tautri(&["explore", &a3, "--n", "2", "--workers", "1"]);
    let eight = tautri(&["explore", &a3, "--n", "2", "--workers", "8"]);
    assert_eq!(without_elapsed(json(&one)), without_elapsed(json(&eight)));
    let stop_one = tautri(&["explore", &a3, "--n", "3", "--budget", "500", "--workers", "1"]);
    let stop_eight = tautri(&["explore", &a3, "--n", "3", "--budget", "500", "--workers", "8"]);
    assert_eq!(without_elapsed(json(&stop_one)), without_elapsed(json(&stop_eight)));
}

#[test]
fn require_finite_exits_with_budget_code() {
    let a5 = corpus_file("a5.alg");
    let out = tautri(&["explore", &a5, "--n", "2", "--budget", "200", "--require-finite"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(json(&out)["status"], "BudgetExceeded");
    let out = tautri(&["stau-count", &a5, "--n", "2", "--budget", "200", "--require-finite"]);
    assert_eq!(out.status.code(), Some(4));
    let out = tautri(&["explore", &a5, "--n", "2", "--budget", "200"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn parse_errors_exit_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.alg");
    std::fs::write(&bad, "[quiver]\nvertices = 1 2\narrows = a:1->3\n").unwrap();
    let out = tautri(&["classify", bad.to_str().unwrap(), "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(tautri(&["explore"]).status.code(), Some(2));
    assert_eq!(tautri(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn crosscheck_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["a2.alg", "kx2.alg"] {
        std::fs::copy(corpus_dir().join(f), dir.path().join(f)).unwrap();
    }
    let good = dir.path().join("good.txt");
    std::fs::write(&good, "a2.alg 2 finite\nkx2.alg 3 finite\n").unwrap();
    let out = tautri(&["crosscheck", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["consistent"], true);
    let wrong = dir.path().join("wrong.txt");
    std::fs::write(&wrong, "a2.alg 2 infinite\n").unwrap();
    let out = tautri(&["crosscheck", wrong.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["consistent"], false);
    let malformed = dir.path().join("malformed.txt");
    std::fs::write(&malformed, "a2.alg two finite\n").unwrap();
    assert_eq!(tautri(&["crosscheck", malformed.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn corpus_files_round_trip() {
    for entry in std::fs::read_dir(corpus_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "alg") {
            let p = format::read_file(&path).unwrap();
            let again = format::parse(&format::to_text(&p)).unwrap();
            assert_eq!(format::to_text(&again), format::to_text(&p), "{}", path.display());
            assert_eq!(again.dimension().unwrap(), p.dimension().unwrap(), "{}", path.display());
        }
    }
}

fn build(args: &[&str], output: &Path) -> tautri::algebra::BoundPresentation {
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", output.to_str().unwrap()]);
    let out = tautri(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    format::read_file(output).unwrap()
}

#[test]
fn build_constructions() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = corpus_file("a2.alg");
    let t2 = build(&[&a2, "tn:2"], &dir.path().join("t2.alg"));
    assert_eq!(t2.dimension().unwrap(), 9);
    let cube = build(&[&corpus_file("square.alg"), &format!("tensor:{a2}")], &dir.path().join("cube.alg"));
    assert_eq!(cube.dimension().unwrap(), 27);
    assert_eq!(cube.vertex_count(), 8);
    let rad2 = build(&[&corpus_file("a3.alg"), "rad2"], &dir.path().join("r.alg"));
    assert_eq!(rad2.dimension().unwrap(), 5);
    let nak = build(&["-", "nakayama:2,cyclic,3"], &dir.path().join("n.alg"));
    assert_eq!(nak.dimension().unwrap(), 6);
    let local = build(&["-", "local:4"], &dir.path().join("l.alg"));
    assert_eq!(local.dimension().unwrap(), 4);
    assert_eq!(tautri(&["build", "-", "tn:2"]).status.code(), Some(1));
}

#[test]
fn classify_and_separated() {
    let out = tautri(&["classify", &corpus_file("a5.alg"), "--n", "2"]);
    let v = json(&out);
    assert_eq!(v["conclusion"], "TauInfinite");
    assert_eq!(v["rule"], "R5");
    let out = tautri(&["classify", &corpus_file("lin3_rad2.alg"), "--n", "2", "--mode", "silting"]);
    assert_eq!(json(&out)["conclusion"], "SiltingDiscrete");
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("sep.dot");
    let out = tautri(&["separated", &corpus_file("kronecker.alg"), "--dot", dot.to_str().unwrap()]);
    let types: Vec<String> = json(&out)["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["type"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(types.iter().filter(|t| *t == "A~1").count(), 1);
    assert_eq!(types.iter().filter(|t| *t == "A1").count(), 2);
    assert!(std::fs::read_to_string(dot).unwrap().contains("digraph"));
}

#[test]
fn stau_count_and_hasse() {
    let a3 = corpus_file("a3.alg");
    let explored = json(&tautri(&["stau-count", &a3]));
    let oracle = json(&tautri(&["stau-count", &a3, "--oracle"]));
    assert_eq!(explored["count"], 14);
    assert_eq!(oracle["count"], 14);
    let hasse = json(&tautri(&["hasse", &a3]));
    assert_eq!(hasse["nodes"].as_array().unwrap().len(), 14);
    assert_eq!(hasse["edges"].as_array().unwrap().len(), 21);
}
