use std::process::Command;

use serde_json::Value;

fn atl(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_atl")).args(args).output().expect("run atl");
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().expect("exit code"), doc)
}

fn passes(args: &[&str]) -> Value {
    let (code, doc) = atl(args);
    assert_eq!(code, 0, "{args:?}: {doc:#}");
    assert_eq!(doc["pass"], true);
    doc["result"].clone()
}

#[test]
fn relation_suites() {
    passes(&["relations", "--n", "4", "--ring", "generic", "--suite", "affine"]);
    passes(&["relations", "--n", "2", "--ring", "l=2", "--suite", "phi"]);
    let r = passes(&["relations", "--n", "3", "--suite", "appendixA"]);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["relation"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.contains("U_2(Λ/2)")), "{names:?}");
}

#[test]
fn gram_ranks() {
    let g = passes(&["gram", "--n", "6", "--k", "2", "--z", "v4", "--ring", "l=3"]);
    let d = passes(&["dims", "--label", "L:6,2;v4", "--ring", "l=3"]);
    assert_eq!(g["rank"], d["dim"]["finite"]);
    assert_eq!(passes(&["gram", "--n", "2", "--k", "0", "--z", "generic"])["rank"], 2);
    assert_eq!(passes(&["gram", "--n", "4", "--k", "4", "--z", "v6", "--ring", "generic"])["rank"], 1);
}

#[test]
fn showcase_and_crosscheck() {
    let r = passes(&["fuse", "--kind", "1", "--left", "W:5,3", "--right", "W:7,5", "--ring", "l=5", "--mode", "symbolic"]);
    assert_eq!(r["render"], "Pa(12,4) ⊕ Pa(12,6) ⊕ Resφ S(12,8)");
    assert_eq!(r["total_dim"], 780);
    let c = passes(&["fuse", "--kind", "1", "--left", "W:2,2", "--right", "W:2,2", "--ring", "generic", "--mode", "both"]);
    assert_eq!(c["explicit_dim"], 6);
}

#[test]
fn ladder() {
    let r = passes(&["order", "--k", "3", "--z", "v5", "--l", "5", "--n", "13"]);
    assert!(r["ladder"]["nodes"].as_array().unwrap().len() > 1);
    assert_eq!(r["edges_verified"], true);
}

#[test]
fn refusals_have_their_own_exit_code() {
    let (code, doc) = atl(&["fuse", "--left", "S:3,1", "--right", "S:3,1", "--ring", "l=3"]);
    assert_eq!(code, 3);
    assert_eq!(doc["refused"], true);
    assert!(doc["error"].as_str().unwrap().contains("generic q only"));
    let (code, _) = atl(&["hom", "--source", "W:2,0", "--target", "S:2,0"]);
    assert_eq!(code, 4);
}

#[test]
fn digests_are_reproducible() {
    let args = ["hom", "--source", "Wcell:4,4;v2", "--target", "Wcell:4,2;v4", "--basis"];
    let (_, a) = atl(&args);
    let (_, b) = atl(&args);
    assert_eq!(a["result"]["dim"], 1);
    assert_eq!(a["manifest"]["result_digest"], b["manifest"]["result_digest"]);
    assert_eq!(a["manifest"]["result_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn functors_and_peirce() {
    let r = passes(&["functor", "--label", "P:5,3", "--label", "S:5,3", "--ring", "l=3"]);
    assert_eq!(r["ends"][0]["end_pulled_back"], 2);
    let t = passes(&["functor", "--dir", "resphi", "--label", "P:5,3", "--ring", "l=3"]);
    assert_eq!(t[0]["render"], "Pa(5,3)");
    assert_eq!(passes(&["peirce", "--n", "3", "--bound", "1"])["pass"], true);
}

#[test]
fn small_grid_with_threads() {
    let out = Command::new(env!("CARGO_BIN_EXE_atl"))
        .args(["grid", "--n-max", "4", "--kind", "2"])
        .env("ATL_THREADS", "2")
        .output()
        .expect("run atl");
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["manifest"]["threads"], 2);
    assert_eq!(doc["result"]["failed"], 0);
}
