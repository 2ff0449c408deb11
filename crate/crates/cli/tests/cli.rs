use std::process::{Command, Output};

use serde_json::Value;

fn hsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hsp")).args(args).env_remove("HSP_CACHE_DIR").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn klmatrix_axa22() {
    let out = hsp(&["klmatrix", "--pair", "A:n=2,k=2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let entries = v["entries"].as_object().unwrap();
    assert_eq!(entries.len(), 5);
    let mut strs: Vec<&str> = entries.values().map(|e| e["str"].as_str().unwrap()).collect();
    strs.sort();
    strs.dedup();
    assert_eq!(strs, ["1", "q"]);
}

#[test]
fn klmatrix_csv() {
    let out = hsp(&["klmatrix", "--pair", "A:n=2,k=2", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "lambda\\mu,0,1,2\n0,1,q,0\n1,0,1,q\n2,0,0,1\n");
}

#[test]
fn oracle_verify_e6() {
    let out = hsp(&["oracle-verify", "--pair", "E6/D5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn region_tile_count() {
    let out = hsp(&["region", "--pair", "A:n=8,k=5", "--format", "json"]);
    assert_eq!(json(&out)["tiles"].as_array().unwrap().len(), 20);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hsp(&["region", "--pair", "Q:n=3"]).status.code(), Some(2));
    assert_eq!(hsp(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        hsp(&["tetris", "--pair", "D/A:n=4", "--mu", "1", "--tile", "1,1", "--format", "dot"]).status.code(),
        Some(2)
    );
    assert_eq!(hsp(&["contract", "--pair", "C:n=3", "--tau", "1"]).status.code(), Some(2));
    let out = hsp(&["paths", "--pair", "A:n=2,k=2", "--lambda", "1,1", "--mu", "-"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a tile partition"));
}

#[test]
fn cache_changes_only_the_cached_flag() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["koszul", "--pair", "D/A:n=5", "--cache-dir", d];
    let first = hsp(&args);
    let second = hsp(&args);
    let uncached = hsp(&["koszul", "--pair", "D/A:n=5"]);
    let (a, b) = (String::from_utf8(first.stdout).unwrap(), String::from_utf8(second.stdout).unwrap());
    assert!(a.contains("\"cached\": false"));
    assert_eq!(a.replace("\"cached\": false", "\"cached\": true"), b);
    assert_eq!(a, String::from_utf8(uncached.stdout).unwrap());
    assert!(dir.path().join("v1/DA-n5/koszul.json").exists());
}

#[test]
fn cache_dir_from_env() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hsp"))
        .args(["poset", "--pair", "B:n=3"])
        .env("HSP_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("v1/B-n3/poset.json").exists());
}

#[test]
fn reproducible_output() {
    let a = hsp(&["poset", "--pair", "E6/D5", "--format", "dot"]);
    let b = hsp(&["poset", "--pair", "E6/D5", "--format", "dot", "--threads", "1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn koszul_worked_example() {
    let out = hsp(&["koszul", "--pair", "A:n=2,k=2", "--lambda", "2", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["inverse"], true);
    assert_eq!(v["tauIndependent"], true);
    assert_eq!(v["p"]["0"]["str"], "q^2");
    assert_eq!(v["p"]["1"]["str"], "q");
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
}

#[test]
fn paths_polynomial() {
    let v = json(&hsp(&["paths", "--pair", "A:n=2,k=2", "--lambda", "1", "--mu", "2"]));
    assert_eq!(v["poly"]["str"], "q");
    assert_eq!(v["paths"].as_array().unwrap().len(), 1);
}

#[test]
fn tetris_spot_decoration() {
    let out = hsp(&[
        "tetris",
        "--pair",
        "D/A:n=15",
        "--mu",
        "1,2,3,4,5,6,7,8,8,3,1,1,1,1",
        "--tile",
        "6,6",
        "--kind",
        "omega",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["ell"], 7);
}

#[test]
fn contract_outputs() {
    let v = json(&hsp(&["contract", "--pair", "E7/E6", "--tau", "7"]));
    assert_eq!(v["target"], "D/D:n=6");
    let dot = hsp(&["contract", "--pair", "A:n=5,k=3", "--tau", "3", "--format", "dot"]);
    assert!(String::from_utf8(dot.stdout).unwrap().contains("composite"));
}

#[test]
fn invariance_scan_small() {
    let out = hsp(&["invariance-scan", "--pair", "A:n=3,k=2", "--pair", "D/A:n=4", "--max-interval-size", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert!(v["comparisons"].as_u64().unwrap() > 0);
}

#[test]
fn selftest_passes() {
    let out = hsp(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}
