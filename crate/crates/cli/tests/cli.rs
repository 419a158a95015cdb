use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tvlab::convex::TverbergPartition;
use tvlab::io::{from_json_str, PointsFile};
use tvlab::pl_maps::IntersectionTable;

fn tvlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tvlab")).args(args).env_remove("TVLAB_CELL_CAP").output().unwrap()
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = tvlab(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const K5_PENTAGON: &str = r#"{"complex":{"num_vertices":5,"maximal_simplices":[[0,1],[0,2],[0,3],[0,4],[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]},"d":2,"images":[["0","10"],["10","3"],["6","-8"],["-6","-8"],["-10","3"]]}"#;
const K4_ONE_CROSSING: &str = r#"{"complex":{"num_vertices":4,"maximal_simplices":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]},"d":2,"images":[["0","0"],["1","0"],["1","1"],["0","1"]]}"#;
const TRIANGLE: &str = r#"{"complex":{"num_vertices":3,"maximal_simplices":[[0,1,2]]},"d":2,"images":[["0","0"],["1","0"],["0","1"]]}"#;

#[test]
fn dp_stats_golden() {
    let (code, v) = report(&["dp", "stats", "--n", "2", "--r", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["f_vector"], serde_json::json!([6]));
    assert_eq!(v["result"]["dim"], 0);
    assert_eq!(v["config"]["seed"], 0);
    let (_, v) = report(&["dp", "stats", "--n", "1", "--r", "3"]);
    assert_eq!(v["result"]["empty"], true);
    assert_eq!(v["result"]["dim"], Value::Null);
}

#[test]
fn dp_homology_and_connectivity() {
    let (code, v) = report(&["dp", "connectivity", "--n", "4", "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["connectivity"], 2);
    let (_, v) = report(&["dp", "homology", "--n", "2", "--r", "2", "--p", "3"]);
    assert_eq!(v["result"]["homology"]["ring"], "Z/3");
    assert_eq!(v["result"]["betti_numbers"], serde_json::json!([1, 1]));
}

#[test]
fn ozaydin_six() {
    let out = tvlab(&["ozaydin", "report", "--r", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["relation_gcd"], 1);
    assert_eq!(v["result"]["argument_applies"], true);
    let primes: Vec<u64> = v["result"]["primes"].as_array().unwrap().iter().map(|r| r["p"].as_u64().unwrap()).collect();
    assert_eq!(primes, vec![2, 3, 5]);
    assert!(v["result"]["primes"].as_array().unwrap().iter().all(|r| r["transitive"] == false));
    let table = String::from_utf8(out.stderr).unwrap();
    assert!(table.contains("argument applies: true"));
}

#[test]
fn fuzz_runs_certify() {
    let (code, v) = report(&["radon", "--random", "40", "--d", "3", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["passed"], 40);
    let (code, v) = report(&["tverberg", "search", "--random", "5", "--d", "2", "--r", "3", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["passed"], 5);
    let (code, v) = report(&["plmap", "cocycle", "--fuzz-oracle", "3", "--n", "4", "--s", "1", "--d", "2", "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["passed"], 3);
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let map = write(dir.path(), "k5.json", K5_PENTAGON);
    let args = ["vk", "obstruction", "--map", map.to_str().unwrap(), "--r", "2", "--certificate", "--seed", "3"];
    assert_eq!(tvlab(&args).stdout, tvlab(&args).stdout);
    let args = ["radon", "--random", "10", "--d", "2", "--seed", "11"];
    assert_eq!(tvlab(&args).stdout, tvlab(&args).stdout);
}

#[test]
fn van_kampen_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write(dir.path(), "k5.json", K5_PENTAGON);
    let (code, v) = report(&["vk", "obstruction", "--map", k5.to_str().unwrap(), "--r", "2", "--certificate"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "nontrivial");
    assert_eq!(v["result"]["certificate"]["type"], "obstruction");
    let k4 = write(dir.path(), "k4.json", K4_ONE_CROSSING);
    let (_, v) = report(&["vk", "obstruction", "--map", k4.to_str().unwrap(), "--r", "2"]);
    assert_eq!(v["result"]["verdict"], "trivial");
    assert!(v["result"].get("certificate").is_none());
    assert_eq!(v["config"]["inputs"][0], k4.to_str().unwrap());
}

#[test]
fn cocycle_table_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write(dir.path(), "k5.json", K5_PENTAGON);
    let (_, v) = report(&["plmap", "cocycle", "--map", k5.to_str().unwrap(), "--r", "2"]);
    assert_eq!(v["result"]["nonzero"], 5);
    let table: IntersectionTable = serde_json::from_value(v["result"]["table"].clone()).unwrap();
    assert_eq!(table.abs_sum(), 5);
    let (_, v) = report(&["plmap", "rfold", "--map", k5.to_str().unwrap(), "--r", "2"]);
    assert_eq!(v["result"]["count"], 5);
}

#[test]
fn partitions_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let pts = r#"{"d":2,"points":[["0","0"],["6","0"],["0","6"],["1","1"]]}"#;
    let path = write(dir.path(), "pts.json", pts);
    let (code, v) = report(&["radon", "--points", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let part: TverbergPartition = serde_json::from_value(v["result"].clone()).unwrap();
    let file: PointsFile = from_json_str(pts).unwrap();
    assert!(part.verify(&file.to_points().unwrap()));
    assert_eq!(v["result"]["witness"], serde_json::json!(["1", "1"]));
}

#[test]
fn constructions() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.json", TRIANGLE);
    let (code, v) = report(&["construct", "join", "--map", tri.to_str().unwrap(), "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["almost_r_embedding"], true);
    assert_eq!(v["result"]["map"]["d"], 3);
    let (_, v) = report(&["construct", "constraint", "--map", tri.to_str().unwrap(), "--s", "1"]);
    assert_eq!(v["result"]["vanishes_exactly_on_skeleton"], true);
}

#[test]
fn sylow_and_puzzle() {
    let (code, v) = report(&["sylow", "--r", "6", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["order"], 16);
    assert_eq!(v["result"]["transitive"], false);
    let (code, v) = report(&["puzzle", "--n", "3", "--r", "2", "--from", "[[0],[1]]", "--to", "[[1],[0]]"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["reachable"], true);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{ not json");
    let (code, v) = report(&["plmap", "rfold", "--map", bad.to_str().unwrap(), "--r", "2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "input");
    let (code, _) = report(&["dp", "stats", "--n", "3", "--s", "5", "--r", "2"]);
    assert_eq!(code, 2);
    let (code, v) = report(&["dp", "stats", "--n", "7", "--r", "2", "--cell-cap", "100"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "cap");
    let out = Command::new(env!("CARGO_BIN_EXE_tvlab"))
        .args(["dp", "stats", "--n", "4", "--r", "2"])
        .env("TVLAB_CELL_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let res = tvlab(&["sylow", "--r", "4", "--p", "2", "--output", out.to_str().unwrap()]);
    assert!(res.status.success() && res.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["result"]["transitive"], true);
}
