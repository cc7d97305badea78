//! End-to-end runs of the `wallcross` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn wallcross(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallcross")).args(args).env_remove("WALLCROSS_MAX_M").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

const PAIR: &str = r#"{"t1":{"m":4,"splits":[[1,2]]},"t2":{"m":4,"splits":[[1,4]]}}"#;

#[test]
fn every_reproduction_passes() {
    for item in
        ["gr24-matrices", "gr25-matrices", "ineqs-gemo-maps", "gr24-alg-map", "counterexample", "appendix-example"]
    {
        let out = wallcross(&["reproduce", item]);
        assert_eq!(out.status.code(), Some(0), "{item}");
        let v = json(&out);
        assert_eq!(v["passed"], Value::Bool(true));
        assert_eq!(v["item"], Value::String(item.into()));
    }
}

#[test]
fn table_output() {
    let out = wallcross(&["--table", "reproduce", "gr24-matrices"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "PASS M_tau1\nPASS M_tau2\n");
}

#[test]
fn trees_counts() {
    for (m, n) in [("4", 3), ("5", 15), ("6", 105)] {
        let v = json(&wallcross(&["trees", "--m", m]));
        assert_eq!(v["count"], n);
    }
}

#[test]
fn matrices_from_splits() {
    let v = json(&wallcross(&["matrices", "--m", "4", "--split", "1,2"]));
    assert_eq!(v["m_tau"][4], serde_json::json!(["1", "0", "0", "0", "0", "1"]));
    assert_eq!(v["nohara_ueda"]["inequalities"].as_array().unwrap().len(), 6);
    let same = json(&wallcross(&["gr2m", "matrices", "--m", "4", "--tree", r#"{"m":4,"splits":[[1,2]]}"#]));
    assert_eq!(v, same);
}

#[test]
fn crossing_maps() {
    let run = |map: &str, point: &str, extra: &[&str]| {
        let mut args = vec!["crossing", "--pair", PAIR, "--map", map, "--point", point];
        args.extend_from_slice(extra);
        json(&wallcross(&args))["image"].clone()
    };
    let p = r#"["2","1","1","1","0"]"#;
    assert_eq!(run("flip", p, &[]), serde_json::json!(["2", "1", "1", "1", "2"]));
    assert_eq!(run("theta", p, &["--alpha", "[0,1,0,0,1,0]"]), serde_json::json!(["2", "1", "1", "1", "2"]));
    assert_eq!(run("shift", p, &[]), serde_json::json!(["2", "1", "1", "1", "0"]));
}

#[test]
fn pair_from_file() {
    let dir = std::env::temp_dir().join(format!("wallcross-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pair.json");
    std::fs::write(&path, PAIR).unwrap();
    let out_path = dir.join("out.json");
    let out = wallcross(&[
        "--out",
        out_path.to_str().unwrap(),
        "crossing",
        "--pair",
        path.to_str().unwrap(),
        "--map",
        "flip",
        "--point",
        r#"["1","1","0","0","1"]"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["image"], serde_json::json!(["1", "1", "0", "0", "0"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_small_sweep() {
    let out = wallcross(&["verify", "--m", "4", "--degree", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pairs"], 3);
    assert_eq!(v["mode"], "exact");
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_guards_m() {
    let out = wallcross(&["verify", "--m", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("WALLCROSS_MAX_M"));
    assert_eq!(wallcross(&["verify", "--m", "3"]).status.code(), Some(2));
}

#[test]
fn run_and_counterexample() {
    let out = wallcross(&["run", "--example", "hypersurface-11"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["kappa"], "1");
    let m1 = r#"[["1","1","1","1"],["0","1","2","3"],["0","0","-1","4"]]"#;
    let m2 = r#"[["1","1","1","1"],["0","1","2","3"],["0","0","3","-1"]]"#;
    let direct = wallcross(&["run", "--m1", m1, "--m2", m2]);
    assert_eq!(json(&direct), json(&out));
    assert_eq!(wallcross(&["counterexample"]).status.code(), Some(0));
}

#[test]
fn mutate_example() {
    let out = wallcross(&["mutate", "--example", "appendix"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["d1_vertices"].as_array().unwrap().len(), 5);
    assert_eq!(v["d2_vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn mutate_rejects_bad_eta() {
    let out = wallcross(&["mutate", "--example", "appendix", "--eta", r#"["1","0","0"]"#]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let crossing_pair = r#"{"t1":{"m":5,"splits":[[1,2],[3,4]]},"t2":{"m":5,"splits":[[1,3],[2,4]]}}"#;
    let out = wallcross(&["crossing", "--pair", crossing_pair, "--map", "flip", "--point", "[]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not adjacent"));
    assert_eq!(wallcross(&["body", "--matrix", r#"[["1","x"]]"#]).status.code(), Some(2));
    assert_eq!(wallcross(&["body", "--matrix", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(wallcross(&["crossing", "--pair", PAIR, "--map", "theta", "--point", "[]"]).status.code(), Some(2));
    assert_eq!(wallcross(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = wallcross(&["verify", "--m", "4", "--mode", "sample", "--seed", "3"]);
    let b = wallcross(&["verify", "--m", "4", "--mode", "sample", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn body_example() {
    let v = json(&wallcross(&["body", "--example", "appendix", "--side", "2"]));
    assert_eq!(v["vertex_count"], 4);
}

#[test]
fn failed_check_exits_1() {
    // Over x2 = t the fibers are [0, 1] and [0, 1 - t]: no constant ratio.
    let m1 = r#"[["1","1","1","1"],["0","1","0","1"],["0","0","1","1"]]"#;
    let m2 = r#"[["1","1","1","1"],["0","1","0","1"],["0","0","1","0"]]"#;
    let out = wallcross(&["--table", "run", "--m1", m1, "--m2", m2]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}
