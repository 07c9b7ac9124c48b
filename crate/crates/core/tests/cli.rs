use std::path::PathBuf;
use std::process::{Command, Output};

fn ordsemi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordsemi")).args(args).env_remove("ORDSEMI_CAP").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ordsemi-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const WORKED: &str = "n=9 range=0,2,4,6,8";

#[test]
fn enumerate_counts_and_lists() {
    let o = ordsemi(&["enumerate", "n=5 range=1,3", "--count-only"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "6\n");
    assert_eq!(stdout(&ordsemi(&["enumerate", WORKED, "--count-only"])), "715\n");
    let listing = stdout(&ordsemi(&["enumerate", "n=3 range=0,2"]));
    assert!(listing.contains("( 0 1 2 )"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["enumerate", "n=6 range=1,4"][..],
        &["kclasses", "n=6 range=0,2,5"],
        &["--json", "decide", "n=5 range=1,3", "n=5 range=1,2"],
        &["--json", "oracle", "n=5 range=1,3", "n=5 range=1,3"],
        &["cayley", "n=4 range=0,3"],
    ] {
        assert_eq!(stdout(&ordsemi(args)), stdout(&ordsemi(args)), "{args:?}");
    }
}

#[test]
fn cap_exceeded_exits_2() {
    let o = ordsemi(&["--cap", "10", "enumerate", WORKED]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_ordsemi"))
        .args(["enumerate", WORKED, "--count-only"])
        .env("ORDSEMI_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_input_exits_3() {
    assert_eq!(ordsemi(&["enumerate", "n=3 range=5"]).status.code(), Some(3));
    assert_eq!(ordsemi(&["enumerate", "n=3 range="]).status.code(), Some(3));
    // the worked example is not order-preserving
    let o = ordsemi(&["graph", WORKED, "--image", "0,4,0,8,4,4,4,2,4"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn graph_dot_for_worked_example() {
    let o = ordsemi(&["graph", WORKED, "--image", "0,4,0,8,4,4,4,2,4", "--full"]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("{ rank=same; u0; u2; u4; u6; u8 }"));
    assert!(dot.contains("{ rank=same; l0; l2; l4; l8 }"));
    assert_eq!(dot.matches(" -> l").count() - 3, 5);

    let path = scratch("worked.dot");
    let o = ordsemi(&["graph", WORKED, "--image", "0,4,0,8,4,4,4,2,4", "--full", "--dot", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "4 components\n");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), dot);
}

#[test]
fn kclasses_reports_lambda_sizes() {
    let out = stdout(&ordsemi(&["kclasses", "n=5 range=1,3"]));
    assert!(out.contains("λ3: size 2"));
    assert!(out.contains("lambda sizes expected [1, 1, 2, 1, 1] observed [1, 1, 2, 1, 1]: ok"));
}

#[test]
fn decide_mirror_case() {
    let o = ordsemi(&["--json", "decide", "n=3 range=1,2", "n=3 range=0,1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "isomorphic");
    assert_eq!(v["mirror_clause_used"], true);
    assert_eq!(v["witness"]["orientation"], "reversed");
}

#[test]
fn oracle_refusal_and_witness() {
    let o = ordsemi(&["--json", "oracle", "n=3 range=0,1", "n=3 range=0,2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["isomorphic"], false);

    let o = ordsemi(&["--json", "oracle", "n=3 range=1,2", "n=3 range=0,1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mapping"], serde_json::json!([3, 2, 1, 0]));
}

#[test]
fn verify_family_is_clean() {
    let o = ordsemi(&["verify", "--max-size", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("mismatches 0"));
}

#[test]
fn verify_budget_exceeded_exits_2() {
    let o = ordsemi(&["verify", "--max-size", "4", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_stored_mapping() {
    let (a, b) = ("n=3 range=1,2", "n=3 range=0,1");
    let good = scratch("good.json");
    std::fs::write(&good, r#"{"mapping":[3,2,1,0]}"#).unwrap();
    let o = ordsemi(&["verify", "--iso", good.to_str().unwrap(), a, b]);
    assert_eq!(o.status.code(), Some(0));

    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"mapping":[0,1,2,3]}"#).unwrap();
    let o = ordsemi(&["verify", "--iso", bad.to_str().unwrap(), a, b]);
    assert_eq!(o.status.code(), Some(1));
}
