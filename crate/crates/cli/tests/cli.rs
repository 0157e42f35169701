use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_towerlab"))
        .args(args)
        .env_remove("TOWERLAB_MAX_ORDER")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("towerlab-cli-{}-{name}", std::process::id()))
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["group", "T"]).status.code(), Some(0));
    assert_eq!(run(&["group", "D7"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["tower", "D8", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["tower"]).status.code(), Some(2));

    let o = run(&["survey", "--max-order", "60"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
}

#[test]
fn trivial_group_is_complete() {
    let v: Value = serde_json::from_str(&stdout(&run(&["group", "T", "--json"]))).unwrap();
    assert_eq!(v["order"], 1);
    assert_eq!(v["completeness"]["complete"], true);
    let text = stdout(&run(&["group", "T"]));
    assert!(text.contains("order: 1") && text.contains("complete: true"));
}

#[test]
fn boxed_height_prints_the_height() {
    assert_eq!(stdout(&run(&["boxed-height", "--depth", "3", "--classes", "all-one"])), "3\n");
}

#[test]
fn env_cap_applies() {
    let o = Command::new(env!("CARGO_BIN_EXE_towerlab"))
        .args(["aut", "D8"])
        .env("TOWERLAB_MAX_ORDER", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let o = Command::new(env!("CARGO_BIN_EXE_towerlab"))
        .args(["aut", "D8"])
        .env("TOWERLAB_MAX_ORDER", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn file_specs_and_out() {
    let path = scratch("q8.json");
    let q8 = towerlab::construct_named("Q8").unwrap();
    std::fs::write(&path, q8.to_json()).unwrap();
    let spec = format!("file:{}", path.display());
    let from_file: Value = serde_json::from_str(&stdout(&run(&["tower", &spec, "--json"]))).unwrap();
    let named: Value = serde_json::from_str(&stdout(&run(&["tower", "Q8", "--json"]))).unwrap();
    assert_eq!(from_file["blocks"], named["blocks"]);

    let out = scratch("out.json");
    let o = run(&["group", "S3", "--json", "--out", out.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["order"], 6);

    std::fs::write(&path, "{\"order\": 2, \"table\": [[0, 1], [1, 1]]}").unwrap();
    assert_eq!(run(&["group", &spec]).status.code(), Some(1));
    let _ = std::fs::remove_file(path);
    let _ = std::fs::remove_file(out);
}

#[test]
fn normtower_and_fact_check() {
    // in S4, elements 1 and 2 are transpositions sharing a point
    let v: Value = serde_json::from_str(&stdout(&run(&["normtower", "--ambient", "S4", "--sub", "1", "--json"]))).unwrap();
    assert_eq!(v["stage_orders"][0], 2);
    assert_eq!(v["ambient_order"], 24);
    let v: Value = serde_json::from_str(&stdout(&run(&["fact-check", "A4", "--json"]))).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(run(&["fact-check", "D8"]).status.code(), Some(1));
    assert_eq!(run(&["normtower", "--ambient", "S3", "--sub", "9"]).status.code(), Some(1));
}

#[test]
fn graph_aut_of_a_file() {
    let path = scratch("path.json");
    std::fs::write(&path, r#"{"vertices": 3, "colors": [0, 0, 0], "edges": [[0, 1], [1, 2]]}"#).unwrap();
    let v: Value = serde_json::from_str(&stdout(&run(&["graph-aut", path.to_str().unwrap(), "--json"]))).unwrap();
    assert_eq!(v["order"], 2);
    assert_eq!(v["rigid"], false);
    std::fs::write(&path, r#"{"vertices": 2, "edges": [[0, 0]]}"#).unwrap();
    assert_eq!(run(&["graph-aut", path.to_str().unwrap()]).status.code(), Some(1));
    let _ = std::fs::remove_file(path);
}

#[test]
fn text_and_json_agree() {
    let v: Value = serde_json::from_str(&stdout(&run(&["wall", "--depth", "3", "--wall-class", "1", "--json"]))).unwrap();
    let text = stdout(&run(&["wall", "--depth", "3", "--wall-class", "1"]));
    assert!(text.contains(&format!("ambient order: {}", v["ambient_order"])));
    assert!(text.contains(&format!("W order: {}", v["w_order"])));
    assert!(text.contains(&format!("height: {}", v["height"])));

    let rows: Value = serde_json::from_str(&stdout(&run(&["survey", "--max-order", "8", "--json"]))).unwrap();
    let table = stdout(&run(&["survey", "--max-order", "8"]));
    assert_eq!(table.lines().count(), rows.as_array().unwrap().len() + 1);
    let d8 = table.lines().find(|l| l.starts_with("D8 ")).unwrap();
    assert!(d8.contains("ω+1"));
}
