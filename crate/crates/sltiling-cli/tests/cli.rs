use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sltiling")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn s(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn selftest_reproduces_every_example() {
    let o = run(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(!out.contains("FAIL"));
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 15);
}

#[test]
fn phi_renders_the_example_block() {
    let (g, d) = (data("gamma.json"), data("delta.json"));
    let o = run(&["phi", "--gamma", s(&g), "--delta", s(&d), "--window", "1", "1", "3", "3", "--render"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), " 1  3  6\n 1  1  1\n-4 -3 -2\n");
    let o = run(&["phi", "--gamma", s(&g), "--delta", s(&d), "--window", "1", "1", "3", "3"]);
    let v = json(&o);
    assert_eq!(v["window"]["entries"][0], serde_json::json!(["1", "3", "6"]));
}

#[test]
fn corrupted_window_names_the_minor() {
    let o = run(&["validate", "--tiling", s(&data("corrupted_window.json"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("3x3 minor at (1,1) has determinant -8"), "{}", stderr(&o));
    assert_eq!(json(&o)["valid"], Value::Bool(false));
}

#[test]
fn corrupted_presented_tiling_fails() {
    let g = data("skew7.json");
    let t = stdout(&run(&["phi", "--gamma", s(&g), "--delta", s(&g)]));
    let mut v: Value = serde_json::from_str(&t).unwrap();
    v["central"][0][1] = Value::String("2".into());
    let p = tmp("bad_tiling.json", &v.to_string());
    let o = run(&["validate", "--tiling", s(&p)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("determinant"));
}

#[test]
fn tiling_round_trip_through_psi() {
    let g = data("skew7.json");
    let t = stdout(&run(&["phi", "--gamma", s(&g), "--delta", s(&g)]));
    let tp = tmp("s7_tiling.json", &t);
    let o = run(&["validate", "--tiling", s(&tp), "--window", "8"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let pair = json(&run(&["psi", "--tiling", s(&tp)]));
    let gp = tmp("s7_gamma.json", &pair["gamma"].to_string());
    let dp = tmp("s7_delta.json", &pair["delta"].to_string());
    let again = stdout(&run(&["phi", "--gamma", s(&gp), "--delta", s(&dp), "--window", "-3", "-3", "8", "8"]));
    let orig = stdout(&run(&["phi", "--gamma", s(&g), "--delta", s(&g), "--window", "-3", "-3", "8", "8"]));
    let w = |x: &str| serde_json::from_str::<Value>(x).unwrap()["window"].clone();
    assert_eq!(w(&again), w(&orig));
    let e = json(&run(&["entry", "--tiling", s(&tp), "--i", "2", "--j", "-1"]));
    assert_eq!(e["value"], w(&orig)["entries"][5][2]);
}

#[test]
fn output_is_byte_stable() {
    let g = data("skew7.json");
    let a = run(&["phi", "--gamma", s(&g), "--delta", s(&g), "--window", "0", "0", "5", "5"]);
    let b = run(&["phi", "--gamma", s(&g), "--delta", s(&g), "--window", "0", "0", "5", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let keys: Vec<String> = json(&a).as_object().unwrap().keys().cloned().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn enumerate_streams_friezes_and_summary() {
    let o = run(&["enumerate", "--k", "2", "--n", "6", "--bound", "4", "--jobs", "1"]);
    assert!(o.status.success());
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 15);
    let summary = &lines[14]["summary"];
    assert_eq!(summary["count"], 14);
    assert_eq!(summary["completeness"], "exact");
    assert!(lines[..14].iter().all(|f| f["n"] == 6 && f["k"] == 2));
    let q = run(&["enumerate", "--k", "3", "--n", "6", "--bound", "3", "--by-quiddity"]);
    let last = stdout(&q).lines().last().unwrap().to_string();
    assert!(last.contains("\"completeness\":\"bounded\""), "{last}");
}

#[test]
fn frieze_commands() {
    let f = stdout(&run(&["pluecker", "--matrix", s(&data("grassmann26.json"))]));
    let fp = tmp("f26.json", &f);
    assert!(run(&["validate", "--frieze", s(&fp)]).status.success());
    let g = json(&run(&["gale", "--frieze", s(&fp)]));
    assert_eq!(g["k"], 4);
    let gp = tmp("g26.json", &g.to_string());
    let back = stdout(&run(&["gale", "--frieze", s(&gp)]));
    assert_eq!(back, f);
    let q = json(&run(&["quiddity", "--frieze", s(&data("ones58.json"))]));
    assert_eq!(q["positive"], false);
    assert_eq!(q["quiddity"][3], serde_json::json!(["1", "0", "0", "1"]));
    let r = stdout(&run(&["render", "--frieze", s(&fp)]));
    assert_eq!(r.lines().count(), 3 + 2 + 2);
}

#[test]
fn bad_frieze_is_reported() {
    let p = tmp("bad_frieze.json", r#"{"k": 2, "width": 2, "n": 5, "rows": [[1, 3, 1, 2, 2], [2, 2, 1, 3, 2]]}"#);
    let o = run(&["validate", "--frieze", s(&p)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("minor at"));
}

#[test]
fn join_gives_a_valid_closed_path() {
    let o = run(&["join", "--gamma", s(&data("join_gamma.json")), "--delta", s(&data("join_delta.json")), "--m", "3", "--n", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let p = tmp("joined.json", &stdout(&o));
    assert!(run(&["validate", "--path", s(&p)]).status.success());
    assert_eq!(json(&o)["closure"]["kind"], "skew_periodic");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["phi", "--gamma", "x"]).status.code(), Some(2));
    let junk = tmp("junk.json", "{not json");
    assert_eq!(run(&["validate", "--path", s(&junk)]).status.code(), Some(2));
    let bad = tmp("bad_path.json", r#"{"columns": [[1, 0], [0, 2]]}"#);
    let o = run(&["validate", "--path", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("window at index 1 has determinant 2"));
    let g = data("gamma.json");
    let t = tmp("block.json", &stdout(&run(&["phi", "--gamma", s(&g), "--delta", s(&data("delta.json"))])));
    let o = run(&["entry", "--tiling", s(&t), "--i", "9", "--j", "9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error:"));
}
