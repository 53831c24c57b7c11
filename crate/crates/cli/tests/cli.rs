use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_topogame"))
}

fn run(dir: &Path, args: &[&str]) -> Output {
    bin().current_dir(dir).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&o.stdout))
    })
}

/// Two-point discrete space and its Rothberger game at horizon 1.
fn two_point(dir: &Path, horizon: usize) {
    let o = run(dir, &["catalog", "--space", "discrete(2)"]);
    assert!(o.status.success());
    std::fs::write(dir.join("s.json"), &o.stdout).unwrap();
    write(
        dir,
        "g.json",
        &format!(r#"{{"kind": "Rothberger", "space_ref": "s.json", "one_pool": "derived", "horizon": {horizon}}}"#),
    );
}

#[test]
fn solve_two_point_rothberger() {
    let d = TempDir::new().unwrap();
    two_point(d.path(), 1);
    let o = run(d.path(), &["solve", "--game", "g.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["winner"], "One");
    assert_eq!(v["strategy"]["side"], "One");
}

#[test]
fn classify_singletons() {
    let d = TempDir::new().unwrap();
    two_point(d.path(), 1);
    write(d.path(), "c.json", r#"{"elements": [[0], [1]]}"#);
    let o = run(d.path(), &["classify", "--space", "s.json", "--cover", "c.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), r#"["K","O","R"]"#);
}

#[test]
fn certify_reports_status() {
    let d = TempDir::new().unwrap();
    two_point(d.path(), 2);
    write(d.path(), "two.json", r#"{"side": "Two", "kind": "rule", "name": "least_element", "params": {}}"#);
    let o = run(d.path(), &["certify", "--game", "g.json", "--strategy", "two.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "Certified");

    let o = run(d.path(), &["certify", "--game", "g.json", "--strategy", "two.json", "--horizon", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let v = stdout_json(&o);
    assert_eq!(v["result"], "counter_play");
}

#[test]
fn play_prints_transcript() {
    let d = TempDir::new().unwrap();
    two_point(d.path(), 2);
    write(d.path(), "one.json", r#"{"side": "One", "kind": "rule", "name": "constant_move", "params": {"index": 0}}"#);
    write(d.path(), "two.json", r#"{"side": "Two", "kind": "rule", "name": "least_element", "params": {}}"#);
    let o = run(d.path(), &["play", "--game", "g.json", "--strategy", "two.json", "one.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    let innings = v["transcript"]["innings"].as_array().unwrap();
    let last = innings.last().unwrap()["covered"].as_array().unwrap().len();
    assert_eq!(v["winner"], if last == 2 { "Two" } else { "One" });
    assert!((1..=2).contains(&innings.len()));
}

#[test]
fn dualize_writes_witness_map() {
    let d = TempDir::new().unwrap();
    two_point(d.path(), 1);
    write(
        d.path(),
        "po.json",
        r#"{"kind": "PointOpen", "space_ref": "s.json", "one_pool": "derived", "horizon": 1}"#,
    );
    write(d.path(), "tau.json", r#"{"side": "Two", "kind": "rule", "name": "minimal_open", "params": {}}"#);
    let o = run(
        d.path(),
        &["dualize", "--game", "po.json", "--pair", "point-open/rothberger", "--side", "two", "--strategy", "tau.json", "--out", "dual.json"],
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("dual.json")).unwrap()).unwrap();
    assert_eq!(v["dual_game"]["kind"], "Rothberger");
    assert_eq!(v["strategy"]["side"], "One");
    assert!(v["strategy"]["witness_map"].is_array() || v["strategy"]["witness_map"].is_object());

    let o = run(d.path(), &["dualize", "--game", "po.json", "--side", "one", "--strategy", "tau.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn extract_pointopen_tree() {
    let d = TempDir::new().unwrap();
    two_point(d.path(), 2);
    write(
        d.path(),
        "po.json",
        r#"{"kind": "PointOpen", "space_ref": "s.json", "one_pool": "derived", "horizon": 2}"#,
    );
    write(d.path(), "one.json", r#"{"side": "One", "kind": "rule", "name": "least_uncovered_point", "params": {}}"#);
    write(d.path(), "w.json", r#"{"elements": [[0], [1]], "factors": [[[0]], [[1]]]}"#);
    let o = run(d.path(), &["extract", "--game", "po.json", "--strategy", "one.json", "--cover", "w.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["covers"], true);
}

#[test]
fn extract_diagonal_selection() {
    let d = TempDir::new().unwrap();
    two_point(d.path(), 1);
    write(d.path(), "a.json", r#"{"elements": [[0], [1]]}"#);
    let o = run(d.path(), &["extract", "--space", "s.json", "--cover", "a.json", "--horizon", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert_eq!(v["picks"], serde_json::json!([[0], [1]]));
}

#[test]
fn exit_statuses() {
    let d = TempDir::new().unwrap();
    two_point(d.path(), 1);
    assert_eq!(run(d.path(), &["solve", "--game", "missing.json"]).status.code(), Some(2));
    write(d.path(), "bad.json", "{ not json");
    assert_eq!(run(d.path(), &["solve", "--game", "bad.json"]).status.code(), Some(2));
    assert_eq!(run(d.path(), &["frobnicate"]).status.code(), Some(2));
    write(
        d.path(),
        "big.json",
        r#"{"kind": "Rothberger", "space_ref": "s.json", "one_pool": "derived", "horizon": 2}"#,
    );
    let o = run(d.path(), &["solve", "--game", "big.json", "--budget", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn catalog_lists_builtins() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("fortissimo(N,c)"));
    assert!(text.contains("scattered_rank"));
}

fn without_elapsed(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(without_elapsed);
        }
        Value::Array(a) => a.iter_mut().for_each(without_elapsed),
        _ => {}
    }
}

#[test]
fn suite_passes_and_is_reproducible() {
    let d = TempDir::new().unwrap();
    let o = run(d.path(), &["suite", "--seed", "7", "--instances", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let mut a = stdout_json(&o);
    assert_eq!(a["pass"], true);
    for c in a["checks"].as_array().unwrap() {
        assert!(c["violations"].as_array().unwrap().is_empty(), "{c}");
    }
    let o = run(d.path(), &["suite", "--seed", "7", "--instances", "200", "--sequential"]);
    let mut b = stdout_json(&o);
    without_elapsed(&mut a);
    without_elapsed(&mut b);
    assert_eq!(a, b);
}
