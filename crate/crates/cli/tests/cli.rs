use std::process::{Command, Output};

use serde_json::Value;

fn cinf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cinf"))
        .args(args)
        .env_remove("CINF_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = cinf(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

fn json_of(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout_of(&full)).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

#[test]
fn known_values() {
    assert_eq!(stdout_of(&["derive", "2122"]), "12");
    assert_eq!(stdout_of(&["encode", "21221211221"]), "2110|1022");
    assert_eq!(stdout_of(&["frontier", "theta", "2122"]), "1221");
    assert_eq!(stdout_of(&["frontier", "theta", "2122", "--mode", "recursive"]), "1221");
    assert_eq!(stdout_of(&["graph", "count", "2122"]), "4");
    assert_eq!(stdout_of(&["graph", "length", "2122"]), "7");
    assert_eq!(stdout_of(&["minword", "2122"]), "2121122");
    assert_eq!(stdout_of(&["height", "1122"]), "3");
}

#[test]
fn decode_inverts_encode() {
    for w in stdout_of(&["enumerate", "9"]).lines() {
        let rep = stdout_of(&["encode", w]);
        assert_eq!(stdout_of(&["decode", &rep]), w);
        let (l, r) = rep.split_once('|').unwrap();
        assert_eq!(stdout_of(&["decode", "--left", l, "--right", r]), w);
    }
}

#[test]
fn json_output_parses() {
    assert_eq!(json_of(&["derive", "2122"]), "12");
    assert_eq!(json_of(&["encode", "21221211221"])["left"], "2110");
    assert_eq!(json_of(&["graph", "count", "2122"]), 4);
    assert_eq!(json_of(&["graph", "paths", "2122"]).as_array().unwrap().len(), 4);
    assert_eq!(json_of(&["enumerate", "4"]).as_array().unwrap().len(), 10);
    assert_eq!(json_of(&["graph", "succ", "ε"]).as_array().unwrap().len(), 2);
    assert_eq!(json_of(&["tower", "1122"])["height"], 3);
    let commands: &[&[&str]] = &[
        &["rle", "2112"],
        &["decode", "2110|1022"],
        &["minword", "2122", "--double"],
        &["primitives", "12"],
        &["classify", "1221"],
        &["extend", "2"],
        &["minpart", "21221211221"],
        &["graph", "letters", "2122"],
        &["graph", "stats", "5", "--letters"],
        &["graph", "dot", "2"],
        &["kolakoski", "10"],
        &["probe", "glueing", "1", "22"],
        &["probe", "reach", "2", "3"],
        &["probe", "contain", "2", "4"],
        &["probe", "weakley", "8"],
        &["verify", "--n-max", "8", "--k-max", "4"],
    ];
    for args in commands {
        json_of(args);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(cinf(&["derive", "111"]).status.code(), Some(1));
    assert_eq!(cinf(&["decode", "111|222"]).status.code(), Some(1));
    assert_eq!(cinf(&["decode", "21|1"]).status.code(), Some(2));
    assert_eq!(cinf(&["derive", "13"]).status.code(), Some(2));
    assert_eq!(cinf(&["graph", "count", "102"]).status.code(), Some(2));
    assert_eq!(cinf(&["frobnicate"]).status.code(), Some(2));
    let err = cinf(&["derive", "111"]);
    assert!(String::from_utf8_lossy(&err.stderr).starts_with("error: "));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tables.bin");
    let p = path.to_str().unwrap();
    assert_eq!(cinf(&["--cache", p, "cache", "info"]).status.code(), Some(1));
    stdout_of(&["--cache", p, "cache", "build", "10"]);
    assert_eq!(json_of(&["--cache", p, "cache", "info"])["max_len"], 10);
    assert_eq!(stdout_of(&["--cache", p, "graph", "count", "2122"]), "4");

    // The environment variable wins over the flag.
    let env_path = dir.path().join("env.bin");
    let out = Command::new(env!("CARGO_BIN_EXE_cinf"))
        .args(["--cache", p, "graph", "count", "121111"])
        .env("CINF_CACHE", &env_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(env_path.exists());
}
