use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_delpezzo"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.schema.json"));
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // the compiled schema borrows nothing from `raw` past this point
    let leaked: &'static Value = Box::leak(Box::new(raw));
    jsonschema::JSONSchema::compile(leaked).expect("schema compiles")
}

fn assert_valid(name: &str, out: &Output) -> Value {
    let value: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    let compiled = schema(name);
    if let Err(errors) = compiled.validate(&value) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{name} output fails its schema: {msgs:?}");
    }
    assert_eq!(value["schema_version"], 1);
    value
}

#[test]
fn roots_of_three_points() {
    let out = run(&["roots", "--points", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("type: A1 x A2"));
    assert!(text.contains("count: 8"));

    let v = assert_valid("classes", &run(&["roots", "--points", "3", "--format", "json"]));
    assert_eq!(v["count"], 8);
    assert_eq!(v["dynkin_type"], "A1 x A2");
}

#[test]
fn json_outputs_match_schemas() {
    for n in ["0", "4", "8"] {
        assert_valid("classes", &run(&["roots", "--points", n, "--format", "json"]));
        assert_valid("classes", &run(&["lines", "--points", n, "--format", "json"]));
    }
    let v = assert_valid("classes", &run(&["roots", "--p1xp1", "--format", "json"]));
    assert_eq!(v["dynkin_type"], "A1");
    for d in 1..=8 {
        assert_valid("pencils", &run(&["pencils", "--degree", &d.to_string(), "--format", "json"]));
    }
    let v = assert_valid("rank2", &run(&["rank2", "--format", "json"]));
    assert_eq!(v["count"], 13);
    let v = assert_valid("planes", &run(&["planes", "--tetrahedral", "--format", "json"]));
    assert_eq!(v["flip_exchanges_quadruples"], true);
    let out = run_with_stdin(
        &["model", "--spec", "-", "--format", "json"],
        r#"{"base": "V6", "base_degree": 6, "blowups": 3}"#,
    );
    assert!(out.status.success());
    let v = assert_valid("model", &out);
    assert_eq!(v["p"], 9);
    assert_eq!(v["delta_second"], "2A2");
}

#[test]
fn table_json_and_exit_code_agree() {
    let out = run(&["table", "--verify", "--format", "json"]);
    let v = assert_valid("table", &out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 40);
    assert_eq!(v["known"], 1);
    let success = v["success"].as_bool().unwrap();
    assert_eq!(out.status.code(), Some(if success { 0 } else { 1 }));
}

#[test]
fn row_ranges_restrict_the_audit() {
    let out = run(&["table", "--verify", "--rows", "1..24", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = assert_valid("table", &out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 24);
    assert_eq!(v["failed"], 0);

    let out = run(&["table", "--verify", "--rows", "40", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().clone();
    let records: Vec<_> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(records.len(), 1);
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    assert_eq!(&records[0][col("delta_prime_status")], "known");
    assert_eq!(records[0][col("table_sha256")].len(), 64);

    for bad in ["0..3", "5..2", "1..41", "x"] {
        assert_eq!(run(&["table", "--verify", "--rows", bad]).status.code(), Some(2), "{bad}");
    }
}

#[test]
fn six_pencils_form_a_triangle_in_dot() {
    let out = run(&["pencils", "--degree", "6", "--format", "dot"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph pencils_d6 {"));
    assert_eq!(dot.matches("[label=").count(), 3);
    assert_eq!(dot.matches(" -- ").count(), 3);
    assert!(dot.contains("\"(1, -1, -1)\""));
}

#[test]
fn outputs_are_deterministic() {
    let commands: &[&[&str]] = &[
        &["roots", "--points", "7", "--format", "json"],
        &["lines", "--points", "8"],
        &["table", "--verify", "--format", "csv"],
        &["table", "--verify", "--format", "json"],
        &["pencils", "--degree", "2", "--format", "dot"],
        &["rank2"],
        &["planes", "--tetrahedral"],
    ];
    for args in commands {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code(), "{args:?}");
    }
}

#[test]
fn invalid_input_exits_two_with_usage() {
    for args in [
        vec!["bogus"],
        vec!["roots", "--points", "9"],
        vec!["roots", "--points", "2", "--p1xp1"],
        vec!["table"],
        vec!["planes"],
        vec!["pencils", "--degree", "0"],
        vec!["lines", "--points", "3", "--frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains("Usage"), "{args:?}: {err}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn model_spec_diagnostics_name_the_problem() {
    let cases = [
        (r#"{"base": "P3", "base_degree": 8, "blowup": 7}"#, "blowup"),
        (r#"{"base": "P3", "base_degree": 8}"#, "blowups"),
        ("{\"base\": \"P3\",\n \"base_degree\": 8,\n \"blowups\": }", "line 3"),
        (r#"{"base": "P4", "base_degree": 8, "blowups": 1}"#, "base"),
        (r#"{"base": "V5", "base_degree": 4, "blowups": 0}"#, "base_degree"),
        (r#"{"base": "P3", "base_degree": 8, "blowups": 8}"#, "blowups"),
    ];
    for (input, needle) in cases {
        let out = run_with_stdin(&["model", "--spec", "-"], input);
        assert_eq!(out.status.code(), Some(2), "{input}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains(needle), "{input}: {err}");
    }
    let out = run(&["model", "--spec", "/nonexistent/spec.json"]);
    assert_eq!(out.status.code(), Some(2));
}
