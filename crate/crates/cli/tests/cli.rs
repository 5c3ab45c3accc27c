use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command as Process, Output, Stdio};

use clap::ValueEnum;
use polystrata_cli::{digest, fixtures, run, Command, Options};
use serde_json::{json, Value};

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas")
}

fn validator(name: &str) -> jsonschema::Validator {
    let text = fs::read_to_string(schema_dir().join(format!("{name}.schema.json"))).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    jsonschema::validator_for(&schema).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn assert_valid(v: &jsonschema::Validator, instance: &Value, what: &str) {
    let errors: Vec<String> = v
        .iter_errors(instance)
        .map(|e| format!("{} at {}", e, e.instance_path))
        .collect();
    assert!(errors.is_empty(), "{what}: {errors:#?}");
}

fn cli(args: &[&str]) -> Output {
    Process::new(env!("CARGO_BIN_EXE_polystrata"))
        .args(args)
        .output()
        .unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn every_command_has_a_schema() {
    let files: BTreeSet<String> = fs::read_dir(schema_dir())
        .unwrap()
        .map(|e| {
            e.unwrap()
                .file_name()
                .to_string_lossy()
                .trim_end_matches(".schema.json")
                .to_string()
        })
        .collect();
    let mut expected: BTreeSet<String> =
        Command::value_variants().iter().map(|c| c.name()).collect();
    expected.insert("report".into());
    assert_eq!(files, expected);
}

#[test]
fn fixture_payloads_match_their_schemas() {
    let report_schema = validator("report");
    for f in fixtures::all() {
        let r = run(f.command, &f.input, &Options::default())
            .unwrap_or_else(|e| panic!("{}: {:?}", f.name, e.error));
        assert_valid(&validator(&f.command.name()), &r.payload, f.name);
        assert_valid(&report_schema, &serde_json::to_value(&r).unwrap(), f.name);
    }
    let listing = run(Command::Fixtures, &json!({}), &Options::default()).unwrap();
    assert_valid(&validator("fixtures"), &listing.payload, "fixtures");
}

#[test]
fn error_reports_match_the_report_schema() {
    let report_schema = validator("report");
    let cases = [
        (
            Command::Delaunay,
            json!({ "g": 2, "matrix": [["1", "2"], ["2", "1"]] }),
            "invalid_input",
        ),
        (Command::Snf, json!({ "matrix": "nope" }), "invalid_input"),
        (
            Command::Gluing,
            json!({ "g": 2, "cells": [
                { "id": "a", "vertices": [[0, 0], [2, 0], [0, 2]] },
                { "id": "b", "vertices": [[1, 0], [3, 0], [1, 2]] }
            ] }),
            "complex_violation",
        ),
    ];
    for (cmd, input, code) in cases {
        let e = run(cmd, &input, &Options::default()).expect_err("input is rejected");
        assert_eq!(e.error.code, code, "{}", e.error.message);
        assert_eq!(e.exit_code, 1);
        assert_valid(&report_schema, &serde_json::to_value(&e).unwrap(), code);
    }
}

#[test]
fn exit_codes() {
    let ok = cli(&["delaunay", "--fixture", "a2-form"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(report(&ok)["payload"]["cells"].as_array().unwrap().len(), 2);

    let bad_json = cli(&["snf", "--json", "{not json"]);
    assert_eq!(bad_json.status.code(), Some(1));
    assert_eq!(report(&bad_json)["error"]["code"], "invalid_input");

    let unknown = cli(&["snf", "--fixture", "no-such-fixture"]);
    assert_eq!(unknown.status.code(), Some(1));

    let indefinite = cli(&[
        "delaunay",
        "--json",
        r#"{"g":2,"matrix":[["1","2"],["2","1"]]}"#,
    ]);
    assert_eq!(indefinite.status.code(), Some(1));

    let skew = r#"{"g":2,"matrix":[["1","10"],["10","101"]]}"#;
    let window = cli(&["delaunay", "--json", skew, "--window", "2"]);
    assert_eq!(window.status.code(), Some(2));
    assert_eq!(report(&window)["error"]["code"], "window_exceeded");
    assert_eq!(
        cli(&["delaunay", "--json", skew, "--window", "4096"])
            .status
            .code(),
        Some(0)
    );

    let limited = cli(&[
        "triangulations",
        "--fixture",
        "hexagon",
        "--max-points",
        "3",
    ]);
    assert_eq!(limited.status.code(), Some(2));
    assert_eq!(report(&limited)["error"]["code"], "size_limit");
}

#[test]
fn flags_are_range_checked() {
    for args in [
        &["delaunay", "--fixture", "a2-form", "--window", "0"][..],
        &["delaunay", "--fixture", "a2-form", "--window", "5000"],
        &[
            "idp",
            "--fixture",
            "hypersimplex-2-4",
            "--degree-bound",
            "0",
        ],
        &["gl-equiv", "--fixture", "a2-pair", "--word-bound", "13"],
        &["delaunay", "--fixture", "a2-form", "--json", "{}"],
        &["no-such-command", "--json", "{}"],
    ] {
        let out = cli(args);
        assert!(!out.status.success(), "{args:?}");
        assert!(out.stdout.is_empty());
    }
    assert!(!cli(&["snf"]).status.success());
}

#[test]
fn input_sources_and_output_file() {
    let input = r#"{"matrix": [[2, 4], [6, 8]]}"#;
    let inline = report(&cli(&["snf", "--json", input]));
    assert_eq!(inline["payload"]["invariant_factors"], json!(["2", "4"]));

    let dir = std::env::temp_dir().join(format!("polystrata-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("in.json");
    fs::write(&path, input).unwrap();
    let from_file = report(&cli(&["snf", "--input", path.to_str().unwrap()]));
    assert_eq!(from_file["payload"], inline["payload"]);
    assert_eq!(from_file["input_digest"], inline["input_digest"]);

    let mut child = Process::new(env!("CARGO_BIN_EXE_polystrata"))
        .args(["snf", "-i", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    let piped = child.wait_with_output().unwrap();
    assert_eq!(report(&piped)["payload"], inline["payload"]);

    let out_path = dir.join("out.json");
    let written = cli(&["snf", "--json", input, "--out", out_path.to_str().unwrap()]);
    assert!(written.status.success());
    assert!(written.stdout.is_empty());
    let saved: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(saved["payload"], inline["payload"]);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn digest_ignores_formatting_and_key_order() {
    let a: Value = serde_json::from_str(r#"{"r": 2, "vectors": [[1, 0], [1, 2]]}"#).unwrap();
    let b: Value = serde_json::from_str("{\n  \"vectors\": [[1,0],[1,2]],\n  \"r\": 2\n}").unwrap();
    assert_eq!(digest(&a), digest(&b));
    assert_ne!(
        digest(&a),
        digest(&json!({ "r": 2, "vectors": [[1, 0], [1, 3]] }))
    );
    assert_eq!(digest(&a).len(), 64);
}

#[test]
fn documented_payloads() {
    let secondary = run(
        Command::Secondary,
        &json!({ "points": [[0], [1], [2]] }),
        &Options::default(),
    )
    .unwrap();
    let mut gkz: Vec<Value> = secondary.payload["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.get("gkz").cloned().unwrap_or_else(|| v.clone()))
        .collect();
    gkz.sort_by_key(|v| v.to_string());
    assert_eq!(gkz, vec![json!(["1", "2", "1"]), json!(["2", "0", "2"])]);

    let nested = fixtures::get("nested-triangles").unwrap();
    let check = run(nested.command, &nested.input, &Options::default()).unwrap();
    assert_eq!(check.payload["regular"], json!(false));
}
