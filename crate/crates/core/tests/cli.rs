use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn zignorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zignorm")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on standard output")
}

#[test]
fn validate_exit_codes() {
    assert_eq!(zignorm(&["validate", path(&fixture("surface.json"))]).status.code(), Some(0));
    assert_eq!(zignorm(&["validate", path(&fixture("syllepsis-sig.json"))]).status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(fixture("unit-word.json")).unwrap();
    let truncated = dir.path().join("truncated.json");
    std::fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    let out = zignorm(&["validate", path(&truncated)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["regular"][0] = v["singular"][0].clone();
    let invalid = dir.path().join("invalid.json");
    std::fs::write(&invalid, v.to_string()).unwrap();
    let out = zignorm(&["validate", path(&invalid)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid diagram"));
}

#[test]
fn normalise_unit_word() {
    let out = zignorm(&["normalise", path(&fixture("unit-word.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["format"], "zignorm/1");
    assert_eq!(v["normal_form"]["singular"].as_array().unwrap().len(), 1);
    assert_eq!(v["normaliser"]["monotone"], serde_json::json!([0]));
    assert_eq!(v["factorisations"], serde_json::json!([]));

    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.json");
    let out = zignorm(&["--strict-validate", "normalise", path(&fixture("unit-word.json")), "-o", path(&target)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(written, v);
}

#[test]
fn normalise_relative_to_legs() {
    let m = fixture("essential-identity.json");
    let out = zignorm(&[
        "normalise",
        path(&m),
        "--sink",
        path(&fixture("essential-identity-p.json")),
        path(&fixture("essential-identity-q.json")),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let diagram: Value = serde_json::from_str(&std::fs::read_to_string(&m).unwrap()).unwrap();
    let mut normal = v["normal_form"].clone();
    normal["format"] = "zignorm/1".into();
    assert_eq!(normal, diagram);
    assert_eq!(v["normaliser"]["monotone"], serde_json::json!([0]));
    assert_eq!(v["factorisations"].as_array().unwrap().len(), 2);

    let absolute = json(&zignorm(&["normalise", path(&m)]));
    assert_eq!(absolute["normal_form"]["singular"], serde_json::json!([]));
}

#[test]
fn oracle_matches_normalise() {
    for args in [
        vec![path(&fixture("unit-word.json")).to_string()],
        vec![path(&fixture("eckmann-hilton.json")).to_string()],
        vec![
            path(&fixture("collapse.json")).to_string(),
            "--sink".into(),
            path(&fixture("collapse-leg.json")).to_string(),
        ],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = zignorm(&[&["normalise"], &args[..]].concat());
        let o = zignorm(&[&["oracle-normalise"], &args[..]].concat());
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(a.stdout, o.stdout);
    }
}

#[test]
fn oracle_budget_exit_code() {
    let out = zignorm(&["oracle-normalise", path(&fixture("collapse.json")), "--max-nodes", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let out = zignorm(&["oracle-normalise", path(&fixture("syllepsis.json"))]);
    assert_eq!(out.status.code(), Some(3), "a 5-diagram exceeds the default dimension budget");
}

#[test]
fn typecheck_accepts_and_rejects() {
    let eh = fixture("eckmann-hilton.json");
    let out = zignorm(&["typecheck", path(&eh), "--signature", path(&fixture("eckmann-hilton-sig.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "accept");

    let mut sig: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("eckmann-hilton-sig.json")).unwrap()).unwrap();
    sig["generators"].as_array_mut().unwrap().retain(|g| g["name"] != "y");
    let dir = tempfile::tempdir().unwrap();
    let partial = dir.path().join("sig.json");
    std::fs::write(&partial, sig.to_string()).unwrap();
    let out = zignorm(&["typecheck", path(&eh), "--signature", path(&partial)]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["verdict"], "reject");
    assert_eq!(v["generator"], "y");
    assert!(v["address"].is_array());
}

#[test]
fn content_and_piece() {
    let out = zignorm(&["content", path(&fixture("surface.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 10);

    let eh = fixture("eckmann-hilton.json");
    let listing = String::from_utf8(zignorm(&["content", path(&eh)]).stdout).unwrap();
    let line = listing.lines().find(|l| l.ends_with(" x")).expect("x in the content");
    let address = line.trim_start_matches('[').split(']').next().unwrap();
    let out = zignorm(&["--strict-validate", "piece", path(&eh), "--address", address]);
    assert_eq!(out.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let piece = dir.path().join("piece.json");
    std::fs::write(&piece, &out.stdout).unwrap();
    assert_eq!(zignorm(&["validate", path(&piece)]).status.code(), Some(0));

    let out = zignorm(&["piece", path(&eh), "--address", "9,9,9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors() {
    assert_eq!(zignorm(&["normalise", "--no-such-flag", "x.json"]).status.code(), Some(64));
    assert_eq!(zignorm(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(zignorm(&[]).status.code(), Some(64));
    assert_eq!(zignorm(&["--help"]).status.code(), Some(0));
    assert_eq!(zignorm(&["validate", "/nonexistent/file.json"]).status.code(), Some(1));
}

#[test]
fn generated_sinks_are_deterministic_and_normalise() {
    let a = zignorm(&["--seed", "42", "generate", "--dim", "2"]);
    let b = zignorm(&["--seed", "42", "generate", "--dim", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let sink = dir.path().join("sink.json");
    std::fs::write(&sink, &a.stdout).unwrap();
    assert_eq!(zignorm(&["validate", path(&sink)]).status.code(), Some(0));
    let n = zignorm(&["--strict-validate", "normalise", path(&sink)]);
    assert_eq!(n.status.code(), Some(0));
    let o = zignorm(&["oracle-normalise", path(&sink)]);
    if o.status.code() == Some(0) {
        assert_eq!(n.stdout, o.stdout);
    } else {
        assert_eq!(o.status.code(), Some(3));
    }
}
