use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pisgenus")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn ideals_listing() {
    let doc = stdout_json(&run(&["ideals", "Z/16"]));
    assert_eq!(doc["ideals"].as_array().unwrap().len(), 5);
    let doc = stdout_json(&run(&["ideals", "GF(2)[x,y]/(x2,y2)"]));
    assert_eq!(doc["ideals"].as_array().unwrap().len(), 7);
    let out = run(&["ideals", "Z/12"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("12 is not a prime power"));
}

#[test]
fn graph_exports() {
    let doc = stdout_json(&run(&["graph", "GF(2) x GF(3)", "--format", "json"]));
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 2);
    assert!(doc["edges"].as_array().unwrap().is_empty());

    let out = run(&["graph", "Z/4 x Z/4", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph \"Z/4 x Z/4\" {"));
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 7);
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 12);

    let doc = stdout_json(&run(&["graph", "GF(2)"]));
    assert!(doc["vertices"].as_array().unwrap().is_empty());
    assert!(!run(&["graph", "GF(2)", "--format", "svg"]).status.success());
}

#[test]
fn genus_of_files_and_rings() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = dir.path().join("k5.txt");
    let edges: String = (0..5).flat_map(|u| (u + 1..5).map(move |v| format!("{u} {v}\n"))).collect();
    std::fs::write(&k5, format!("# K5\n{edges}")).unwrap();
    let cert = dir.path().join("k5.json");
    let doc = stdout_json(&run(&["genus", "--graph", path(&k5), "--cert-out", path(&cert)]));
    assert_eq!((doc["lower"].as_u64(), doc["upper"].as_u64()), (Some(1), Some(1)));
    assert!(run(&["verify-certificate", path(&k5), path(&cert)]).status.success());
    assert!(run(&["--verify-certificate", path(&k5), path(&cert)]).status.success());

    let doc = stdout_json(&run(&["genus", "Z/32 x Z/4"]));
    assert_eq!((doc["lower"].as_u64(), doc["upper"].as_u64()), (Some(2), Some(2)));
}

#[test]
fn unknown_upper_is_not_an_error() {
    // zero nodes: the lower bound stands alone
    let out = run(&["genus", "GF(2) x GF(3) x GF(5) x GF(7)", "--budget-nodes", "0", "--budget-ms", "1"]);
    let doc = stdout_json(&out);
    assert!(doc["lower"].as_u64().unwrap() >= 2);
}

#[test]
fn forged_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let out = run(&["graph", "Z/8 x Z/4"]);
    std::fs::write(&graph, &out.stdout).unwrap();
    let cert = dir.path().join("c.json");
    std::fs::write(&cert, r#"{"lower": 0, "upper": 0, "lower_certificate": {"kind": "trivial"},
        "upper_certificate": {"rotation": [], "faces": 0}}"#).unwrap();
    let out = run(&["verify-certificate", path(&graph), path(&cert)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_and_suite() {
    let out = run(&["verify", "Z/16 x Z/4", "--json"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["predicted"], "Two");
    assert_eq!(doc["verdict"], "confirmed");
    assert_eq!(doc["digests"]["lower"].as_str().unwrap().len(), 64);

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "[]").unwrap();
    let out = run(&["suite", path(&empty)]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);

    let manifest = dir.path().join("m.json");
    std::fs::write(
        &manifest,
        r#"[{"ring": "GF(2) x Z/8", "expected": "Planar"}, {"ring": "Z/8 x Z/4", "expected": "One", "budget": {"nodes": 200000}}]"#,
    )
    .unwrap();
    let report = dir.path().join("out.json");
    let out = run(&["suite", path(&manifest), "--jobs", "2", "--cert-out", path(&report)]);
    assert!(out.status.success());
    let outcomes: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(outcomes.as_array().unwrap().len(), 2);
}

#[test]
fn mismatch_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("m.json");
    std::fs::write(&manifest, r#"[{"ring": "GF(2) x Z/8", "expected": "Two"}]"#).unwrap();
    assert_eq!(run(&["suite", path(&manifest)]).status.code(), Some(1));
    assert!(!run(&["suite", "/nonexistent/manifest.json"]).status.success());
}

#[test]
fn output_is_deterministic() {
    let a = run(&["genus", "Z/8 x Z/4", "--seed", "3"]);
    let b = run(&["genus", "Z/8 x Z/4", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}
