use std::ffi::{CStr, CString};
use std::ptr;

use pisgenus_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { pisgenus_string_free(s) };
    out
}

fn instance(spec: &str) -> *mut PisgenusInstance {
    let c = CString::new(spec).unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { pisgenus_instance_new(c.as_ptr(), &mut inst) }, PisgenusStatus::Ok);
    inst
}

#[test]
fn graph_size_and_json() {
    let inst = instance("Z/4 x Z/4");
    let (mut v, mut e) = (0usize, 0usize);
    assert_eq!(unsafe { pisgenus_instance_size(inst, &mut v, &mut e) }, PisgenusStatus::Ok);
    assert_eq!((v, e), (7, 12));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pisgenus_instance_graph_json(inst, &mut s) }, PisgenusStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(doc["edges"].as_array().unwrap().len(), 12);
    assert_eq!(unsafe { pisgenus_instance_lattice_json(inst, &mut s) }, PisgenusStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(doc["ideals"].as_array().unwrap().len(), 9);
    unsafe { pisgenus_instance_free(inst) };
}

#[test]
fn error_codes_and_messages() {
    let c = CString::new("Z/12").unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { pisgenus_instance_new(c.as_ptr(), &mut inst) }, PisgenusStatus::Parse);
    assert!(inst.is_null());
    let msg = unsafe { CStr::from_ptr(pisgenus_last_error()) }.to_str().unwrap();
    assert!(msg.contains("prime power"));
    assert_eq!(unsafe { pisgenus_instance_new(ptr::null(), &mut inst) }, PisgenusStatus::NullArgument);
    let c = CString::new("GF(2) x GF(3)").unwrap();
    assert_eq!(unsafe { pisgenus_instance_new(c.as_ptr(), ptr::null_mut()) }, PisgenusStatus::NullArgument);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { pisgenus_instance_new(bad.as_ptr().cast(), &mut inst) }, PisgenusStatus::InvalidUtf8);
    assert_eq!(unsafe { pisgenus_instance_new(c.as_ptr(), &mut inst) }, PisgenusStatus::Ok);
    assert!(pisgenus_last_error().is_null());
    unsafe { pisgenus_instance_free(inst) };
    unsafe { pisgenus_instance_free(ptr::null_mut()) };
}

#[test]
fn bounds_certificate_round_trip() {
    let inst = instance("Z/8 x Z/4");
    let budget = pisgenus_budget_default();
    let mut b = PisgenusBounds::default();
    let mut cert = ptr::null_mut();
    assert_eq!(unsafe { pisgenus_genus_bounds(inst, &budget, &mut b, &mut cert) }, PisgenusStatus::Ok);
    assert_eq!((b.lower, b.upper, b.has_upper), (1, 1, 1));
    let cert = CString::new(take(cert)).unwrap();
    let mut graph = ptr::null_mut();
    unsafe { pisgenus_instance_graph_json(inst, &mut graph) };
    let graph = CString::new(take(graph)).unwrap();
    let mut checked = PisgenusBounds::default();
    assert_eq!(unsafe { pisgenus_check_certificate(graph.as_ptr(), cert.as_ptr(), &mut checked) }, PisgenusStatus::Ok);
    assert_eq!((checked.lower, checked.upper), (1, 1));

    let forged = CString::new(r#"{"lower": 2, "upper": null, "lower_certificate": {"kind": "trivial"}}"#).unwrap();
    assert_eq!(
        unsafe { pisgenus_check_certificate(graph.as_ptr(), forged.as_ptr(), &mut checked) },
        PisgenusStatus::CertificateRejected
    );
    unsafe { pisgenus_instance_free(inst) };
}

#[test]
fn verify_verdict() {
    let inst = instance("GF(2) x Z/8");
    let mut v = PisgenusVerdict::Mismatch;
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { pisgenus_verify(inst, ptr::null(), &mut v, &mut report) }, PisgenusStatus::Ok);
    assert_eq!(v, PisgenusVerdict::Confirmed);
    let doc: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(doc["predicted"], "Planar");
    unsafe { pisgenus_instance_free(inst) };

    let inst = instance("GF(2)");
    assert_eq!(unsafe { pisgenus_verify(inst, ptr::null(), &mut v, ptr::null_mut()) }, PisgenusStatus::Unsupported);
    unsafe { pisgenus_instance_free(inst) };
}

#[test]
fn header_declares_exports() {
    let header = include_str!("../include/pisgenus.h");
    for f in [
        "pisgenus_budget_default",
        "pisgenus_last_error",
        "pisgenus_string_free",
        "pisgenus_instance_new",
        "pisgenus_instance_free",
        "pisgenus_instance_size",
        "pisgenus_instance_graph_json",
        "pisgenus_instance_lattice_json",
        "pisgenus_genus_bounds",
        "pisgenus_verify",
        "pisgenus_check_certificate",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct PisgenusInstance PisgenusInstance;"));
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "pisgenus.h"
int main(void) {
    PisgenusInstance *inst = NULL;
    if (pisgenus_instance_new("Z/4 x Z/4", &inst) != PISGENUS_STATUS_OK) return 1;
    size_t v = 0, e = 0;
    pisgenus_instance_size(inst, &v, &e);
    PisgenusBudget b = pisgenus_budget_default();
    PisgenusBounds g;
    if (pisgenus_genus_bounds(inst, &b, &g, NULL) != PISGENUS_STATUS_OK) return 2;
    printf("%zu %zu %llu %llu\n", v, e, (unsigned long long)g.lower, (unsigned long long)g.upper);
    pisgenus_instance_free(inst);
    if (pisgenus_instance_new("Z/12", &inst) != PISGENUS_STATUS_PARSE) return 3;
    printf("%s\n", pisgenus_last_error());
    return 0;
}
"#;

/// Builds a C program against the header and the static library, when a C compiler is around.
#[test]
fn c_program_links() {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = std::env::current_exe().unwrap();
    let deps = exe.parent().unwrap();
    let lib = [deps.join("libpisgenus_ffi.a"), deps.parent().unwrap().join("libpisgenus_ffi.a")]
        .into_iter()
        .find(|p| p.exists())
        .unwrap_or_default();
    if !lib.exists() || std::process::Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let bin = dir.path().join("main");
    let status = std::process::Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(root.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = std::process::Command::new(&bin).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("7 12 0 0\n"), "{text}");
    assert!(text.contains("prime power"));
}
