//! Exercises the C ABI end to end: handle lifecycle, status codes, JSON
//! payloads, the last-error channel, and — via a real `cc` invocation —
//! that the generated header compiles and links as C.

use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use adsp_ffi::{
    adsp_construct, adsp_decide, adsp_instance_free, adsp_instance_parse, adsp_last_error,
    adsp_rigid, adsp_roots, adsp_string_free, adsp_verify, AdspInstance,
};

const TRIPLE: &str = r#"{
  "classes": [
    {"spectrum": [{"value": "1", "blocks": [1]}, {"value": "-1", "blocks": [1]}]},
    {"spectrum": [{"value": "1", "blocks": [1]}, {"value": "-1", "blocks": [1]}]},
    {"spectrum": [{"value": "1", "blocks": [1]}, {"value": "-1", "blocks": [1]}]}
  ]
}"#;

fn last_error() -> String {
    unsafe { CStr::from_ptr(adsp_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn parse_ok(json: &str) -> *mut AdspInstance {
    let c = CString::new(json).unwrap();
    let mut handle: *mut AdspInstance = ptr::null_mut();
    let status = unsafe { adsp_instance_parse(c.as_ptr(), &mut handle) };
    assert_eq!(status, 0, "parse failed: {}", last_error());
    assert!(!handle.is_null());
    handle
}

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { adsp_string_free(p) };
    s
}

#[test]
fn decide_and_rigid() {
    let h = parse_ok(TRIPLE);
    let mut doc: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { adsp_decide(h, 0, 0, &mut doc) }, 0);
    let doc = take_string(doc);
    assert!(doc.contains(r#""member":true"#), "{doc}");
    assert!(doc.contains(r#""root_class":"real""#), "{doc}");
    assert!(doc.contains(r#""solution_count":"unique""#), "{doc}");
    assert_eq!(last_error(), "");

    let mut rigid = -1;
    assert_eq!(unsafe { adsp_rigid(h, 0, &mut rigid) }, 0);
    assert_eq!(rigid, 1);
    unsafe { adsp_instance_free(h) };
}

#[test]
fn construct_then_verify() {
    let h = parse_ok(TRIPLE);
    let mut sol: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { adsp_construct(h, 0, &mut sol) }, 0);
    let sol = take_string(sol);
    assert!(sol.starts_with(r#"{"matrices":"#), "{sol}");

    let c_sol = CString::new(sol).unwrap();
    let mut report: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { adsp_verify(h, c_sol.as_ptr(), &mut report) }, 0);
    let report = take_string(report);
    assert_eq!(
        report,
        r#"{"classes_ok":true,"sum_zero":true,"irreducible":true}"#
    );
    unsafe { adsp_instance_free(h) };
}

#[test]
fn roots_summary() {
    let h = parse_ok(TRIPLE);
    let mut doc: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { adsp_roots(h, 0, &mut doc) }, 0);
    let doc = take_string(doc);
    assert!(doc.contains(r#""admissible_roots":1"#), "{doc}");
    unsafe { adsp_instance_free(h) };
}

#[test]
fn parse_rejects_garbage() {
    let c = CString::new("definitely not json").unwrap();
    let mut handle: *mut AdspInstance = ptr::null_mut();
    assert_eq!(unsafe { adsp_instance_parse(c.as_ptr(), &mut handle) }, 1);
    assert!(handle.is_null());
    assert!(last_error().contains("bad instance file"), "{}", last_error());
}

#[test]
fn null_arguments_are_invalid_input() {
    let mut handle: *mut AdspInstance = ptr::null_mut();
    assert_eq!(unsafe { adsp_instance_parse(ptr::null(), &mut handle) }, 1);
    assert!(last_error().contains("null pointer"), "{}", last_error());

    let mut doc: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { adsp_decide(ptr::null(), 0, 0, &mut doc) }, 1);
    assert!(doc.is_null());

    let h = parse_ok(TRIPLE);
    assert_eq!(unsafe { adsp_decide(h, 0, 0, ptr::null_mut()) }, 1);
    unsafe { adsp_instance_free(h) };
}

#[test]
fn bad_mode_and_mismatched_mode() {
    let h = parse_ok(TRIPLE);
    let mut doc: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { adsp_decide(h, 9, 0, &mut doc) }, 1);
    assert!(last_error().contains("mode"), "{}", last_error());
    // the nilpotent classifier refuses a tuple with nonzero weight
    assert_eq!(unsafe { adsp_decide(h, 2, 0, &mut doc) }, 1);
    assert!(doc.is_null());
    unsafe { adsp_instance_free(h) };
}

#[test]
fn box_cap_propagates() {
    let h = parse_ok(TRIPLE);
    let mut doc: *mut c_char = ptr::null_mut();
    // general mode with an absurd cap: resource status, no payload
    assert_eq!(unsafe { adsp_decide(h, 1, 1, &mut doc) }, 3);
    assert!(doc.is_null());
    assert!(last_error().contains("cap"), "{}", last_error());
    unsafe { adsp_instance_free(h) };
}

#[test]
fn header_compiles_and_links_as_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    assert!(include.join("adsp.h").is_file(), "header was not generated");
    // target dir of the workspace build that is running this test
    let target = manifest
        .parent()
        .and_then(|p| p.parent())
        .map(|p| p.join("target").join("debug"))
        .expect("workspace target dir");
    let staticlib = target.join("libadsp_ffi.a");
    assert!(staticlib.is_file(), "staticlib missing at {staticlib:?}");

    let dir = tempfile::tempdir().unwrap();
    let c_src = dir.path().join("smoke.c");
    std::fs::write(
        &c_src,
        r#"
#include "adsp.h"
#include <string.h>

int main(void) {
    const char *instance =
        "{\"classes\":[{\"spectrum\":[{\"value\":\"3\",\"blocks\":[1]}]},"
        "{\"spectrum\":[{\"value\":\"-3\",\"blocks\":[1]}]}]}";
    AdspInstance *h = NULL;
    if (adsp_instance_parse(instance, &h) != 0) return 10;
    char *doc = NULL;
    if (adsp_decide(h, 0, 0, &doc) != 0) return 11;
    if (strstr(doc, "\"member\":true") == NULL) return 12;
    adsp_string_free(doc);
    int32_t rigid = 0;
    if (adsp_rigid(h, 0, &rigid) != 0) return 13;
    if (rigid != 1) return 14;
    adsp_instance_free(h);
    if (adsp_last_error()[0] != '\0') return 15;
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let compile = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&c_src)
        .arg(&staticlib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .output()
        .expect("cc not available");
    assert!(
        compile.status.success(),
        "cc failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );
    let run = Command::new(&exe).output().unwrap();
    assert!(
        run.status.success(),
        "smoke binary exited with {:?}",
        run.status.code()
    );
}
