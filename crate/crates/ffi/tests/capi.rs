use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use exab_ffi::*;

const THREE_LINES: &str = r#"{
  "elements": ["0", "a1", "a2", "a3", "1"],
  "covers": [["0", "a1"], ["0", "a2"], ["0", "a3"], ["a1", "1"], ["a2", "1"], ["a3", "1"]],
  "labels": {"0|a1": 1, "0|a2": 2, "0|a3": 3, "a1|1": 2, "a2|1": 1, "a3|1": 1}
}"#;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    exab_string_free(s);
    out
}

fn last_error() -> String {
    let e = exab_last_error();
    assert!(!e.is_null());
    unsafe { CStr::from_ptr(e) }.to_string_lossy().into_owned()
}

fn poset(json: &str) -> *mut ExabPoset {
    let mut p = ptr::null_mut();
    let status = unsafe { exab_poset_from_json(c(json).as_ptr(), false, &mut p) };
    assert_eq!(status, ExabStatus::Ok);
    p
}

#[test]
fn compute_through_handles() {
    let p = poset(THREE_LINES);
    let mut rank = 0;
    assert_eq!(unsafe { exab_poset_rank(p, &mut rank) }, ExabStatus::Ok);
    assert_eq!(rank, 2);
    for (op, want) in [
        ("extab", "a^2 + (3*y + 2*y^2)*b*a + (2 + 3*y)*a*b + (y^2)*b*b\n"),
        ("num", "1 + 3*y + 2*y^2 + (2 + 3*y + y^2)*t\n"),
        ("cd", "c1^2 + (2)*d\n"),
    ] {
        let mut out = ptr::null_mut();
        let status = unsafe { exab_poset_compute(p, c(op).as_ptr(), ptr::null(), false, &mut out) };
        assert_eq!(status, ExabStatus::Ok, "{op}");
        assert_eq!(unsafe { take(out) }, want);
    }
    unsafe { exab_poset_free(p) };
}

#[test]
fn verify_through_handles() {
    let p = poset(THREE_LINES);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { exab_poset_verify(p, ptr::null(), false, &mut out) },
        ExabStatus::Ok
    );
    let report = unsafe { take(out) };
    assert_eq!(report.lines().filter(|l| l.starts_with("PASS ")).count(), 8);
    unsafe { exab_poset_free(p) };

    let bad = poset(&THREE_LINES.replace(": 2", ": 1").replace(": 3", ": 1"));
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { exab_poset_verify(bad, c("theorem").as_ptr(), false, &mut out) },
        ExabStatus::Fail
    );
    assert!(unsafe { take(out) }.starts_with("FAIL theorem"));
    let mut out = ptr::null_mut();
    let status = unsafe { exab_poset_compute(bad, c("extab").as_ptr(), ptr::null(), false, &mut out) };
    assert_eq!(status, ExabStatus::LabelingError);
    assert!(out.is_null());
    assert!(last_error().contains("not an R-labeling"));
    unsafe { exab_poset_free(bad) };
}

#[test]
fn error_statuses() {
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { exab_poset_from_json(c("{").as_ptr(), false, &mut p) },
        ExabStatus::InputError
    );
    assert!(last_error().contains("invalid poset file"));
    assert_eq!(
        unsafe { exab_poset_from_json(ptr::null(), false, &mut p) },
        ExabStatus::NullPointer
    );
    assert_eq!(
        unsafe { exab_poset_from_json(c(THREE_LINES).as_ptr(), false, ptr::null_mut()) },
        ExabStatus::NullPointer
    );
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { exab_poset_from_json(invalid.as_ptr().cast(), false, &mut p) },
        ExabStatus::InvalidUtf8
    );

    let rank0 = poset(r#"{"elements": ["x"], "covers": []}"#);
    let mut out = ptr::null_mut();
    let status = unsafe { exab_poset_compute(rank0, c("num").as_ptr(), ptr::null(), false, &mut out) };
    assert_eq!(status, ExabStatus::InputError);
    assert!(last_error().contains("rank 0"));
    let status = unsafe { exab_poset_compute(rank0, c("bogus").as_ptr(), ptr::null(), false, &mut out) };
    assert_eq!(status, ExabStatus::InputError);
    unsafe { exab_poset_free(rank0) };
    unsafe { exab_poset_free(ptr::null_mut()) };
    unsafe { exab_string_free(ptr::null_mut()) };
}

#[test]
fn arrangement_handles() {
    let mut a = ptr::null_mut();
    let json = c(r#"{"dim": 2, "normals": [[1, 0], [0, 1], [1, 1]]}"#);
    assert_eq!(
        unsafe { exab_arrangement_from_json(json.as_ptr(), false, &mut a) },
        ExabStatus::Ok
    );
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { exab_arrangement_run(a, c("check-pullback").as_ptr(), true, &mut out) },
        ExabStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(
        unsafe { exab_arrangement_run(a, c("faces").as_ptr(), false, &mut out) },
        ExabStatus::Ok
    );
    let faces: serde_json::Value = serde_json::from_str(&unsafe { take(out) }).unwrap();
    assert_eq!(faces["elements"].as_array().unwrap().len(), 14);
    unsafe { exab_arrangement_free(a) };

    let dup = c(r#"{"dim": 2, "normals": [[1, 0], [3, 0]]}"#);
    assert_eq!(
        unsafe { exab_arrangement_from_json(dup.as_ptr(), false, &mut a) },
        ExabStatus::InputError
    );
    assert!(last_error().contains("coincide"));
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(exab_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

/// Compiles a small C program against the generated header and the static
/// library and runs it.
#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/capi-<hash>
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libexab_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "exab.h"

int main(void) {
    const char *json = "{\"elements\":[\"0\",\"a\",\"b\",\"1\"],\"covers\":[[\"0\",\"a\"],[\"0\",\"b\"],[\"a\",\"1\"],[\"b\",\"1\"]]}";
    ExabPoset *p = NULL;
    if (exab_poset_from_json(json, false, &p) != EXAB_STATUS_OK) return 10;
    char *out = NULL;
    if (exab_poset_compute(p, "poincare", NULL, false, &out) != EXAB_STATUS_OK) return 11;
    int ok = strcmp(out, "1 + 2*y + y^2\n") == 0;
    exab_string_free(out);
    if (exab_poset_compute(p, "num", "bogus", false, &out) != EXAB_STATUS_INPUT_ERROR) return 12;
    if (exab_last_error() == NULL) return 13;
    exab_poset_free(p);
    return ok ? 0 : 14;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler is required for this test");
    assert!(status.success());
    assert_eq!(Command::new(&exe).status().unwrap().code(), Some(0));
}
