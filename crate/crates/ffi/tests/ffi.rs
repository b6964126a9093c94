use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use torfact_ffi::*;

fn last_error() -> String {
    let p = torfact_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn parse(json: &str) -> Result<*mut TorfactFan, TorfactStatus> {
    let c = CString::new(json).unwrap();
    let mut fan = ptr::null_mut();
    match unsafe { torfact_fan_from_json(c.as_ptr(), &mut fan) } {
        TorfactStatus::Ok => Ok(fan),
        s => {
            assert!(fan.is_null());
            Err(s)
        }
    }
}

fn classify(fan: *const TorfactFan) -> (TorfactStatus, TorfactVerdict, Vec<usize>) {
    let mut verdict = TorfactVerdict::Unrecognized;
    let mut dims = [0usize; 8];
    let mut len = 0;
    let s = unsafe { torfact_fan_classify(fan, &mut verdict, dims.as_mut_ptr(), dims.len(), &mut len) };
    (s, verdict, dims[..len.min(8)].to_vec())
}

#[test]
fn builtin_product_round_trips_through_json() {
    let dims = [2usize, 1, 1];
    let mut fan = ptr::null_mut();
    assert_eq!(unsafe { torfact_fan_product(dims.as_ptr(), dims.len(), &mut fan) }, TorfactStatus::Ok);
    unsafe {
        assert_eq!(torfact_fan_rank(fan), 4);
        assert_eq!(torfact_fan_ray_count(fan), 7);
    }
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { torfact_fan_to_json(fan, &mut text) }, TorfactStatus::Ok);
    let json = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
    unsafe { torfact_string_free(text) };
    assert!(json.contains("P^2 x P^1 x P^1"));

    let again = parse(&json).unwrap();
    let (s, v, d) = classify(again);
    assert_eq!((s, v, d), (TorfactStatus::Ok, TorfactVerdict::Product, vec![2, 1, 1]));
    let mut count = 0;
    assert_eq!(unsafe { torfact_fan_root_count(again, &mut count) }, TorfactStatus::Ok);
    assert_eq!(count, 6 + 2 + 2);
    unsafe {
        torfact_fan_free(fan);
        torfact_fan_free(again);
    }
}

#[test]
fn hirzebruch_verdicts() {
    for (a, want) in [(0, TorfactVerdict::Product), (1, TorfactVerdict::NotSemisimple), (3, TorfactVerdict::NotSemisimple)] {
        let mut fan = ptr::null_mut();
        assert_eq!(unsafe { torfact_fan_hirzebruch(a, &mut fan) }, TorfactStatus::Ok);
        let mut complete = false;
        assert_eq!(unsafe { torfact_fan_is_complete(fan, &mut complete) }, TorfactStatus::Ok);
        assert!(complete);
        let (s, v, _) = classify(fan);
        assert_eq!((s, v), (TorfactStatus::Ok, want), "F_{a}");
        unsafe { torfact_fan_free(fan) };
    }
}

#[test]
fn errors_map_to_status_codes() {
    assert_eq!(parse("not json"), Err(TorfactStatus::ParseError));
    assert!(last_error().contains("malformed fan file"));

    let overlap = r#"{"rank": 2, "rays": [[1, 0], [0, 1], [1, 1]], "maximal_cones": [[0, 1], [1, 2]]}"#;
    assert_eq!(parse(overlap), Err(TorfactStatus::InvalidFan));
    assert!(last_error().contains("cones 0 and 1"));

    let quadrant = parse(r#"{"rank": 2, "rays": [[1, 0], [0, 1]], "maximal_cones": [[0, 1]]}"#).unwrap();
    assert_eq!(classify(quadrant).0, TorfactStatus::NotComplete);
    let mut count = 0;
    assert_eq!(unsafe { torfact_fan_root_count(quadrant, &mut count) }, TorfactStatus::Unbounded);
    unsafe { torfact_fan_free(quadrant) };

    let mut fan = ptr::null_mut();
    assert_eq!(unsafe { torfact_fan_projective_space(0, &mut fan) }, TorfactStatus::InvalidParameter);
    assert!(fan.is_null());

    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { torfact_fan_from_json(bad.as_ptr().cast(), &mut fan) },
        TorfactStatus::InvalidUtf8
    );
}

#[test]
fn null_arguments_are_rejected() {
    let mut complete = false;
    assert_eq!(unsafe { torfact_fan_is_complete(ptr::null(), &mut complete) }, TorfactStatus::NullPointer);
    assert_eq!(unsafe { torfact_fan_from_json(ptr::null(), ptr::null_mut()) }, TorfactStatus::NullPointer);
    assert_eq!(unsafe { torfact_fan_rank(ptr::null()) }, 0);
    unsafe {
        torfact_fan_free(ptr::null_mut());
        torfact_string_free(ptr::null_mut());
    }
}

#[test]
fn small_dims_buffer_reports_required_length() {
    let mut fan = ptr::null_mut();
    let dims = [1usize, 1, 1];
    assert_eq!(unsafe { torfact_fan_product(dims.as_ptr(), 3, &mut fan) }, TorfactStatus::Ok);
    let mut verdict = TorfactVerdict::Unrecognized;
    let mut buf = [0usize; 2];
    let mut len = 0;
    let s = unsafe { torfact_fan_classify(fan, &mut verdict, buf.as_mut_ptr(), buf.len(), &mut len) };
    assert_eq!((s, len), (TorfactStatus::BufferTooSmall, 3));
    unsafe { torfact_fan_free(fan) };
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/torfact.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "torfact_fan_from_json",
        "torfact_fan_projective_space",
        "torfact_fan_product",
        "torfact_fan_hirzebruch",
        "torfact_fan_free",
        "torfact_fan_rank",
        "torfact_fan_ray_count",
        "torfact_fan_is_complete",
        "torfact_fan_root_count",
        "torfact_fan_classify",
        "torfact_fan_to_json",
        "torfact_string_free",
        "torfact_last_error_message",
        "TORFACT_STATUS_NOT_COMPLETE",
        "TORFACT_VERDICT_PRODUCT",
        "typedef struct TorfactFan TorfactFan",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

/// Compiles a C program against the header and the static library.
#[test]
fn c_program_links_against_static_library() {
    // test builds only produce the rlib, so build the archive separately
    let target = Path::new(env!("CARGO_TARGET_TMPDIR")).join("staticlib");
    let built = Command::new(env!("CARGO"))
        .args(["build", "--offline", "--lib", "-p", "torfact-ffi"])
        .args(["--config", "profile.dev.package.\"*\".opt-level=0", "--target-dir"])
        .arg(&target)
        .status()
        .unwrap();
    assert!(built.success(), "cargo build failed");
    let lib = target.join("debug/libtorfact_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let dir = std::env::temp_dir().join(format!("torfact-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "torfact.h"
int main(void) {
    TorfactFan *fan = NULL;
    size_t dims[4], len = 0;
    TorfactVerdict v;
    if (torfact_fan_projective_space(3, &fan) != TORFACT_STATUS_OK) return 10;
    if (torfact_fan_classify(fan, &v, dims, 4, &len) != TORFACT_STATUS_OK) return 11;
    if (v != TORFACT_VERDICT_PRODUCT || len != 1 || dims[0] != 3) return 12;
    size_t roots = 0;
    if (torfact_fan_root_count(fan, &roots) != TORFACT_STATUS_OK || roots != 12) return 13;
    torfact_fan_free(fan);
    if (torfact_fan_from_json("{", &fan) != TORFACT_STATUS_PARSE_ERROR) return 14;
    printf("%s\n", torfact_last_error_message());
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("main");
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "{cc} failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("malformed fan file"));
    std::fs::remove_dir_all(&dir).unwrap();
}
