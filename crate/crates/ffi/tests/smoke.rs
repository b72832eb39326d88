//! Exercises the C ABI from Rust exactly as a foreign caller would:
//! through raw pointers and status codes.

use nilpo_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn last_error() -> String {
    let ptr = nilpo_last_error_message();
    if ptr.is_null() {
        return String::new();
    }
    let text = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { nilpo_string_free(ptr) };
    text
}

#[test]
fn generate_analyze_roundtrip() {
    unsafe {
        let kind = CString::new("nilradical-B").unwrap();
        let mut handle: *mut NilpoAlgebra = ptr::null_mut();
        let status = nilpo_algebra_generate(kind.as_ptr(), 2, 0, &mut handle);
        assert_eq!(status, NilpoStatus::Ok, "{}", last_error());
        assert_eq!(nilpo_algebra_dim(handle), 4);

        let mut k = 0usize;
        assert_eq!(nilpo_nilpotency_index(handle, &mut k), NilpoStatus::Ok);
        assert_eq!(k, 3);

        let mut b2 = 0usize;
        assert_eq!(nilpo_betti(handle, 2, &mut b2), NilpoStatus::Ok);
        assert!(b2 >= 2);

        let mut e02 = 0usize;
        assert_eq!(nilpo_e_infty_dim(handle, 0, 2, &mut e02), NilpoStatus::Ok);
        assert_eq!(e02, 1);

        let mut vanishes = true;
        assert_eq!(
            nilpo_obstruction_vanishes(handle, &mut vanishes),
            NilpoStatus::Ok
        );
        assert!(!vanishes);

        let mut report: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(
            nilpo_analyze_json(handle, 42, 64, false, &mut report),
            NilpoStatus::Ok
        );
        let text = CStr::from_ptr(report).to_str().unwrap();
        let v: serde_json::Value = serde_json::from_str(text).unwrap();
        assert_eq!(v["verdict"]["status"], "symplectic");
        nilpo_string_free(report);

        // JSON round trip through the handle API.
        let mut json: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(nilpo_algebra_to_json(handle, &mut json), NilpoStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_string();
        nilpo_string_free(json);

        let cjson = CString::new(text.clone()).unwrap();
        let mut reparsed: *mut NilpoAlgebra = ptr::null_mut();
        assert_eq!(
            nilpo_algebra_from_json(cjson.as_ptr(), &mut reparsed),
            NilpoStatus::Ok
        );
        let mut json2: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(nilpo_algebra_to_json(reparsed, &mut json2), NilpoStatus::Ok);
        assert_eq!(CStr::from_ptr(json2).to_str().unwrap(), text);
        nilpo_string_free(json2);

        nilpo_algebra_free(reparsed);
        nilpo_algebra_free(handle);
    }
}

#[test]
fn error_paths() {
    unsafe {
        // Null arguments.
        let mut handle: *mut NilpoAlgebra = ptr::null_mut();
        assert_eq!(
            nilpo_algebra_from_json(ptr::null(), &mut handle),
            NilpoStatus::InvalidArgument
        );

        // Bad JSON.
        let bad = CString::new("{not json").unwrap();
        assert_eq!(
            nilpo_algebra_from_json(bad.as_ptr(), &mut handle),
            NilpoStatus::ParseError
        );
        assert!(!last_error().is_empty());

        // Jacobi violation is rejected at the boundary.
        let not_lie = CString::new(
            r#"{
  "schema_version": "1",
  "dim": 4,
  "basis": ["e1", "e2", "e3", "e4"],
  "brackets": [
    {"i": 1, "j": 2, "out": [{"k": 3, "c": "1"}]},
    {"i": 1, "j": 3, "out": [{"k": 4, "c": "1"}]},
    {"i": 2, "j": 3, "out": [{"k": 3, "c": "1"}]}
  ]
}"#,
        )
        .unwrap();
        assert_eq!(
            nilpo_algebra_from_json(not_lie.as_ptr(), &mut handle),
            NilpoStatus::InvalidAlgebra
        );

        // Unknown generator kind.
        let kind = CString::new("torus").unwrap();
        assert_eq!(
            nilpo_algebra_generate(kind.as_ptr(), 3, 0, &mut handle),
            NilpoStatus::InvalidArgument
        );

        // Bad parameters surface as InvalidArgument, not a crash.
        let kind = CString::new("heisenberg").unwrap();
        assert_eq!(
            nilpo_algebra_generate(kind.as_ptr(), 4, 0, &mut handle),
            NilpoStatus::InvalidArgument
        );

        // Null handle probes.
        assert_eq!(nilpo_algebra_dim(ptr::null()), 0);
        let mut k = 0usize;
        assert_eq!(
            nilpo_nilpotency_index(ptr::null(), &mut k),
            NilpoStatus::InvalidArgument
        );

        // Free tolerates null.
        nilpo_algebra_free(ptr::null_mut());
        nilpo_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_generated() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("include/nilpo.h");
    let text = std::fs::read_to_string(header).expect("cbindgen header exists");
    for symbol in [
        "nilpo_algebra_from_json",
        "nilpo_algebra_generate",
        "nilpo_analyze_json",
        "nilpo_e_infty_dim",
        "NilpoStatus",
        "NilpoAlgebra",
    ] {
        assert!(text.contains(symbol), "header lacks {symbol}");
    }
}
