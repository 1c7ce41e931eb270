//! Exercises the C ABI through the exported extern "C" functions.

use slr_capi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn take_string(ptr: *mut std::ffi::c_char) -> String {
    assert!(!ptr.is_null());
    let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { slr_string_free(ptr) };
    s
}

#[test]
fn catalog_handle_and_bounds_report() {
    let name = CString::new("peano9").unwrap();
    let mut curve: *mut SlrCurve = ptr::null_mut();
    let status = unsafe { slr_curve_from_catalog(name.as_ptr(), &mut curve) };
    assert_eq!(status, SlrStatus::SlrOk);
    assert!(!curve.is_null());

    let gap = CString::new("1/10").unwrap();
    let mut out: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe { slr_bounds_json(curve, gap.as_ptr(), 4, 2_000_000, &mut out) };
    assert_eq!(status, SlrStatus::SlrOk);
    let text = take_string(out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["curve"], "peano9");
    assert_eq!(v["converged"], true);
    assert_eq!(v["lower"], "486/61");

    unsafe { slr_curve_free(curve) };
}

#[test]
fn unknown_catalog_name_sets_error() {
    let name = CString::new("nope").unwrap();
    let mut curve: *mut SlrCurve = ptr::null_mut();
    let status = unsafe { slr_curve_from_catalog(name.as_ptr(), &mut curve) };
    assert_eq!(status, SlrStatus::SlrNotFound);
    assert!(curve.is_null());
    let msg = unsafe { CStr::from_ptr(slr_last_error_message()) }
        .to_str()
        .unwrap();
    assert!(msg.contains("nope"), "message was {msg:?}");
}

#[test]
fn invalid_spec_json_reports_the_invariant() {
    // Weights do not sum to 1.
    let json = CString::new(
        r#"{
            "sub_maps": [
                {"matrix": [["1/2","0/1"],["0/1","1/2"]], "translation": ["0/1","0/1"]},
                {"matrix": [["1/2","0/1"],["0/1","1/2"]], "translation": ["1/2","1/2"]}
            ],
            "time_weights": ["1/4","1/4"],
            "entry": ["0/1","0/1"],
            "exit": ["1/1","1/1"]
        }"#,
    )
    .unwrap();
    let mut curve: *mut SlrCurve = ptr::null_mut();
    let status = unsafe { slr_curve_from_json(json.as_ptr(), &mut curve) };
    assert_eq!(status, SlrStatus::SlrInvalidSpec);
    let msg = unsafe { CStr::from_ptr(slr_last_error_message()) }
        .to_str()
        .unwrap();
    assert!(msg.contains("sum"), "message was {msg:?}");
}

#[test]
fn cases_and_lattice_round_trip() {
    let mut out: *mut std::ffi::c_char = ptr::null_mut();
    let mut all_pass = 0i32;
    let status = unsafe { slr_verify_cases_json(&mut out, &mut all_pass) };
    assert_eq!(status, SlrStatus::SlrOk);
    assert_eq!(all_pass, 1);
    let text = take_string(out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 11);

    let mut out: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe { slr_lattice_optimal_json(3, 3, 1_000_000_000, &mut out) };
    assert_eq!(status, SlrStatus::SlrOk);
    let text = take_string(out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["optimum"], "2/1");
    assert_eq!(v["proven"], true);
}

#[test]
fn best_chain_json_for_hilbert() {
    let name = CString::new("hilbert").unwrap();
    let mut curve: *mut SlrCurve = ptr::null_mut();
    assert_eq!(
        unsafe { slr_curve_from_catalog(name.as_ptr(), &mut curve) },
        SlrStatus::SlrOk
    );
    let mut out: *mut std::ffi::c_char = ptr::null_mut();
    let status = unsafe { slr_best_chain_json(curve, 3, 8, &mut out) };
    assert_eq!(status, SlrStatus::SlrOk);
    let text = take_string(out);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(v["nodes"].as_array().unwrap().len() >= 2);
    unsafe { slr_curve_free(curve) };
}

#[test]
fn null_arguments_are_rejected() {
    let mut out: *mut std::ffi::c_char = ptr::null_mut();
    assert_eq!(
        unsafe { slr_bounds_json(ptr::null(), ptr::null(), 3, 10, &mut out) },
        SlrStatus::SlrNullArgument
    );
    assert_eq!(
        unsafe { slr_curve_from_catalog(ptr::null(), ptr::null_mut()) },
        SlrStatus::SlrNullArgument
    );
}

#[test]
fn generated_header_exposes_the_api() {
    let header = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("include")
        .join("slr.h");
    let text = std::fs::read_to_string(&header)
        .unwrap_or_else(|e| panic!("missing generated header {}: {e}", header.display()));
    for symbol in [
        "slr_curve_from_catalog",
        "slr_curve_from_json",
        "slr_curve_free",
        "slr_bounds_json",
        "slr_best_chain_json",
        "slr_verify_cases_json",
        "slr_lattice_optimal_json",
        "slr_string_free",
        "slr_last_error_message",
        "SlrStatus",
        "SlrCurve",
    ] {
        assert!(text.contains(symbol), "header lacks {symbol}");
    }
}
