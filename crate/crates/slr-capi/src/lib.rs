//! C ABI over the slr toolkit.
//!
//! Conventions: curves travel as opaque `SlrCurve` handles, every result is
//! a JSON document in a newly allocated C string (identical to the CLI
//! reports), and every function returns an [`SlrStatus`] code. Strings
//! returned through out-parameters must be released with
//! [`slr_string_free`]; handles with [`slr_curve_free`]. On any non-OK
//! status, [`slr_last_error_message`] returns a thread-local description.

use slr::cases::verify_all_cases;
use slr::catalog::catalog;
use slr::certificate::best_chain;
use slr::engine::{slr_bounds, BoundsParams};
use slr::lattice::{optimal_ordering, MoveRule};
use slr::rational::parse_rational;
use slr::report::{cases_report_json, BoundsReport, CertificateJson, LatticeReport};
use slr::selfsimilar::{load_curve_spec, SelfSimilarCurveSpec};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// Opaque curve handle.
pub struct SlrCurve {
    name: String,
    spec: SelfSimilarCurveSpec,
}

/// Status codes returned by every API function.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SlrStatus {
    /// Success.
    SlrOk = 0,
    /// A required pointer argument was null.
    SlrNullArgument = 1,
    /// An argument failed to parse or validate.
    SlrInvalidArgument = 2,
    /// A curve spec violated an invariant.
    SlrInvalidSpec = 3,
    /// No catalog entry with the requested name.
    SlrNotFound = 4,
    /// The computation itself reported an error.
    SlrComputeError = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

/// Description of the most recent error on this thread. The pointer stays
/// valid until the next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn slr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn arg_str<'a>(s: *const c_char) -> Result<&'a str, SlrStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(SlrStatus::SlrNullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        SlrStatus::SlrInvalidArgument
    })
}

fn return_string(text: String, out: *mut *mut c_char) -> SlrStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            SlrStatus::SlrOk
        }
        Err(_) => {
            set_error("result contained an interior NUL byte");
            SlrStatus::SlrComputeError
        }
    }
}

/// Builds a handle for a built-in curve (`hilbert`, `peano9`,
/// `serpentine9`).
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn slr_curve_from_catalog(
    name: *const c_char,
    out: *mut *mut SlrCurve,
) -> SlrStatus {
    if out.is_null() {
        set_error("null out pointer");
        return SlrStatus::SlrNullArgument;
    }
    *out = ptr::null_mut();
    let name = match arg_str(name) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match catalog(name) {
        Ok(spec) => {
            *out = Box::into_raw(Box::new(SlrCurve { name: name.to_string(), spec }));
            SlrStatus::SlrOk
        }
        Err(e) => {
            set_error(&e.to_string());
            SlrStatus::SlrNotFound
        }
    }
}

/// Parses a curve-spec JSON document (the same format the CLI reads).
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn slr_curve_from_json(
    json: *const c_char,
    out: *mut *mut SlrCurve,
) -> SlrStatus {
    if out.is_null() {
        set_error("null out pointer");
        return SlrStatus::SlrNullArgument;
    }
    *out = ptr::null_mut();
    let json = match arg_str(json) {
        Ok(s) => s,
        Err(status) => return status,
    };
    match load_curve_spec(json) {
        Ok(spec) => {
            *out = Box::into_raw(Box::new(SlrCurve { name: "custom".to_string(), spec }));
            SlrStatus::SlrOk
        }
        Err(e) => {
            set_error(&e.to_string());
            SlrStatus::SlrInvalidSpec
        }
    }
}

/// Releases a curve handle. Null is ignored.
///
/// # Safety
/// `curve` must be null or a pointer returned by a `slr_curve_from_*`
/// function that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn slr_curve_free(curve: *mut SlrCurve) {
    if !curve.is_null() {
        drop(Box::from_raw(curve));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned through an out-parameter of this
/// library that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn slr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Two-sided square-to-linear ratio bounds as a JSON report.
///
/// `target_gap` is a rational string like `"1/10"`.
///
/// # Safety
/// `curve` must be a live handle; `target_gap` a valid NUL-terminated
/// string; `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn slr_bounds_json(
    curve: *const SlrCurve,
    target_gap: *const c_char,
    max_depth: u32,
    budget: u64,
    out_json: *mut *mut c_char,
) -> SlrStatus {
    if curve.is_null() || out_json.is_null() {
        set_error("null argument");
        return SlrStatus::SlrNullArgument;
    }
    *out_json = ptr::null_mut();
    let gap = match arg_str(target_gap).map(parse_rational) {
        Ok(Ok(g)) => g,
        Ok(Err(e)) => {
            set_error(&e.to_string());
            return SlrStatus::SlrInvalidArgument;
        }
        Err(status) => return status,
    };
    let handle = &*curve;
    let params = BoundsParams { target_gap: gap, max_depth, budget, threads: 1 };
    match slr_bounds(&handle.spec, &params) {
        Ok(result) => {
            let report = BoundsReport::new(
                handle.name.clone(),
                &result,
                handle.spec.coverage_verified(),
                None,
            );
            match serde_json::to_string_pretty(&report) {
                Ok(text) => return_string(text, out_json),
                Err(e) => {
                    set_error(&e.to_string());
                    SlrStatus::SlrComputeError
                }
            }
        }
        Err(e) => {
            set_error(&e.to_string());
            SlrStatus::SlrComputeError
        }
    }
}

/// Best chain certificate at the given refinement depth as certificate
/// JSON.
///
/// # Safety
/// `curve` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn slr_best_chain_json(
    curve: *const SlrCurve,
    depth: u32,
    max_nodes: u32,
    out_json: *mut *mut c_char,
) -> SlrStatus {
    if curve.is_null() || out_json.is_null() {
        set_error("null argument");
        return SlrStatus::SlrNullArgument;
    }
    *out_json = ptr::null_mut();
    let handle = &*curve;
    let vertices = match handle.spec.vertices(depth) {
        Ok(v) => v,
        Err(e) => {
            set_error(&e.to_string());
            return SlrStatus::SlrInvalidArgument;
        }
    };
    match best_chain(&vertices, max_nodes as usize) {
        Ok(cert) => {
            let json = CertificateJson::from_certificate(&cert);
            match serde_json::to_string_pretty(&json) {
                Ok(text) => return_string(text, out_json),
                Err(e) => {
                    set_error(&e.to_string());
                    SlrStatus::SlrComputeError
                }
            }
        }
        Err(e) => {
            set_error(&e.to_string());
            SlrStatus::SlrInvalidArgument
        }
    }
}

/// Runs every built-in quadratic-form case; the JSON array reports each
/// case's derived form, computed minimum and pass flag. `all_pass` receives
/// 1 when every case passed.
///
/// # Safety
/// `out_json` and `all_pass` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn slr_verify_cases_json(
    out_json: *mut *mut c_char,
    all_pass: *mut i32,
) -> SlrStatus {
    if out_json.is_null() || all_pass.is_null() {
        set_error("null argument");
        return SlrStatus::SlrNullArgument;
    }
    *out_json = ptr::null_mut();
    let report = verify_all_cases();
    *all_pass = report.all_pass as i32;
    match serde_json::to_string_pretty(&cases_report_json(&report)) {
        Ok(text) => return_string(text, out_json),
        Err(e) => {
            set_error(&e.to_string());
            SlrStatus::SlrComputeError
        }
    }
}

/// Searches for the lattice ordering of an `rows x cols` grid minimizing
/// the discrete ratio; returns the CLI's lattice JSON report.
///
/// # Safety
/// `out_json` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn slr_lattice_optimal_json(
    rows: u32,
    cols: u32,
    budget: u64,
    out_json: *mut *mut c_char,
) -> SlrStatus {
    if out_json.is_null() {
        set_error("null argument");
        return SlrStatus::SlrNullArgument;
    }
    *out_json = ptr::null_mut();
    match optimal_ordering(rows, cols, budget, MoveRule::Any) {
        Ok(result) => {
            let report = LatticeReport::new(&result, None, None);
            match serde_json::to_string_pretty(&report) {
                Ok(text) => return_string(text, out_json),
                Err(e) => {
                    set_error(&e.to_string());
                    SlrStatus::SlrComputeError
                }
            }
        }
        Err(e) => {
            set_error(&e.to_string());
            SlrStatus::SlrInvalidArgument
        }
    }
}
