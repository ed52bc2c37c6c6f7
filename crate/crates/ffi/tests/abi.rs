//! Drives the C interface end to end from Rust: handle lifecycle, status
//! codes, string ownership, and agreement with the core library.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qcjt::algebra::AlgebraParams;
use qcjt::field::make_field;
use qcjt::module::ModuleRep;

use qcjt_ffi::{
    qcjt_betti, qcjt_classify, qcjt_constant_type, qcjt_jordan_type, qcjt_last_error,
    qcjt_module_dim, qcjt_module_free, qcjt_module_from_json, qcjt_module_to_json,
    qcjt_string_free, qcjt_syzygy, QcjtModule, QcjtStatus,
};

fn algebra() -> AlgebraParams {
    let f = make_field(7, 1, 3).expect("GF(7) with a cube root of unity");
    AlgebraParams::new(f, 2).expect("two-generator algebra")
}

fn load(json: &str) -> *mut QcjtModule {
    let text = CString::new(json).expect("no interior NUL");
    let mut handle: *mut QcjtModule = ptr::null_mut();
    let status = qcjt_module_from_json(text.as_ptr(), &mut handle);
    assert_eq!(status, QcjtStatus::Ok, "load failed: {}", last_error());
    assert!(!handle.is_null());
    handle
}

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let text = unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .expect("utf-8")
        .to_string();
    qcjt_string_free(ptr);
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qcjt_last_error()) }
        .to_str()
        .expect("utf-8")
        .to_string()
}

#[test]
fn round_trip_preserves_json_and_dimension() {
    let quot = algebra().radical_quotient_module(0, 3).expect("A/r^3");
    let json = quot.to_json_string();
    let handle = load(&json);
    assert_eq!(qcjt_module_dim(handle), 6);

    let mut out: *mut c_char = ptr::null_mut();
    assert_eq!(qcjt_module_to_json(handle, &mut out), QcjtStatus::Ok);
    assert_eq!(take_string(out), json);
    qcjt_module_free(handle);
}

#[test]
fn jordan_type_matches_and_rejects_zero() {
    let quot = algebra().radical_quotient_module(0, 3).expect("A/r^3");
    let handle = load(&quot.to_json_string());

    let lambda = [1u64, 1u64];
    let mut out: *mut c_char = ptr::null_mut();
    let status = qcjt_jordan_type(handle, lambda.as_ptr(), lambda.len(), &mut out);
    assert_eq!(status, QcjtStatus::Ok);
    assert_eq!(take_string(out), "[1] [2] [3]");

    let zero = [0u64, 0u64];
    let mut out: *mut c_char = ptr::null_mut();
    let status = qcjt_jordan_type(handle, zero.as_ptr(), zero.len(), &mut out);
    assert_eq!(status, QcjtStatus::BadParameter);
    assert!(out.is_null());
    assert!(last_error().contains("lambda"), "message: {}", last_error());
    qcjt_module_free(handle);
}

#[test]
fn constant_type_verdicts() {
    let quot = algebra().radical_quotient_module(0, 3).expect("A/r^3");
    let handle = load(&quot.to_json_string());
    let mut constant = -1i32;
    let mut out: *mut c_char = ptr::null_mut();
    let status = qcjt_constant_type(handle, 2, &mut constant, &mut out);
    assert_eq!(status, QcjtStatus::Ok);
    assert_eq!(constant, 1);
    let report = take_string(out);
    assert!(report.contains("\"symbolic\""), "report: {report}");
    qcjt_module_free(handle);

    // X = J_2, Y = 0: type [2] at (1,0) but [1]^2 at (0,1)
    let pair = r#"{"p":7,"e":1,"n":3,"c":2,"q":2,"d":2,"matrices":[[0,1,0,0],[0,0,0,0]]}"#;
    let handle = load(pair);
    let mut constant = -1i32;
    let mut out: *mut c_char = ptr::null_mut();
    let status = qcjt_constant_type(handle, 2, &mut constant, &mut out);
    assert_eq!(status, QcjtStatus::Ok);
    assert_eq!(constant, 0);
    let report = take_string(out);
    assert!(report.contains("\"witness\""), "report: {report}");
    qcjt_module_free(handle);
}

#[test]
fn syzygy_betti_classify_agree_with_core() {
    let k = ModuleRep::simple(&algebra());
    let handle = load(&k.to_json_string());

    let mut betti = [0u64; 7];
    let status = qcjt_betti(handle, betti.as_mut_ptr(), betti.len());
    assert_eq!(status, QcjtStatus::Ok);
    assert_eq!(betti, [1, 2, 3, 4, 5, 6, 7]);

    let mut second: *mut QcjtModule = ptr::null_mut();
    assert_eq!(qcjt_syzygy(handle, 2, &mut second), QcjtStatus::Ok);
    assert_eq!(qcjt_module_dim(second), 10);

    let mut verdict: *mut c_char = ptr::null_mut();
    assert_eq!(qcjt_classify(second, 0, &mut verdict), QcjtStatus::Ok);
    assert_eq!(take_string(verdict), "SyzygyOfK(2)");

    qcjt_module_free(second);
    qcjt_module_free(handle);
}

#[test]
fn status_codes_for_bad_inputs() {
    let mut handle: *mut QcjtModule = ptr::null_mut();
    let garbage = CString::new("{not json").expect("no interior NUL");
    let status = qcjt_module_from_json(garbage.as_ptr(), &mut handle);
    assert_eq!(status, QcjtStatus::Json);
    assert!(handle.is_null());

    // X and Y swapped against the commutation parameter
    let invalid = r#"{"p":7,"e":1,"n":3,"c":2,"q":2,"d":2,"matrices":[[0,1,0,0],[0,0,1,0]]}"#;
    let text = CString::new(invalid).expect("no interior NUL");
    let status = qcjt_module_from_json(text.as_ptr(), &mut handle);
    assert_eq!(status, QcjtStatus::Validation);
    assert!(handle.is_null());

    let status = qcjt_module_from_json(ptr::null(), &mut handle);
    assert_eq!(status, QcjtStatus::NullPointer);
    assert_eq!(qcjt_module_dim(ptr::null()), 0);
    qcjt_module_free(ptr::null_mut());
    qcjt_string_free(ptr::null_mut());
}

#[test]
fn generated_header_covers_the_surface() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/qcjt.h"
    ))
    .expect("generated header");
    for symbol in [
        "typedef struct QcjtModule QcjtModule",
        "QCJT_STATUS_OK",
        "qcjt_last_error",
        "qcjt_module_from_json",
        "qcjt_module_to_json",
        "qcjt_module_free",
        "qcjt_string_free",
        "qcjt_jordan_type",
        "qcjt_constant_type",
        "qcjt_syzygy",
        "qcjt_betti",
        "qcjt_classify",
    ] {
        assert!(header.contains(symbol), "header lacks {symbol}");
    }
}
