//! C interface over the core library: opaque module handles, status
//! codes, and UTF-8 strings allocated here and released with
//! [`qcjt_string_free`].  The build script regenerates `include/qcjt.h`.
//!
//! Error contract: every fallible function returns a [`QcjtStatus`]; on
//! anything but `Ok` the thread-local message read by [`qcjt_last_error`]
//! describes the failure.  The pointer stays valid until the next failing
//! call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use serde_json::json;

use qcjt::error::Error;
use qcjt::field::FieldElem;
use qcjt::homology::{betti_sequence, syzygy};
use qcjt::jordan::{check_constant, jordan_type_at, CjtMethod};
use qcjt::module::ModuleRep;
use qcjt::rank_property::{classify_syzygy_of_k, SyzygyClass};

/// Status code returned by every fallible interface function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcjtStatus {
    Ok = 0,
    /// A parameter fails its precondition (bad prime, zero lambda, range).
    BadParameter = 1,
    /// The module data violates the defining relations.
    Validation = 2,
    /// The requested procedure is not defined for this input.
    Unavailable = 3,
    /// A dimension or scan guard refused the computation.
    SizeGuard = 4,
    /// Malformed JSON or an I/O failure.
    Json = 5,
    NullPointer = 6,
    /// A string argument is not valid UTF-8.
    Utf8 = 7,
    Internal = 8,
}

/// Opaque handle to a module representation.
pub struct QcjtModule(ModuleRep);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized: String = msg.chars().filter(|&ch| ch != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("interior NUL removed");
    });
}

fn status_of(err: &Error) -> QcjtStatus {
    match err {
        Error::NotPrime(_)
        | Error::NoPrimitiveRoot { .. }
        | Error::BadRange(_)
        | Error::ZeroLambda
        | Error::LengthMismatch { .. }
        | Error::Unsupported(_) => QcjtStatus::BadParameter,
        Error::Validation(_)
        | Error::InvalidAutomorphism(_)
        | Error::AlgebraMismatch(_)
        | Error::InconsistentForm => QcjtStatus::Validation,
        Error::MethodUnavailable(_)
        | Error::NotSingleNonprojective { .. }
        | Error::PreconditionUnmet(_)
        | Error::FreeSummand(_) => QcjtStatus::Unavailable,
        Error::ScanTooLarge { .. } | Error::SizeGuardExceeded { .. } => QcjtStatus::SizeGuard,
        Error::Json(_) | Error::Io(_) => QcjtStatus::Json,
        _ => QcjtStatus::Internal,
    }
}

fn report(err: Error) -> QcjtStatus {
    set_error(&err.to_string());
    status_of(&err)
}

/// Runs the body with panics converted to `Internal`; raw-pointer writes
/// happen only after the fallible work succeeded.
fn guarded(f: impl FnOnce() -> QcjtStatus) -> QcjtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            QcjtStatus::Internal
        }
    }
}

fn give_string(out: *mut *mut c_char, text: String) -> QcjtStatus {
    let sanitized: String = text.chars().filter(|&ch| ch != '\0').collect();
    let cstr = CString::new(sanitized).expect("interior NUL removed");
    unsafe { *out = cstr.into_raw() };
    QcjtStatus::Ok
}

macro_rules! need {
    ($ptr:expr) => {
        if $ptr.is_null() {
            set_error("null pointer argument");
            return QcjtStatus::NullPointer;
        }
    };
}

/// Message for the most recent failure on this thread; empty before the
/// first failure.  Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn qcjt_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this interface.  NULL is ignored.
#[no_mangle]
pub extern "C" fn qcjt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Releases a module handle.  NULL is ignored.
#[no_mangle]
pub extern "C" fn qcjt_module_free(m: *mut QcjtModule) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Parses and validates module JSON into a fresh handle.
#[no_mangle]
pub extern "C" fn qcjt_module_from_json(
    json_text: *const c_char,
    out: *mut *mut QcjtModule,
) -> QcjtStatus {
    guarded(|| {
        need!(json_text);
        need!(out);
        let text = match unsafe { CStr::from_ptr(json_text) }.to_str() {
            Ok(text) => text,
            Err(_) => {
                set_error("module JSON is not valid UTF-8");
                return QcjtStatus::Utf8;
            }
        };
        let m = match ModuleRep::from_json_str(text).and_then(|m| {
            m.validate()?;
            Ok(m)
        }) {
            Ok(m) => m,
            Err(err) => return report(err),
        };
        unsafe { *out = Box::into_raw(Box::new(QcjtModule(m))) };
        QcjtStatus::Ok
    })
}

/// Serializes the module to its canonical JSON.
#[no_mangle]
pub extern "C" fn qcjt_module_to_json(
    m: *const QcjtModule,
    out: *mut *mut c_char,
) -> QcjtStatus {
    guarded(|| {
        need!(m);
        need!(out);
        let text = unsafe { &(*m).0 }.to_json_string();
        give_string(out, text)
    })
}

/// Vector-space dimension of the module; 0 for NULL.
#[no_mangle]
pub extern "C" fn qcjt_module_dim(m: *const QcjtModule) -> u64 {
    if m.is_null() {
        return 0;
    }
    unsafe { &(*m).0 }.d as u64
}

/// Jordan type at the point lambda (packed field encodings, one per
/// generator), in compressed notation such as `[1] [2] [3]`.
#[no_mangle]
pub extern "C" fn qcjt_jordan_type(
    m: *const QcjtModule,
    lambda: *const u64,
    len: usize,
    out: *mut *mut c_char,
) -> QcjtStatus {
    guarded(|| {
        need!(m);
        need!(lambda);
        need!(out);
        let coords: Vec<FieldElem> = unsafe { std::slice::from_raw_parts(lambda, len) }
            .iter()
            .map(|&x| FieldElem(x))
            .collect();
        match jordan_type_at(unsafe { &(*m).0 }, &coords) {
            Ok(jt) => give_string(out, jt.compact()),
            Err(err) => report(err),
        }
    })
}

/// Constant-Jordan-type verdict: the symbolic certificate for two
/// generators with a scan of extensions up to `e_max` as fallback.
/// Writes 1 or 0 to `is_constant` and the verdict JSON to `out`.
#[no_mangle]
pub extern "C" fn qcjt_constant_type(
    m: *const QcjtModule,
    e_max: u32,
    is_constant: *mut i32,
    out: *mut *mut c_char,
) -> QcjtStatus {
    guarded(|| {
        need!(m);
        need!(is_constant);
        need!(out);
        let module = unsafe { &(*m).0 };
        let attempt = if module.alg.c == 2 {
            match check_constant(module, CjtMethod::Symbolic) {
                Err(Error::MethodUnavailable(_)) => {
                    check_constant(module, CjtMethod::Extension { e_max })
                }
                other => other,
            }
        } else {
            check_constant(module, CjtMethod::Extension { e_max })
        };
        let verdict = match attempt {
            Ok(v) => v,
            Err(err) => return report(err),
        };
        let type_json = |jt: &qcjt::module::JordanType| {
            json!({ "mults": jt.mults, "compact": jt.compact() })
        };
        let witness = verdict.witness.as_ref().map(|w| {
            json!({
                "field": w.field,
                "lambda_a": w.lambda_a.iter().map(|x| x.0).collect::<Vec<_>>(),
                "type_a": type_json(&w.type_a),
                "lambda_b": w.lambda_b.iter().map(|x| x.0).collect::<Vec<_>>(),
                "type_b": type_json(&w.type_b),
            })
        });
        let text = json!({
            "constant": verdict.constant,
            "jordan_type": verdict.jordan_type.as_ref().map(type_json),
            "witness": witness,
            "certified_over": verdict.certified_over,
            "method": verdict.method,
        })
        .to_string();
        unsafe { *is_constant = i32::from(verdict.constant) };
        give_string(out, text)
    })
}

/// Syzygy (positive index) or cosyzygy (negative index) as a new handle;
/// index 0 copies the module.
#[no_mangle]
pub extern "C" fn qcjt_syzygy(
    m: *const QcjtModule,
    index: i64,
    out: *mut *mut QcjtModule,
) -> QcjtStatus {
    guarded(|| {
        need!(m);
        need!(out);
        match syzygy(unsafe { &(*m).0 }, index) {
            Ok(s) => {
                unsafe { *out = Box::into_raw(Box::new(QcjtModule(s))) };
                QcjtStatus::Ok
            }
            Err(err) => report(err),
        }
    })
}

/// First `count` Betti numbers of the minimal resolution, written to the
/// caller's buffer.
#[no_mangle]
pub extern "C" fn qcjt_betti(
    m: *const QcjtModule,
    out: *mut u64,
    count: usize,
) -> QcjtStatus {
    guarded(|| {
        need!(m);
        need!(out);
        match betti_sequence(unsafe { &(*m).0 }, count) {
            Ok(betti) => {
                let buf = unsafe { std::slice::from_raw_parts_mut(out, count) };
                for (slot, b) in buf.iter_mut().zip(&betti) {
                    *slot = *b as u64;
                }
                QcjtStatus::Ok
            }
            Err(err) => report(err),
        }
    })
}

/// Decides whether the module is a syzygy of the trivial module; writes
/// `SyzygyOfK(i)`, `NotSyzygyOfK(reason)`, or `NotCertified(reason)`.
#[no_mangle]
pub extern "C" fn qcjt_classify(
    m: *const QcjtModule,
    seed: u64,
    out: *mut *mut c_char,
) -> QcjtStatus {
    guarded(|| {
        need!(m);
        need!(out);
        match classify_syzygy_of_k(unsafe { &(*m).0 }, seed) {
            Ok(SyzygyClass::SyzygyOfK { index }) => give_string(out, format!("SyzygyOfK({index})")),
            Ok(SyzygyClass::NotSyzygyOfK { reason }) => {
                give_string(out, format!("NotSyzygyOfK({reason})"))
            }
            Ok(SyzygyClass::NotCertified { reason }) => {
                give_string(out, format!("NotCertified({reason})"))
            }
            Err(err) => report(err),
        }
    })
}
