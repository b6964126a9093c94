//! C ABI over the torfact library.
//!
//! Fans are opaque heap handles created by the `torfact_fan_*` constructors and
//! released with `torfact_fan_free`. Every fallible call returns a
//! `TorfactStatus`; on failure the message is available from
//! `torfact_last_error_message` on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use torfact::demazure::{classify, demazure_roots, Verdict};
use torfact::fanfile::{read_fan, write_fan};
use torfact::{hirzebruch_fan, product_fan, projective_space_fan, Error, Fan};

/// Opaque fan handle.
pub struct TorfactFan {
    fan: Fan,
    name: Option<String>,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TorfactStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidFan = 4,
    NotComplete = 5,
    InvalidParameter = 6,
    Unbounded = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TorfactVerdict {
    Product = 0,
    NotSemisimple = 1,
    Unrecognized = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: TorfactStatus, msg: impl Into<String>) -> TorfactStatus {
    set_error(msg.into());
    status
}

fn status_of(e: &Error) -> TorfactStatus {
    match e {
        Error::Parse(_) => TorfactStatus::ParseError,
        Error::NotComplete => TorfactStatus::NotComplete,
        Error::UnboundedRootPolyhedron { .. } => TorfactStatus::Unbounded,
        Error::InvalidParameter(_) => TorfactStatus::InvalidParameter,
        _ => TorfactStatus::InvalidFan,
    }
}

fn from_error(e: Error) -> TorfactStatus {
    fail(status_of(&e), e.to_string())
}

/// Runs `f`, turning a panic into `TorfactStatus::Panic`.
fn guard(f: impl FnOnce() -> TorfactStatus) -> TorfactStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(TorfactStatus::Panic, format!("internal error: {msg}"))
        }
    }
}

unsafe fn handle<'a>(fan: *const TorfactFan) -> Result<&'a TorfactFan, TorfactStatus> {
    fan.as_ref()
        .ok_or_else(|| fail(TorfactStatus::NullPointer, "fan handle is null"))
}

unsafe fn emit(out: *mut *mut TorfactFan, fan: Fan, name: Option<String>) -> TorfactStatus {
    *out = Box::into_raw(Box::new(TorfactFan { fan, name }));
    TorfactStatus::Ok
}

/// Parses a NUL-terminated fan file. On success `*out` owns a new handle.
///
/// # Safety
/// `json` must be null or a valid C string; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn torfact_fan_from_json(
    json: *const c_char,
    out: *mut *mut TorfactFan,
) -> TorfactStatus {
    guard(|| {
        if json.is_null() || out.is_null() {
            return fail(TorfactStatus::NullPointer, "argument is null");
        }
        *out = ptr::null_mut();
        let Ok(text) = CStr::from_ptr(json).to_str() else {
            return fail(TorfactStatus::InvalidUtf8, "fan file is not valid UTF-8");
        };
        match read_fan(text) {
            Ok((fan, name)) => emit(out, fan, name),
            Err(e) => from_error(e),
        }
    })
}

/// Fan of projective space of dimension `n`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn torfact_fan_projective_space(
    n: usize,
    out: *mut *mut TorfactFan,
) -> TorfactStatus {
    guard(|| {
        if out.is_null() {
            return fail(TorfactStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        match projective_space_fan(n) {
            Ok(f) => emit(out, f, Some(format!("P^{n}"))),
            Err(e) => from_error(e),
        }
    })
}

/// Fan of the product of projective spaces with dimensions `dims[0..len]`.
///
/// # Safety
/// `dims` must point to `len` readable values; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn torfact_fan_product(
    dims: *const usize,
    len: usize,
    out: *mut *mut TorfactFan,
) -> TorfactStatus {
    guard(|| {
        if out.is_null() || (dims.is_null() && len > 0) {
            return fail(TorfactStatus::NullPointer, "argument is null");
        }
        *out = ptr::null_mut();
        let dims: &[usize] = if len == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(dims, len)
        };
        match product_fan(dims) {
            Ok(f) => {
                let parts: Vec<String> = dims.iter().map(|d| format!("P^{d}")).collect();
                emit(out, f, Some(parts.join(" x ")))
            }
            Err(e) => from_error(e),
        }
    })
}

/// Fan of the Hirzebruch surface with parameter `a`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn torfact_fan_hirzebruch(a: i64, out: *mut *mut TorfactFan) -> TorfactStatus {
    guard(|| {
        if out.is_null() {
            return fail(TorfactStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        match hirzebruch_fan(a) {
            Ok(f) => emit(out, f, Some(format!("F_{a}"))),
            Err(e) => from_error(e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `fan` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn torfact_fan_free(fan: *mut TorfactFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// Lattice rank, or 0 for a null handle.
///
/// # Safety
/// `fan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn torfact_fan_rank(fan: *const TorfactFan) -> usize {
    fan.as_ref().map_or(0, |f| f.fan.rank())
}

/// Number of rays in the skeleton, or 0 for a null handle.
///
/// # Safety
/// `fan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn torfact_fan_ray_count(fan: *const TorfactFan) -> usize {
    fan.as_ref().map_or(0, |f| f.fan.skeleton().len())
}

/// Writes whether the fan covers the whole space.
///
/// # Safety
/// `fan` must be null or a live handle; `complete` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn torfact_fan_is_complete(
    fan: *const TorfactFan,
    complete: *mut bool,
) -> TorfactStatus {
    guard(|| {
        let f = match handle(fan) {
            Ok(f) => f,
            Err(s) => return s,
        };
        if complete.is_null() {
            return fail(TorfactStatus::NullPointer, "complete is null");
        }
        *complete = f.fan.is_complete();
        TorfactStatus::Ok
    })
}

/// Writes the number of Demazure roots.
///
/// # Safety
/// `fan` must be null or a live handle; `count` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn torfact_fan_root_count(
    fan: *const TorfactFan,
    count: *mut usize,
) -> TorfactStatus {
    guard(|| {
        let f = match handle(fan) {
            Ok(f) => f,
            Err(s) => return s,
        };
        if count.is_null() {
            return fail(TorfactStatus::NullPointer, "count is null");
        }
        match demazure_roots(&f.fan) {
            Ok(rs) => {
                *count = rs.len();
                TorfactStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Classifies a complete fan. For a product verdict the factor dimensions are
/// written to `dims[0..*len]`; `*len` is always set to the number of factors
/// (0 for other verdicts). Returns `BUFFER_TOO_SMALL` when `capacity < *len`.
///
/// # Safety
/// `fan` must be null or a live handle; `verdict` and `len` must be null or
/// writable; `dims` must be null or point to `capacity` writable values.
#[no_mangle]
pub unsafe extern "C" fn torfact_fan_classify(
    fan: *const TorfactFan,
    verdict: *mut TorfactVerdict,
    dims: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> TorfactStatus {
    guard(|| {
        let f = match handle(fan) {
            Ok(f) => f,
            Err(s) => return s,
        };
        if verdict.is_null() || len.is_null() {
            return fail(TorfactStatus::NullPointer, "verdict or len is null");
        }
        let c = match classify(&f.fan) {
            Ok(c) => c,
            Err(e) => return from_error(e),
        };
        let found: &[usize] = match &c.verdict {
            Verdict::ProductOfProjectiveSpaces(d) => {
                *verdict = TorfactVerdict::Product;
                d
            }
            Verdict::NotSemisimple => {
                *verdict = TorfactVerdict::NotSemisimple;
                &[]
            }
            Verdict::SemisimpleButUnrecognized => {
                *verdict = TorfactVerdict::Unrecognized;
                &[]
            }
        };
        *len = found.len();
        if found.is_empty() {
            return TorfactStatus::Ok;
        }
        if dims.is_null() || capacity < found.len() {
            return fail(
                TorfactStatus::BufferTooSmall,
                format!("{} factor dimensions do not fit in capacity {capacity}", found.len()),
            );
        }
        ptr::copy_nonoverlapping(found.as_ptr(), dims, found.len());
        TorfactStatus::Ok
    })
}

/// Serializes the fan as a fan file. `*out` must be released with
/// `torfact_string_free`.
///
/// # Safety
/// `fan` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn torfact_fan_to_json(
    fan: *const TorfactFan,
    out: *mut *mut c_char,
) -> TorfactStatus {
    guard(|| {
        let f = match handle(fan) {
            Ok(f) => f,
            Err(s) => return s,
        };
        if out.is_null() {
            return fail(TorfactStatus::NullPointer, "out is null");
        }
        let text = write_fan(&f.fan, f.name.as_deref());
        *out = CString::new(text).expect("fan files contain no nul").into_raw();
        TorfactStatus::Ok
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from `torfact_fan_to_json` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn torfact_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failing call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn torfact_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
