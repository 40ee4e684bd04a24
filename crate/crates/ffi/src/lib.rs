//! C ABI for the ferrex library.
//!
//! Conventions:
//! - every function returns a [`FerrexStatus`]; results go through out
//!   parameters
//! - rational results are written as NUL-terminated `"p/q"` strings into a
//!   caller-supplied buffer
//! - diagrams are opaque handles created from the JSON wire format and
//!   released with [`ferrex_stepfn_free`]
//!
//! The header is generated into `include/ferrex.h` at build time.

use libc::{c_char, c_double, c_int, size_t};
use std::ffi::{CStr, CString};

use ferrex::diagrams::{self, StepFn};
use ferrex::partitions::{self, Partition};
use ferrex::rational::{format_rat, parse_rat, Rat};

/// Status code returned by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FerrexStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    BufferTooSmall = 4,
}

/// Opaque diagram handle.
pub struct FerrexStepFn {
    inner: StepFn,
}

unsafe fn write_str(s: &str, buf: *mut c_char, len: size_t) -> FerrexStatus {
    if buf.is_null() {
        return FerrexStatus::NullPointer;
    }
    let bytes = match CString::new(s) {
        Ok(c) => c.into_bytes_with_nul(),
        Err(_) => return FerrexStatus::InvalidArgument,
    };
    if bytes.len() > len {
        return FerrexStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, bytes.len());
    FerrexStatus::Ok
}

unsafe fn write_rat(r: &Rat, buf: *mut c_char, len: size_t) -> FerrexStatus {
    write_str(&format_rat(r), buf, len)
}

unsafe fn read_rat(s: *const c_char) -> Result<Rat, FerrexStatus> {
    if s.is_null() {
        return Err(FerrexStatus::NullPointer);
    }
    let text = CStr::from_ptr(s)
        .to_str()
        .map_err(|_| FerrexStatus::ParseError)?;
    parse_rat(text).map_err(|_| FerrexStatus::ParseError)
}

/// Parses a step function from its JSON wire format into a new handle.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ferrex_stepfn_from_json(
    json: *const c_char,
    out: *mut *mut FerrexStepFn,
) -> FerrexStatus {
    if json.is_null() || out.is_null() {
        return FerrexStatus::NullPointer;
    }
    let text = match CStr::from_ptr(json).to_str() {
        Ok(t) => t,
        Err(_) => return FerrexStatus::ParseError,
    };
    match StepFn::from_json(text) {
        Ok(f) => {
            *out = Box::into_raw(Box::new(FerrexStepFn { inner: f }));
            FerrexStatus::Ok
        }
        Err(_) => FerrexStatus::ParseError,
    }
}

/// Releases a handle created by [`ferrex_stepfn_from_json`]. NULL is a no-op.
///
/// # Safety
/// `f` must be NULL or a pointer returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ferrex_stepfn_free(f: *mut FerrexStepFn) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// `E|X_f - Y_f|^k` as a `"p/q"` string.
///
/// # Safety
/// `f` must be a live handle; `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ferrex_stepfn_moment(
    f: *const FerrexStepFn,
    k: u32,
    buf: *mut c_char,
    len: size_t,
) -> FerrexStatus {
    if f.is_null() {
        return FerrexStatus::NullPointer;
    }
    let value = diagrams::moment(&(*f).inner, k);
    write_rat(&value, buf, len)
}

/// `E|X_f - Y_f|^k` as a double.
///
/// # Safety
/// `f` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ferrex_stepfn_moment_f64(
    f: *const FerrexStepFn,
    k: u32,
    out: *mut c_double,
) -> FerrexStatus {
    if f.is_null() || out.is_null() {
        return FerrexStatus::NullPointer;
    }
    *out = ferrex::rational::to_f64(&diagrams::moment(&(*f).inner, k));
    FerrexStatus::Ok
}

/// `P(|X_f - Y_f| > delta)` (strict != 0) or `>= delta`, as `"p/q"`.
/// `delta` is a rational string such as `"3/5"`.
///
/// # Safety
/// `f` must be a live handle; `delta` a valid string; `buf` writable.
#[no_mangle]
pub unsafe extern "C" fn ferrex_stepfn_tail(
    f: *const FerrexStepFn,
    delta: *const c_char,
    strict: c_int,
    buf: *mut c_char,
    len: size_t,
) -> FerrexStatus {
    if f.is_null() {
        return FerrexStatus::NullPointer;
    }
    let d = match read_rat(delta) {
        Ok(d) => d,
        Err(s) => return s,
    };
    let value = diagrams::tail(&(*f).inner, &d, strict != 0);
    write_rat(&value, buf, len)
}

/// Conjugate partition: reads `n` parts, writes `n` conjugate parts.
///
/// # Safety
/// `parts` and `out` must each point to `n` readable/writable `size_t`s.
#[no_mangle]
pub unsafe extern "C" fn ferrex_conjugate(
    parts: *const size_t,
    n: size_t,
    out: *mut size_t,
) -> FerrexStatus {
    if parts.is_null() || out.is_null() {
        return FerrexStatus::NullPointer;
    }
    let slice = std::slice::from_raw_parts(parts, n);
    let b = match Partition::new(n, slice.to_vec()) {
        Ok(b) => b,
        Err(_) => return FerrexStatus::InvalidArgument,
    };
    let conj = partitions::conjugate(&b);
    std::ptr::copy_nonoverlapping(conj.parts.as_ptr(), out, n);
    FerrexStatus::Ok
}

/// Gale-Ryser test; `*out` is 1 when `(a, b)` is bigraphic, else 0.
///
/// # Safety
/// `a` and `b` must point to `n` readable `size_t`s; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ferrex_is_bigraphic(
    a: *const size_t,
    b: *const size_t,
    n: size_t,
    out: *mut c_int,
) -> FerrexStatus {
    if a.is_null() || b.is_null() || out.is_null() {
        return FerrexStatus::NullPointer;
    }
    let a = match Partition::new(n, std::slice::from_raw_parts(a, n).to_vec()) {
        Ok(p) => p,
        Err(_) => return FerrexStatus::InvalidArgument,
    };
    let b = match Partition::new(n, std::slice::from_raw_parts(b, n).to_vec()) {
        Ok(p) => p,
        Err(_) => return FerrexStatus::InvalidArgument,
    };
    match partitions::is_bigraphic(&a, &b) {
        Ok(v) => {
            *out = v as c_int;
            FerrexStatus::Ok
        }
        Err(_) => FerrexStatus::InvalidArgument,
    }
}

/// The moment bound from the proven tail envelope, `(2 - 2^-k)/(1 + k)`.
///
/// # Safety
/// `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ferrex_eps_moment_bound(
    k: u32,
    buf: *mut c_char,
    len: size_t,
) -> FerrexStatus {
    if k == 0 {
        return FerrexStatus::InvalidArgument;
    }
    write_rat(&ferrex::bounds::eps_moment_bound(k), buf, len)
}

/// The sharper moment bound for `k >= 3`.
///
/// # Safety
/// `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ferrex_new_bound(
    k: u32,
    buf: *mut c_char,
    len: size_t,
) -> FerrexStatus {
    match ferrex::bounds::new_bound(k) {
        Ok(v) => write_rat(&v, buf, len),
        Err(_) => FerrexStatus::InvalidArgument,
    }
}

/// Independent-pair tail supremum `2 delta (1 - delta)` for rational
/// `delta` in `(1/2, 1]`.
///
/// # Safety
/// `delta` must be a valid string; `buf` must point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ferrex_independent_tail_curve(
    delta: *const c_char,
    buf: *mut c_char,
    len: size_t,
) -> FerrexStatus {
    let d = match read_rat(delta) {
        Ok(d) => d,
        Err(s) => return s,
    };
    match ferrex::bounds::independent_tail_curve(&d) {
        Ok(v) => write_rat(&v, buf, len),
        Err(_) => FerrexStatus::InvalidArgument,
    }
}
