//! C interface to `curve-canonical`.
//!
//! Every function returns a [`CcStatus`]. Results come back through out
//! pointers; strings are NUL-terminated UTF-8 JSON owned by the caller and
//! released with [`cc_string_free`]. After a non-`Ok` status,
//! [`cc_last_error_message`] and [`cc_last_error_name`] describe the failure
//! on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use curve_canonical::pfaffian::{self, SkewEntries};
use curve_canonical::semigroup::parse_generators;
use curve_canonical::{fracideal, verification, CurveRing, Error};

/// Status codes returned by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// The library rejected the input; see [`cc_last_error_name`].
    DomainError = 3,
    Panic = 4,
}

/// Opaque handle to a semigroup ring `k[[t^Γ]]`.
pub struct CcSemigroup {
    ring: CurveRing,
}

struct Failure {
    status: CcStatus,
    name: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { status: CcStatus::DomainError, name: e.name(), message: e.to_string() }
    }
}

fn null(what: &str) -> Failure {
    Failure { status: CcStatus::NullPointer, name: "NullPointer", message: format!("{what} is null") }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<(CString, CString)>> = const { RefCell::new(None) };
}

fn set_error(f: &Failure) {
    let text = |s: &str| CString::new(s.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some((text(f.name), text(&f.message))));
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    let failure = match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => return CcStatus::Ok,
        Ok(Err(f)) => f,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            Failure { status: CcStatus::Panic, name: "Panic", message }
        }
    };
    set_error(&failure);
    failure.status
}

unsafe fn handle<'a>(h: *const CcSemigroup) -> Result<&'a CcSemigroup, Failure> {
    h.as_ref().ok_or_else(|| null("semigroup handle"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, value: impl serde::Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string(&value).expect("library types serialize");
    write_out(out, CString::new(text).expect("JSON has no NUL").into_raw())
}

fn new_handle(gens: &[i64]) -> Result<*mut CcSemigroup, Failure> {
    let ring = CurveRing::from_generators(gens)?;
    Ok(Box::into_raw(Box::new(CcSemigroup { ring })))
}

/// Creates a semigroup from `len` generators.
///
/// # Safety
/// `gens` must point to `len` readable `int64_t` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_semigroup_new(gens: *const i64, len: usize, out: *mut *mut CcSemigroup) -> CcStatus {
    guard(|| {
        if gens.is_null() && len > 0 {
            return Err(null("generator array"));
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(gens, len) };
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let h = new_handle(slice)?;
        write_out(out, h)
    })
}

/// Creates a semigroup from text such as `"4,7,9"` or `"4 7 9"`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_semigroup_parse(text: *const c_char, out: *mut *mut CcSemigroup) -> CcStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| Failure {
            status: CcStatus::InvalidUtf8,
            name: "InvalidUtf8",
            message: e.to_string(),
        })?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let h = new_handle(&parse_generators(s)?)?;
        write_out(out, h)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cc_semigroup_free(h: *mut CcSemigroup) {
    if !h.is_null() {
        let _ = catch_unwind(AssertUnwindSafe(|| drop(Box::from_raw(h))));
    }
}

/// Frobenius number, −1 for `ℕ`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_semigroup_frobenius(h: *const CcSemigroup, out: *mut i64) -> CcStatus {
    guard(|| write_out(out, handle(h)?.ring.frobenius()))
}

/// Whether `a` lies in the semigroup.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_semigroup_contains(h: *const CcSemigroup, a: i64, out: *mut bool) -> CcStatus {
    guard(|| write_out(out, handle(h)?.ring.contains(a)))
}

/// Curve invariants as JSON.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_invariants_json(h: *const CcSemigroup, out: *mut *mut c_char) -> CcStatus {
    guard(|| write_json(out, handle(h)?.ring.invariants()?))
}

/// Value set of the canonical module as JSON.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_canonical_value_set_json(h: *const CcSemigroup, out: *mut *mut c_char) -> CcStatus {
    guard(|| write_json(out, handle(h)?.ring.canonical_value_set()))
}

/// The shifted canonical ideal `t^s ω` as JSON.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_shift_canonical_json(h: *const CcSemigroup, s: i64, out: *mut *mut c_char) -> CcStatus {
    guard(|| write_json(out, fracideal::shift_canonical(&handle(h)?.ring, s)))
}

/// Herzog equations and the Pfaffian canonical ideal with `a₂₃ = x₁^pn`, as
/// JSON. Requires exactly three minimal generators.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_pfaffian_json(h: *const CcSemigroup, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        let ring = &handle(h)?.ring;
        let result = pfaffian::canonical_from_pfaffian(ring, &SkewEntries::default_for(ring)?)?;
        write_json(out, result)
    })
}

/// Runs the built-in reference checks; the report is written as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_verify_examples_json(out: *mut *mut c_char) -> CcStatus {
    guard(|| write_json(out, verification::verify_examples()?))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. Valid until the next
/// call into the library from this thread.
#[no_mangle]
pub extern "C" fn cc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |(_, m)| m.as_ptr()))
}

/// Error variant name of the last failure on this thread, or null.
#[no_mangle]
pub extern "C" fn cc_last_error_name() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |(n, _)| n.as_ptr()))
}
