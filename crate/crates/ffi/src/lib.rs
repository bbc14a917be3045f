//! C interface to `popswitch`.
//!
//! Every function returns a [`PsStatus`]. On failure the message is kept
//! per thread and read with [`ps_last_error`]. Strings handed out are owned
//! by the caller and released with [`ps_string_free`]; elements with
//! [`ps_element_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use popswitch::jw::{check_jw_properties, jones_wenzl};
use popswitch::karoubi::decompose_jw;
use popswitch::otl::Chirality;
use popswitch::qarith::{quantum_binom, quantum_int};
use popswitch::tldiag::{Element, Matching};
use popswitch::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Domain = 3,
    Parse = 4,
    Arity = 5,
    NotFound = 6,
    Internal = 7,
    Panic = 8,
}

/// Opaque Temperley-Lieb element.
pub struct PsElement(Element);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn status_of(e: &Error) -> PsStatus {
    match e {
        Error::Domain(_) => PsStatus::Domain,
        Error::Parse(_) | Error::InvalidDiagram(_) => PsStatus::Parse,
        Error::ArityMismatch { .. } | Error::ShapeMismatch(_) => PsStatus::Arity,
        Error::NotFound(_) => PsStatus::NotFound,
        _ => PsStatus::Internal,
    }
}

fn fail(status: PsStatus, msg: impl Into<String>) -> PsStatus {
    set_error(msg);
    status
}

/// Runs `f`, recording errors and trapping panics.
fn guard(f: impl FnOnce() -> Result<(), PsStatus>) -> PsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(PsStatus::Panic, "panic inside popswitch"),
    }
}

fn check<T>(r: popswitch::Result<T>) -> Result<T, PsStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn non_null<T>(p: *const T, name: &str) -> Result<(), PsStatus> {
    if p.is_null() {
        Err(fail(PsStatus::NullPointer, format!("{name} is null")))
    } else {
        Ok(())
    }
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, PsStatus> {
    non_null(p, name)?;
    CStr::from_ptr(p).to_str().map_err(|_| fail(PsStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), PsStatus> {
    non_null(out, "out")?;
    let c = CString::new(s).map_err(|_| fail(PsStatus::Internal, "interior NUL in output"))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn element<'a>(p: *const PsElement) -> Result<&'a Element, PsStatus> {
    non_null(p, "element")?;
    Ok(&(*p).0)
}

unsafe fn write_element(out: *mut *mut PsElement, e: Element) -> Result<(), PsStatus> {
    non_null(out, "out")?;
    *out = Box::into_raw(Box::new(PsElement(e)));
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call on the same thread.
#[no_mangle]
pub extern "C" fn ps_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ps_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `[n]` in canonical text form.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ps_quantum_int(n: u32, out: *mut *mut c_char) -> PsStatus {
    guard(|| write_string(out, quantum_int(n).to_string()))
}

/// The quantum binomial `[n choose k]` in canonical text form.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ps_quantum_binom(n: i64, k: i64, out: *mut *mut c_char) -> PsStatus {
    guard(|| write_string(out, check(quantum_binom(n, k))?.to_string()))
}

/// The Jones-Wenzl idempotent on `n` strands.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ps_jones_wenzl(n: usize, out: *mut *mut PsElement) -> PsStatus {
    guard(|| {
        if n == 0 {
            return Err(fail(PsStatus::Domain, "n must be at least 1"));
        }
        write_element(out, check(jones_wenzl(n))?.element)
    })
}

/// A single diagram such as `TL(2,2){(b0,b1),(t0,t1)}`, coefficient 1.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ps_element_from_diagram(text: *const c_char, out: *mut *mut PsElement) -> PsStatus {
    guard(|| {
        let m: Matching = check(read_str(text, "text")?.parse())?;
        write_element(out, Element::from_diagram(m))
    })
}

/// `upper ∘ lower`.
///
/// # Safety
/// Both elements must be live handles; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ps_element_compose(
    upper: *const PsElement,
    lower: *const PsElement,
    out: *mut *mut PsElement,
) -> PsStatus {
    guard(|| {
        let c = check(element(upper)?.compose(element(lower)?))?;
        write_element(out, c)
    })
}

/// # Safety
/// `e` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ps_element_to_string(e: *const PsElement, out: *mut *mut c_char) -> PsStatus {
    guard(|| write_string(out, element(e)?.to_string()))
}

/// Closure (Markov trace) of an endomorphism.
///
/// # Safety
/// `e` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ps_element_closure(e: *const PsElement, out: *mut *mut c_char) -> PsStatus {
    guard(|| write_string(out, check(element(e)?.close_trace())?.to_string()))
}

/// Sets `*passed` to whether `e` is a Jones-Wenzl idempotent.
///
/// # Safety
/// `e` must be a live handle; `passed` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ps_element_check_jw(e: *const PsElement, passed: *mut bool) -> PsStatus {
    guard(|| {
        let rep = check(check_jw_properties(element(e)?))?;
        non_null(passed, "passed")?;
        *passed = rep.all_pass();
        Ok(())
    })
}

/// # Safety
/// `e` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ps_element_free(e: *mut PsElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Text report of the verified decomposition of `p_n`, `1 <= n <= 4`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ps_decompose(n: usize, mirrored: bool, out: *mut *mut c_char) -> PsStatus {
    guard(|| {
        let c = if mirrored { Chirality::Mirrored } else { Chirality::Standard };
        write_string(out, check(decompose_jw(n, c))?.to_string())
    })
}
