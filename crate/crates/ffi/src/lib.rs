//! C ABI for `skernel`.
//!
//! Objects cross the boundary as opaque handles created from JSON documents
//! and released with the matching `*_free`. Every entry point returns an
//! [`SkStatus`]; on failure the message is available from
//! [`sk_last_error`] on the same thread. Strings handed out by the library
//! are NUL-terminated and must be released with [`sk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use skernel::chain::{homology, ChainComplex};
use skernel::hconstr::{weq_certificate, wrap};
use skernel::simpab::{bar_b, check_kn, check_nk, dold_kan_k, normalize_n, SimplicialAbGroup};
use skernel::simpset::chains::normalized_chains_with;
use skernel::simpset::{SimplicialMap, SimplicialSet};
use skernel::suite::{run_suite, Size, SuiteOptions};
use skernel::{io, Error};

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkStatus {
    Ok = 0,
    /// A verification ran and failed; outputs are still written.
    VerifyFailed = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    Parse = 4,
    Identity = 5,
    Shape = 6,
    Parameter = 7,
    Precondition = 8,
    Range = 9,
    /// A Rust panic was caught at the boundary.
    Internal = 10,
}

pub struct SkComplex(ChainComplex);
pub struct SkSpace(SimplicialSet);
pub struct SkGroup(SimplicialAbGroup);
pub struct SkMap(SimplicialMap);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SkStatus {
    match e {
        Error::Parse(_) => SkStatus::Parse,
        Error::Identity(_) => SkStatus::Identity,
        Error::Shape(_) => SkStatus::Shape,
        Error::Parameter(_) => SkStatus::Parameter,
        Error::Precondition(_) => SkStatus::Precondition,
        Error::Range(_) => SkStatus::Range,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<SkStatus, (SkStatus, String)>) -> SkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal error: panic caught at the C boundary");
            SkStatus::Internal
        }
    }
}

fn fail(e: Error) -> (SkStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (SkStatus, String) {
    (SkStatus::NullPointer, format!("{} is NULL", what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (SkStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (SkStatus::InvalidUtf8, format!("{} is not valid UTF-8", what)))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (SkStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), (SkStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (SkStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s).map_err(|_| (SkStatus::Internal, "string contains NUL".to_string()))?.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn from_json<T, U>(json: *const c_char, out: *mut *mut U, parse: fn(&str) -> skernel::Result<T>, wrap: fn(T) -> U) -> SkStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let v = parse(text).map_err(fail)?;
        write_out(out, wrap(v))?;
        Ok(SkStatus::Ok)
    })
}

unsafe fn to_json<U>(h: *const U, out: *mut *mut c_char, render: fn(&U) -> String) -> SkStatus {
    guard(|| {
        let h = deref(h, "handle")?;
        write_string(out, render(h))?;
        Ok(SkStatus::Ok)
    })
}

unsafe fn free<U>(h: *mut U) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Parses and validates a chain complex document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_complex_from_json(json: *const c_char, out: *mut *mut SkComplex) -> SkStatus {
    from_json(json, out, io::parse_complex, SkComplex)
}

/// Canonical JSON form; release with `sk_string_free`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_complex_to_json(h: *const SkComplex, out: *mut *mut c_char) -> SkStatus {
    to_json(h, out, |h| io::complex_to_json(&h.0))
}

/// # Safety
/// `h` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sk_complex_free(h: *mut SkComplex) {
    free(h)
}

/// Parses and validates a simplicial set document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_space_from_json(json: *const c_char, out: *mut *mut SkSpace) -> SkStatus {
    from_json(json, out, io::parse_space, SkSpace)
}

/// Canonical JSON form; release with `sk_string_free`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_space_to_json(h: *const SkSpace, out: *mut *mut c_char) -> SkStatus {
    to_json(h, out, |h| io::space_to_json(&h.0))
}

/// # Safety
/// `h` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sk_space_free(h: *mut SkSpace) {
    free(h)
}

/// Parses and validates a simplicial abelian group document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_group_from_json(json: *const c_char, out: *mut *mut SkGroup) -> SkStatus {
    from_json(json, out, io::parse_group, SkGroup)
}

/// Canonical JSON form; release with `sk_string_free`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_group_to_json(h: *const SkGroup, out: *mut *mut c_char) -> SkStatus {
    to_json(h, out, |h| io::group_to_json(&h.0))
}

/// # Safety
/// `h` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sk_group_free(h: *mut SkGroup) {
    free(h)
}

/// Parses and validates a simplicial map document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_map_from_json(json: *const c_char, out: *mut *mut SkMap) -> SkStatus {
    from_json(json, out, io::parse_map, SkMap)
}

/// Canonical JSON form; release with `sk_string_free`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_map_to_json(h: *const SkMap, out: *mut *mut c_char) -> SkStatus {
    to_json(h, out, |h| io::map_to_json(&h.0))
}

/// # Safety
/// `h` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sk_map_free(h: *mut SkMap) {
    free(h)
}

/// `H_n` of a complex as text such as `Z^2 + Z/3`.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_complex_homology(c: *const SkComplex, n: i64, out: *mut *mut c_char) -> SkStatus {
    guard(|| {
        let c = deref(c, "complex")?;
        write_string(out, homology(&c.0, n).to_string())?;
        Ok(SkStatus::Ok)
    })
}

/// `H_n` (or reduced `H̃_n` when `reduced` is nonzero) of the normalized
/// chains of a simplicial set.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_space_homology(x: *const SkSpace, n: i64, reduced: bool, out: *mut *mut c_char) -> SkStatus {
    guard(|| {
        let x = deref(x, "space")?;
        if reduced && !x.0.is_pointed() {
            return Err(fail(Error::Precondition("reduced homology needs a pointed set".into())));
        }
        write_string(out, homology(&normalized_chains_with(&x.0, reduced), n).to_string())?;
        Ok(SkStatus::Ok)
    })
}

/// `K(C)` truncated at `dim`.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_dold_kan_k(c: *const SkComplex, dim: usize, out: *mut *mut SkGroup) -> SkStatus {
    guard(|| {
        let c = deref(c, "complex")?;
        write_out(out, SkGroup(dold_kan_k(&c.0, dim)))?;
        Ok(SkStatus::Ok)
    })
}

/// The normalized (Moore) complex `N(A)`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_normalize(a: *const SkGroup, out: *mut *mut SkComplex) -> SkStatus {
    guard(|| {
        let a = deref(a, "group")?;
        write_out(out, SkComplex(normalize_n(&a.0)))?;
        Ok(SkStatus::Ok)
    })
}

/// The bar construction `B(A)`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_bar(a: *const SkGroup, out: *mut *mut SkGroup) -> SkStatus {
    guard(|| {
        let a = deref(a, "group")?;
        write_out(out, SkGroup(bar_b(&a.0)))?;
        Ok(SkStatus::Ok)
    })
}

/// Verifies `N(K(C)) ≅ C` on degrees `0..=dim`: `Ok` or `VerifyFailed`.
///
/// # Safety
/// `c` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_check_nk(c: *const SkComplex, dim: usize) -> SkStatus {
    guard(|| {
        let c = deref(c, "complex")?;
        Ok(if check_nk(&c.0, dim).map_err(fail)? { SkStatus::Ok } else { SkStatus::VerifyFailed })
    })
}

/// Verifies `K(N(A)) ≅ A`: `Ok` or `VerifyFailed`.
///
/// # Safety
/// `a` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sk_check_kn(a: *const SkGroup) -> SkStatus {
    guard(|| {
        let a = deref(a, "group")?;
        Ok(if check_kn(&a.0).map_err(fail)? { SkStatus::Ok } else { SkStatus::VerifyFailed })
    })
}

/// Weak-equivalence certificate of a map as JSON. Returns `VerifyFailed`
/// (with the certificate written) when it does not pass.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_weq_certificate(f: *const SkMap, range: u32, out: *mut *mut c_char) -> SkStatus {
    guard(|| {
        let f = deref(f, "map")?;
        let cert = weq_certificate(&f.0, range).map_err(fail)?;
        write_string(out, cert.to_json())?;
        Ok(if cert.pass { SkStatus::Ok } else { SkStatus::VerifyFailed })
    })
}

/// The counit `Wr(X) → X` truncated at `dim`, as a map handle.
///
/// # Safety
/// `x` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_wrap_counit(x: *const SkSpace, dim: usize, out: *mut *mut SkMap) -> SkStatus {
    guard(|| {
        let x = deref(x, "space")?;
        let w = wrap(&x.0, dim).map_err(fail)?;
        write_out(out, SkMap(w.counit))?;
        Ok(SkStatus::Ok)
    })
}

/// Runs the verification suite; `medium` selects the larger instance
/// counts and `threads = 0` runs sequentially. The report text is written
/// to `out`; the status is `VerifyFailed` when any check fails.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sk_suite_run(seed: u64, medium: bool, threads: usize, out: *mut *mut c_char) -> SkStatus {
    guard(|| {
        let size = if medium { Size::Medium } else { Size::Small };
        let report = run_suite(SuiteOptions { seed, size, threads, inject_fault: false });
        write_string(out, report.render())?;
        Ok(if report.passed() { SkStatus::Ok } else { SkStatus::VerifyFailed })
    })
}
