//! C interface to `holder-core`.
//!
//! Germs and complexes cross the boundary as opaque handles owned by the
//! caller and released with the matching `*_free`. Every fallible call
//! returns a [`HolderStatus`]; on failure the message is available from
//! [`holder_last_error`] until the next call on the same thread. Strings
//! handed out by the library are released with [`holder_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use holder_core::classifier::{build_holder_complex, classify_inner, GermComplexReport};
use holder_core::complex::canonical_form;
use holder_core::contact::{contact_order, contact_order_radius, default_depth, PuiseuxArc};
use holder_core::germ::{parse_germ, MapGerm};
use holder_core::Error;

/// Result codes. Zero is success; every other value has a message in
/// [`holder_last_error`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HolderStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidGerm = 4,
    FiniteDeterminacy = 5,
    Truncation = 6,
    InvalidArc = 7,
    Limit = 8,
    Internal = 9,
}

/// A parsed map germ `(x, p, q)`.
pub struct HolderGerm(MapGerm);

/// Link graph and canonical complex of a germ.
pub struct HolderComplex(GermComplexReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HolderStatus {
    match e {
        Error::Parse { .. } => HolderStatus::Parse,
        Error::NonHomogeneous { .. } | Error::DegreeTooLow { .. } | Error::ZeroPolynomial => HolderStatus::InvalidGerm,
        Error::FiniteDeterminacy(_) => HolderStatus::FiniteDeterminacy,
        Error::Truncation { .. } => HolderStatus::Truncation,
        Error::InvalidArc(_) => HolderStatus::InvalidArc,
        Error::NonCanonical(_) => HolderStatus::Limit,
        _ => HolderStatus::Internal,
    }
}

/// Runs `body`, turning errors and panics into a status plus message.
fn guard(body: impl FnOnce() -> Result<(), (HolderStatus, String)>) -> HolderStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => HolderStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            HolderStatus::Internal
        }
    }
}

fn core(e: Error) -> (HolderStatus, String) {
    (status_of(&e), e.to_string())
}

/// # Safety
/// `p` is null or a NUL-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (HolderStatus, String)> {
    if p.is_null() {
        return Err((HolderStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (HolderStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn null(what: &str) -> (HolderStatus, String) {
    (HolderStatus::NullArgument, format!("{what} is null"))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn holder_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` is null or came from this library and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn holder_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses germ file text (`p = ...`, `q = ...`, optional `name = "..."`).
///
/// # Safety
/// `text` is a NUL-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn holder_germ_parse(text: *const c_char, out: *mut *mut HolderGerm) -> HolderStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let f = parse_germ(read_str(text, "text")?).map_err(core)?;
        *out = Box::into_raw(Box::new(HolderGerm(f)));
        Ok(())
    })
}

/// # Safety
/// `germ` is null or came from [`holder_germ_parse`] and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn holder_germ_free(germ: *mut HolderGerm) {
    if !germ.is_null() {
        drop(Box::from_raw(germ));
    }
}

/// Builds the link graph and canonical complex of `germ`.
///
/// # Safety
/// `germ` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn holder_germ_complex(germ: *const HolderGerm, out: *mut *mut HolderComplex) -> HolderStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let f = germ.as_ref().ok_or_else(|| null("germ"))?;
        let rep = build_holder_complex(&f.0).map_err(core)?;
        *out = Box::into_raw(Box::new(HolderComplex(rep)));
        Ok(())
    })
}

/// # Safety
/// `complex` is null or came from [`holder_germ_complex`] and has not been freed.
#[no_mangle]
pub unsafe extern "C" fn holder_complex_free(complex: *mut HolderComplex) {
    if !complex.is_null() {
        drop(Box::from_raw(complex));
    }
}

/// Vertex and edge counts of the canonical complex.
///
/// # Safety
/// `complex` is a live handle; each output is writable or null.
#[no_mangle]
pub unsafe extern "C" fn holder_complex_size(
    complex: *const HolderComplex,
    vertices: *mut usize,
    edges: *mut usize,
) -> HolderStatus {
    guard(|| {
        let c = &complex.as_ref().ok_or_else(|| null("complex"))?.0.canonical;
        if let Some(v) = vertices.as_mut() {
            *v = c.vertex_count();
        }
        if let Some(e) = edges.as_mut() {
            *e = c.edge_count();
        }
        Ok(())
    })
}

/// Canonical form string of the canonical complex, e.g. `V1;L(1:1/1)`.
/// Release with [`holder_string_free`].
///
/// # Safety
/// `complex` is a live handle and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn holder_complex_canonical_form(
    complex: *const HolderComplex,
    out: *mut *mut c_char,
) -> HolderStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let c = complex.as_ref().ok_or_else(|| null("complex"))?;
        *out = to_c(canonical_form(&c.0.canonical).map_err(core)?);
        Ok(())
    })
}

/// Decides inner equivalence. `equivalent` receives 1 or 0.
///
/// # Safety
/// `f` and `g` are live handles and `equivalent` is writable.
#[no_mangle]
pub unsafe extern "C" fn holder_classify(
    f: *const HolderGerm,
    g: *const HolderGerm,
    equivalent: *mut c_int,
) -> HolderStatus {
    guard(|| {
        let out = equivalent.as_mut().ok_or_else(|| null("equivalent"))?;
        let f = f.as_ref().ok_or_else(|| null("f"))?;
        let g = g.as_ref().ok_or_else(|| null("g"))?;
        let c = classify_inner(&f.0, &g.0).map_err(core)?;
        *out = c.verdict.is_yes() as c_int;
        Ok(())
    })
}

/// Contact order of two arc literals such as `(t, t^2, t^(5/2))`.
///
/// `exact` receives `num/den` or `inf` (release with [`holder_string_free`]);
/// `approx` receives the value as a double, infinity for coinciding arcs.
/// Either output may be null. Both computation routes run; a disagreement
/// is reported as [`HolderStatus::Internal`].
///
/// # Safety
/// `a` and `b` are NUL-terminated strings; outputs are writable or null.
#[no_mangle]
pub unsafe extern "C" fn holder_contact_order(
    a: *const c_char,
    b: *const c_char,
    exact: *mut *mut c_char,
    approx: *mut f64,
) -> HolderStatus {
    guard(|| {
        if let Some(e) = exact.as_mut() {
            *e = ptr::null_mut();
        }
        let a = PuiseuxArc::from_literal(read_str(a, "a")?, "a").map_err(core)?;
        let b = PuiseuxArc::from_literal(read_str(b, "b")?, "b").map_err(core)?;
        let k = contact_order(&a, &b).map_err(core)?;
        let radius = contact_order_radius(&a, &b, &default_depth(&a, &b)).map_err(core)?;
        if k != radius {
            return Err((HolderStatus::Internal, format!("contact routes disagree: {k} vs {radius}")));
        }
        if let Some(x) = approx.as_mut() {
            *x = k.to_f64();
        }
        if let Some(e) = exact.as_mut() {
            *e = to_c(k.fraction());
        }
        Ok(())
    })
}
