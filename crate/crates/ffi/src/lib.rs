//! C interface to veechlab.
//!
//! Objects are handed out as opaque pointers and released with the matching `_free`
//! function. Every fallible call returns a [`VlStatus`]; on failure a message is available
//! from [`vl_last_error`] until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use veechlab::certificates::{verify_model, Certificate, CoverModel, Degree, Verdict};
use veechlab::covering::{Monodromy, Perm};
use veechlab::quotient::quotient_for;
use veechlab::Error;

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VlStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad `n`, degree, monodromy or JSON.
    InvalidArgument = 2,
    /// A computation hit a cap or an internal check.
    ComputationFailed = 3,
    /// The library panicked; the handle passed in should not be reused.
    Panic = 4,
}

/// Verdict of a certificate.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VlVerdict {
    Pass = 0,
    Fail = 1,
    Inconclusive = 2,
}

impl From<Verdict> for VlVerdict {
    fn from(v: Verdict) -> VlVerdict {
        match v {
            Verdict::Pass => VlVerdict::Pass,
            Verdict::Fail => VlVerdict::Fail,
            Verdict::Inconclusive => VlVerdict::Inconclusive,
        }
    }
}

/// A covering of the base surface.
pub struct VlCover(CoverModel);

/// A certificate produced by [`vl_verify`] or parsed from JSON.
pub struct VlCertificate(Certificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> VlStatus {
    match e {
        Error::BoundExceeded { .. } | Error::CapExceeded(_) | Error::BadRelator(_) | Error::Internal(_) => {
            VlStatus::ComputationFailed
        }
        _ => VlStatus::InvalidArgument,
    }
}

fn fail(status: VlStatus, msg: String) -> VlStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), VlStatus>) -> VlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => VlStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            fail(VlStatus::Panic, msg)
        }
    }
}

fn lib<T>(r: veechlab::Result<T>) -> Result<T, VlStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), VlStatus> {
    if p.is_null() {
        Err(fail(VlStatus::NullPointer, format!("{} is null", what)))
    } else {
        Ok(())
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, VlStatus> {
    non_null(s, what)?;
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(VlStatus::InvalidArgument, format!("{} is not UTF-8: {}", what, e)))
}

fn owned_string(s: String) -> Result<*mut c_char, VlStatus> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| fail(VlStatus::ComputationFailed, e.to_string()))
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, VlStatus> {
    serde_json::to_string(v).map_err(|e| fail(VlStatus::ComputationFailed, e.to_string()))
}

/// Message of the last failing call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn vl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn vl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// The standard covering of degree `d` over the base surface for `n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vl_cover_standard(n: usize, d: usize, out: *mut *mut VlCover) -> VlStatus {
    guard(|| {
        non_null(out, "out")?;
        if d < 2 {
            return Err(fail(VlStatus::InvalidArgument, Error::InvalidDegree(d).to_string()));
        }
        let m = lib(CoverModel::standard(n, Degree::Finite(d)))?;
        *out = Box::into_raw(Box::new(VlCover(m)));
        Ok(())
    })
}

/// The `Z`-indexed covering over the base surface for `n`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vl_cover_infinite(n: usize, out: *mut *mut VlCover) -> VlStatus {
    guard(|| {
        non_null(out, "out")?;
        let m = lib(CoverModel::standard(n, Degree::Infinite))?;
        *out = Box::into_raw(Box::new(VlCover(m)));
        Ok(())
    })
}

/// A finite covering from generator images, given as a JSON array of image arrays:
/// `[[1,0,2],[0,2,1],...]`, one per base generator.
///
/// # Safety
/// `perms_json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vl_cover_custom(n: usize, perms_json: *const c_char, out: *mut *mut VlCover) -> VlStatus {
    guard(|| {
        non_null(out, "out")?;
        let s = text(perms_json, "perms_json")?;
        let images: Vec<Vec<usize>> =
            serde_json::from_str(s).map_err(|e| fail(VlStatus::InvalidArgument, e.to_string()))?;
        let perms = images
            .into_iter()
            .map(|v| lib(Perm::from_images(v)))
            .collect::<Result<Vec<_>, _>>()?;
        let m = lib(Monodromy::custom(n, perms))?;
        *out = Box::into_raw(Box::new(VlCover(CoverModel::from_monodromy(m))));
        Ok(())
    })
}

/// Number of sheets, or 0 for the `Z`-indexed covering.
///
/// # Safety
/// `cover` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vl_cover_degree(cover: *const VlCover, out: *mut usize) -> VlStatus {
    guard(|| {
        non_null(cover, "cover")?;
        non_null(out, "out")?;
        *out = match (*cover).0.degree() {
            Degree::Finite(d) => d,
            Degree::Infinite => 0,
        };
        Ok(())
    })
}

/// # Safety
/// `cover` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn vl_cover_free(cover: *mut VlCover) {
    if !cover.is_null() {
        drop(Box::from_raw(cover));
    }
}

/// Certifies the Veech group of the covering.
///
/// # Safety
/// `cover` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vl_verify(cover: *const VlCover, out: *mut *mut VlCertificate) -> VlStatus {
    guard(|| {
        non_null(cover, "cover")?;
        non_null(out, "out")?;
        let c = lib(verify_model(&(*cover).0))?;
        *out = Box::into_raw(Box::new(VlCertificate(c)));
        Ok(())
    })
}

/// Stored verdict of the certificate.
///
/// # Safety
/// `cert` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vl_certificate_verdict(cert: *const VlCertificate, out: *mut VlVerdict) -> VlStatus {
    guard(|| {
        non_null(cert, "cert")?;
        non_null(out, "out")?;
        *out = (*cert).0.verdict.into();
        Ok(())
    })
}

/// Verdict recomputed from the evidence alone.
///
/// # Safety
/// `cert` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vl_certificate_revalidate(cert: *const VlCertificate, out: *mut VlVerdict) -> VlStatus {
    guard(|| {
        non_null(cert, "cert")?;
        non_null(out, "out")?;
        *out = (*cert).0.revalidate().into();
        Ok(())
    })
}

/// JSON form of the certificate; release with [`vl_string_free`].
///
/// # Safety
/// `cert` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vl_certificate_to_json(cert: *const VlCertificate, out: *mut *mut c_char) -> VlStatus {
    guard(|| {
        non_null(cert, "cert")?;
        non_null(out, "out")?;
        *out = owned_string(to_json(&(*cert).0)?)?;
        Ok(())
    })
}

/// Parses a certificate written by [`vl_certificate_to_json`].
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vl_certificate_from_json(json: *const c_char, out: *mut *mut VlCertificate) -> VlStatus {
    guard(|| {
        non_null(out, "out")?;
        let s = text(json, "json")?;
        let c: Certificate = serde_json::from_str(s).map_err(|e| fail(VlStatus::InvalidArgument, e.to_string()))?;
        *out = Box::into_raw(Box::new(VlCertificate(c)));
        Ok(())
    })
}

/// # Safety
/// `cert` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn vl_certificate_free(cert: *mut VlCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// Genus, cusp widths, elliptic points and index of the quotient, as JSON; release with
/// [`vl_string_free`].
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn vl_quotient_json(n: usize, out: *mut *mut c_char) -> VlStatus {
    guard(|| {
        non_null(out, "out")?;
        let (_, q) = lib(quotient_for(n))?;
        *out = owned_string(to_json(&q)?)?;
        Ok(())
    })
}

/// # Safety
/// `s` must be a string returned by this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn vl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
