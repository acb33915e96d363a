//! C ABI over `stratsum`.
//!
//! Objects cross the boundary as opaque handles created and released by this
//! library. Every fallible call returns a [`StratsumStatus`]; on failure the
//! message is available from [`stratsum_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use stratsum::expsum::{sum_bruteforce, sum_reduction};
use stratsum::ffield::ModulusSpec;
use stratsum::poly::{parse_poly, MultiPoly};
use stratsum::strata::{build_strata, StrataTable};
use stratsum::varieties::count_mod_p2;
use stratsum::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StratsumStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Hypothesis = 5,
    TooLarge = 6,
    Internal = 7,
}

/// Parsed homogeneous form.
pub struct StratsumPoly(MultiPoly);

/// Estimated strata over `F_p^n`.
pub struct StratsumStrata(StrataTable);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct StratsumLiftCount {
    pub n1: u64,
    pub n2_enumerated: u64,
    /// Valid only when `formula_valid` is nonzero.
    pub n2_formula: u64,
    pub formula_valid: i32,
    pub agree: i32,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct StratsumSum {
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    /// 1 when the reduction and brute-force routes agree exactly.
    pub equal_exact: i32,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> StratsumStatus {
    match e {
        Error::Parse { .. } | Error::VariableOutOfRange { .. } | Error::ZeroPolynomial | Error::ConstantPolynomial => {
            StratsumStatus::Parse
        }
        Error::Hypothesis(_) => StratsumStatus::Hypothesis,
        Error::TooLarge(_) => StratsumStatus::TooLarge,
        Error::Invariant(_) => StratsumStatus::Internal,
        _ => StratsumStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (StratsumStatus, String)>) -> StratsumStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => StratsumStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            StratsumStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (StratsumStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (StratsumStatus, String) {
    (StratsumStatus::NullPointer, format!("{what} is null"))
}

unsafe fn slice<'a>(ptr: *const u64, len: usize) -> Result<&'a [u64], (StratsumStatus, String)> {
    if ptr.is_null() {
        return Err(null("h"));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn stratsum_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn stratsum_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses `text` in variables `x1..x{nvars}`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stratsum_poly_parse(
    text: *const c_char,
    nvars: usize,
    out: *mut *mut StratsumPoly,
) -> StratsumStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (StratsumStatus::InvalidUtf8, "text is not UTF-8".to_string()))?;
        let f = parse_poly(s, nvars).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(StratsumPoly(f)));
        Ok(())
    })
}

/// # Safety
/// `poly` must come from [`stratsum_poly_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn stratsum_poly_free(poly: *mut StratsumPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// Total degree, or 0 for a null handle.
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn stratsum_poly_degree(poly: *const StratsumPoly) -> u32 {
    poly.as_ref().map_or(0, |p| p.0.degree())
}

/// `#V(F_p)` and `#V(Z/p^2Z)` by enumeration and by the lift formula.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stratsum_count_mod_p2(
    poly: *const StratsumPoly,
    p: u64,
    out: *mut StratsumLiftCount,
) -> StratsumStatus {
    guard(|| {
        let f = poly.as_ref().ok_or_else(|| null("poly"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let c = count_mod_p2(&f.0, p).map_err(lib_err)?;
        *out = StratsumLiftCount {
            n1: c.n1,
            n2_enumerated: c.n2_enumerated,
            n2_formula: c.n2_formula.unwrap_or(0),
            formula_valid: c.n2_formula.is_some() as i32,
            agree: (c.agree == Some(true)) as i32,
        };
        Ok(())
    })
}

/// `S(h; p^2)` by reduction, cross-checked exactly against brute force.
///
/// # Safety
/// `poly` must be a live handle, `h` must point to `h_len` values and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn stratsum_sum_mod_p2(
    poly: *const StratsumPoly,
    h: *const u64,
    h_len: usize,
    p: u64,
    out: *mut StratsumSum,
) -> StratsumStatus {
    guard(|| {
        let f = poly.as_ref().ok_or_else(|| null("poly"))?;
        let h = slice(h, h_len)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let s = sum_reduction(&f.0, h, p).map_err(lib_err)?;
        let m = ModulusSpec::prime_square(p).map_err(lib_err)?;
        let b = sum_bruteforce(&f.0, h, &m).map_err(lib_err)?;
        *out = StratsumSum {
            re: s.approx.re,
            im: s.approx.im,
            abs: s.magnitude,
            equal_exact: (s.exact == b.exact) as i32,
        };
        Ok(())
    })
}

/// Builds the estimated strata of `F_p^n` using extensions up to degree `kmax`.
///
/// # Safety
/// `poly` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stratsum_strata_build(
    poly: *const StratsumPoly,
    p: u64,
    kmax: u32,
    out: *mut *mut StratsumStrata,
) -> StratsumStatus {
    guard(|| {
        let f = poly.as_ref().ok_or_else(|| null("poly"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let t = build_strata(&f.0, p, kmax).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(StratsumStrata(t)));
        Ok(())
    })
}

/// `#G_{F,j}(F_p)`.
///
/// # Safety
/// `strata` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn stratsum_strata_size(
    strata: *const StratsumStrata,
    j: usize,
    out: *mut u64,
) -> StratsumStatus {
    guard(|| {
        let t = strata.as_ref().ok_or_else(|| null("strata"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = *t.0.sizes.get(j).ok_or_else(|| {
            (
                StratsumStatus::InvalidArgument,
                format!("j = {j} exceeds n = {}", t.0.nvars()),
            )
        })?;
        Ok(())
    })
}

/// Estimated `dim W_{F,h}` for `h` in `F_p^n`.
///
/// # Safety
/// `strata` must be a live handle, `h` must point to `h_len` values and `out` be valid.
#[no_mangle]
pub unsafe extern "C" fn stratsum_strata_dim(
    strata: *const StratsumStrata,
    h: *const u64,
    h_len: usize,
    out: *mut usize,
) -> StratsumStatus {
    guard(|| {
        let t = strata.as_ref().ok_or_else(|| null("strata"))?;
        let h = slice(h, h_len)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = t.0.dim_est(h).map_err(lib_err)?;
        Ok(())
    })
}

/// # Safety
/// `strata` must come from [`stratsum_strata_build`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn stratsum_strata_free(strata: *mut StratsumStrata) {
    if !strata.is_null() {
        drop(Box::from_raw(strata));
    }
}
