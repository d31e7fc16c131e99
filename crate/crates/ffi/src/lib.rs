//! C interface to the hnstrata engine.
//!
//! Objects cross the boundary as opaque handles; results come back as
//! NUL-terminated JSON strings owned by the caller (release them with
//! `hns_string_free`). Every fallible call returns an `HnsStatus`; the message
//! of the last failure on the calling thread is available from
//! `hns_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hnstrata::classes::{euler_form, KClass};
use hnstrata::cli::{cmd_hn_types, cmd_peel, cmd_volss, Format};
use hnstrata::curve::{VolMode, ZetaDatum};
use hnstrata::hall::element_from_json;
use hnstrata::quiver::{DimVector, QuiverConfig, QuiverVolumes};
use hnstrata::scalars::render_rational;
use hnstrata::HnsError;
use num_rational::Rational64;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HnsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    Precondition = 5,
    TooLarge = 6,
    Internal = 7,
}

/// A curve given by its zeta function, with cached volumes.
pub struct HnsZeta {
    datum: ZetaDatum,
}

/// A quiver with stability parameter and field size, with cached volumes.
pub struct HnsQuiver {
    vols: QuiverVolumes,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &HnsError) -> HnsStatus {
    match err {
        HnsError::Parse(_) | HnsError::Io(_) => HnsStatus::Parse,
        HnsError::WindowTooLarge(_) | HnsError::NonTermination(_) => HnsStatus::TooLarge,
        HnsError::Precondition(_) | HnsError::NoAdmissibleVertex(_) | HnsError::NotConvergent(_) => {
            HnsStatus::Precondition
        }
        HnsError::DefensiveAssertion(_) => HnsStatus::Internal,
        _ => HnsStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and turning panics into `Internal`.
fn guard<F: FnOnce() -> Result<(), (HnsStatus, String)>>(f: F) -> HnsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HnsStatus::Ok,
        Ok(Err((s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            HnsStatus::Internal
        }
    }
}

fn lift<T>(r: hnstrata::Result<T>) -> Result<T, (HnsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (HnsStatus, String) {
    (HnsStatus::NullPointer, format!("{} is null", what))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (HnsStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (HnsStatus::InvalidUtf8, format!("{} is not UTF-8", what)))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (HnsStatus, String)> {
    let c = CString::new(s).map_err(|_| (HnsStatus::Internal, "NUL in output".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn render<F: FnOnce(&mut Vec<u8>) -> hnstrata::Result<()>>(f: F) -> Result<String, (HnsStatus, String)> {
    let mut buf = Vec::new();
    lift(f(&mut buf))?;
    Ok(String::from_utf8(buf).expect("utf-8 output"))
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hns_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hns_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Euler form of two classes `(r, d)` on a curve of genus `g`.
#[no_mangle]
pub extern "C" fn hns_euler_form(r1: i64, d1: i64, r2: i64, d2: i64, g: i64) -> i64 {
    euler_form(&KClass::new(r1, d1), &KClass::new(r2, d2), g)
}

/// Parses a zeta datum (`q`, `genus`, `numerator`) from TOML text.
///
/// # Safety
/// `toml` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hns_zeta_from_toml(toml: *const c_char, out: *mut *mut HnsZeta) -> HnsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let datum = lift(ZetaDatum::from_toml_str(read_str(toml, "toml")?))?;
        *out = Box::into_raw(Box::new(HnsZeta { datum }));
        Ok(())
    })
}

/// Builds a zeta datum from the numerator coefficients `a_0 .. a_2g`.
///
/// # Safety
/// `numerator` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hns_zeta_new(
    q: u64,
    genus: u32,
    numerator: *const i64,
    len: usize,
    out: *mut *mut HnsZeta,
) -> HnsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if numerator.is_null() && len > 0 {
            return Err(null("numerator"));
        }
        let coeffs = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(numerator, len).to_vec()
        };
        let datum = lift(ZetaDatum::new(q, genus, coeffs))?;
        *out = Box::into_raw(Box::new(HnsZeta { datum }));
        Ok(())
    })
}

/// # Safety
/// `z` must come from `hns_zeta_*` and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hns_zeta_free(z: *mut HnsZeta) {
    if !z.is_null() {
        drop(Box::from_raw(z));
    }
}

/// Semistable volume of class `(r, d)`; `mode` is `"exact"` or `"trunc:K"`.
/// Writes a JSON document to `out`.
///
/// # Safety
/// `z` must be a live handle, `mode` a valid C string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hns_vol_ss(
    z: *const HnsZeta,
    r: i64,
    d: i64,
    mode: *const c_char,
    out: *mut *mut c_char,
) -> HnsStatus {
    guard(|| {
        let z = z.as_ref().ok_or_else(|| null("zeta"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let mode: VolMode = lift(read_str(mode, "mode")?.parse())?;
        let s = render(|buf| cmd_volss(&z.datum, KClass::new(r, d), mode, Format::Json, buf))?;
        write_string(out, s)
    })
}

/// HN types of weight `(r, d)` with first slope `>= num/den`, as JSON.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hns_hn_types_json(
    r: i64,
    d: i64,
    min_slope_num: i64,
    min_slope_den: i64,
    vec_only: bool,
    genus: i64,
    out: *mut *mut c_char,
) -> HnsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if min_slope_den <= 0 {
            return Err((
                HnsStatus::InvalidInput,
                "slope denominator must be positive".into(),
            ));
        }
        let mu = Rational64::new(min_slope_num, min_slope_den);
        let s = render(|buf| cmd_hn_types(KClass::new(r, d), mu, vec_only, genus, Format::Json, buf))?;
        write_string(out, s)
    })
}

/// Peels the strata of `noise_json` (a Hall element) off the semistable
/// function of `(r, d)`; writes the certificate JSON.
///
/// # Safety
/// `noise_json` must be a valid C string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hns_peel_json(
    genus: i64,
    r: i64,
    d: i64,
    noise_json: *const c_char,
    out: *mut *mut c_char,
) -> HnsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let noise = lift(element_from_json(read_str(noise_json, "noise_json")?))?;
        let s = render(|buf| cmd_peel(genus, KClass::new(r, d), &noise, buf))?;
        write_string(out, s)
    })
}

/// Loads a quiver from TOML (`vertices`, `arrows`, `theta`; theta required)
/// for counting over `F_q`.
///
/// # Safety
/// `toml` must be a valid C string; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hns_quiver_from_toml(
    toml: *const c_char,
    q: u64,
    out: *mut *mut HnsQuiver,
) -> HnsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let cfg = lift(QuiverConfig::from_toml_str(read_str(toml, "toml")?))?;
        let theta = cfg
            .theta
            .ok_or_else(|| (HnsStatus::InvalidInput, "quiver TOML has no theta".to_string()))?;
        let vols = lift(QuiverVolumes::new(cfg.quiver, theta, q))?;
        *out = Box::into_raw(Box::new(HnsQuiver { vols }));
        Ok(())
    })
}

/// Semistable volume of dimension vector `dims[0..len]`, written as `"num/den"`.
///
/// # Safety
/// `h` must be a live handle, `dims` point to `len` values, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hns_quiver_vol_ss(
    h: *const HnsQuiver,
    dims: *const i64,
    len: usize,
    out: *mut *mut c_char,
) -> HnsStatus {
    guard(|| {
        let h = h.as_ref().ok_or_else(|| null("quiver"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        if dims.is_null() {
            return Err(null("dims"));
        }
        let d = lift(DimVector::new(std::slice::from_raw_parts(dims, len).to_vec()))?;
        if d.is_zero() {
            return Err((HnsStatus::Precondition, "zero dimension vector".into()));
        }
        let v = lift(h.vols.vol_ss(&d))?;
        write_string(out, render_rational(&v))
    })
}

/// # Safety
/// `h` must come from `hns_quiver_from_toml` and not have been freed. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn hns_quiver_free(h: *mut HnsQuiver) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}
