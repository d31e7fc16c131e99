use std::ffi::{CStr, CString};
use std::ptr;

use hnstrata_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { hns_string_free(s) };
    out
}

fn last_error() -> String {
    let p = hns_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

#[test]
fn euler_form() {
    assert_eq!(hns_euler_form(1, 0, 0, 1, 5), 1);
    assert_eq!(hns_euler_form(1, -1, 1, 1, 2), 1);
}

#[test]
fn zeta_round_trip() {
    let toml = CString::new("q = 3\ngenus = 0\nnumerator = [1]\n").unwrap();
    let mut z = ptr::null_mut();
    assert_eq!(
        unsafe { hns_zeta_from_toml(toml.as_ptr(), &mut z) },
        HnsStatus::Ok
    );
    let mode = CString::new("exact").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { hns_vol_ss(z, 2, 0, mode.as_ptr(), &mut out) },
        HnsStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["value"], "1/48");
    assert_eq!(v["schema"], 1);
    let bad = CString::new("trunc:x").unwrap();
    assert_eq!(
        unsafe { hns_vol_ss(z, 2, 0, bad.as_ptr(), &mut out) },
        HnsStatus::Parse
    );
    unsafe { hns_zeta_free(z) };
}

#[test]
fn zeta_from_coefficients() {
    let coeffs = [1i64, -1, 2];
    let mut z = ptr::null_mut();
    assert_eq!(
        unsafe { hns_zeta_new(2, 1, coeffs.as_ptr(), 3, &mut z) },
        HnsStatus::Ok
    );
    let mode = CString::new("exact").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { hns_vol_ss(z, 1, 7, mode.as_ptr(), &mut out) },
        HnsStatus::Ok
    );
    assert!(take(out).contains("\"value\": \"2\""));
    unsafe { hns_zeta_free(z) };

    let broken = [1i64, -1, 3];
    assert_eq!(
        unsafe { hns_zeta_new(2, 1, broken.as_ptr(), 3, &mut z) },
        HnsStatus::InvalidInput
    );
    assert!(last_error().contains("functional equation"));
}

#[test]
fn null_handling() {
    let mut out = ptr::null_mut();
    let mode = CString::new("exact").unwrap();
    assert_eq!(
        unsafe { hns_vol_ss(ptr::null(), 1, 0, mode.as_ptr(), &mut out) },
        HnsStatus::NullPointer
    );
    assert_eq!(
        unsafe { hns_zeta_from_toml(ptr::null(), &mut ptr::null_mut()) },
        HnsStatus::NullPointer
    );
    unsafe {
        hns_string_free(ptr::null_mut());
        hns_zeta_free(ptr::null_mut());
        hns_quiver_free(ptr::null_mut());
    }
}

#[test]
fn hn_types() {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { hns_hn_types_json(2, 0, -1, 1, false, 2, &mut out) },
        HnsStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["types"].as_array().unwrap().len(), 5);
    assert_eq!(
        unsafe { hns_hn_types_json(2, 0, -1, 0, false, 2, &mut out) },
        HnsStatus::InvalidInput
    );
}

#[test]
fn peel() {
    let noise = CString::new(
        r#"{"schema":1,"weight":[2,0],"level":-20,"terms":[{"parts":[[1,-9],[1,9]],"coeff":{"0":[1,1]}}]}"#,
    )
    .unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { hns_peel_json(2, 2, 0, noise.as_ptr(), &mut out) },
        HnsStatus::Ok
    );
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["steps"][0]["vertex"], serde_json::json!([1, -9]));

    let close = CString::new(
        r#"{"schema":1,"weight":[2,0],"level":-20,"terms":[{"parts":[[1,-1],[1,1]],"coeff":{"0":[1,1]}}]}"#,
    )
    .unwrap();
    assert_eq!(
        unsafe { hns_peel_json(2, 2, 0, close.as_ptr(), &mut out) },
        HnsStatus::Precondition
    );
}

#[test]
fn quiver() {
    let toml = CString::new("vertices = 2\narrows = [[0,1],[0,1]]\ntheta = [1, 0]\n").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { hns_quiver_from_toml(toml.as_ptr(), 2, &mut h) },
        HnsStatus::Ok
    );
    let d = [1i64, 1];
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { hns_quiver_vol_ss(h, d.as_ptr(), 2, &mut out) },
        HnsStatus::Ok
    );
    assert_eq!(take(out), "3");
    let wrong = [1i64, 1, 1];
    assert_eq!(
        unsafe { hns_quiver_vol_ss(h, wrong.as_ptr(), 3, &mut out) },
        HnsStatus::InvalidInput
    );
    unsafe { hns_quiver_free(h) };

    let cyclic = CString::new("vertices = 2\narrows = [[0,1],[1,0]]\ntheta = [1, 0]\n").unwrap();
    assert_eq!(
        unsafe { hns_quiver_from_toml(cyclic.as_ptr(), 2, &mut h) },
        HnsStatus::InvalidInput
    );
    assert!(last_error().contains("cycle"));
}
