use std::ffi::{c_char, CStr, CString};
use std::ptr;

use bmkit_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { bm_string_free(s) };
    out
}

fn last_error() -> String {
    let p = bm_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn call2(
    f: unsafe extern "C" fn(*const c_char, *const c_char, *mut *mut c_char) -> BmStatus,
    a: &str,
    b: &str,
) -> Result<String, BmStatus> {
    let mut out = ptr::null_mut();
    match unsafe { f(c(a).as_ptr(), c(b).as_ptr(), &mut out) } {
        BmStatus::Ok => Ok(take(out)),
        s => Err(s),
    }
}

#[test]
fn kostka_and_oracle_agree() {
    assert_eq!(call2(bm_kostka, "2,1", "1,1,1").unwrap(), "2");
    assert_eq!(call2(bm_kostka_oracle, "2,1", "1,1,1").unwrap(), "2");
    assert_eq!(
        call2(bm_kostka, "3,2", "2,2,1").unwrap(),
        call2(bm_kostka_oracle, "3,2", "2,2,1").unwrap()
    );
}

#[test]
fn character_lr_bip_multinomial() {
    assert_eq!(call2(bm_character, "2,1", "3").unwrap(), "-1");
    assert_eq!(call2(bm_lr_mult, "2,1", "1;1;1").unwrap(), "2");
    assert_eq!(call2(bm_bip_count, "1,1;1", "2,1").unwrap(), "1");
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { bm_multinomial(c("2,1").as_ptr(), &mut out) },
        BmStatus::Ok
    );
    assert_eq!(take(out), "3");
}

#[test]
fn r_tau_and_cyc_render() {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { bm_r_tau(c("2,1").as_ptr(), &mut out) },
        BmStatus::Ok
    );
    assert_eq!(take(out), "σ(τ[2,1]) − 2σ(τ[1,1,1])");
    assert_eq!(unsafe { bm_cyc(c("2,1").as_ptr(), &mut out) }, BmStatus::Ok);
    assert_eq!(take(out), "Z(τ[2,1]) + 2Z(τ[1,1,1])");
}

#[test]
fn verify_local_identity() {
    let mut report = ptr::null_mut();
    let s = unsafe {
        bm_verify_local_bm(
            c("1:2,1;2:1").as_ptr(),
            c("2,2").as_ptr(),
            0,
            0,
            &mut report,
        )
    };
    assert_eq!(s, BmStatus::Ok);
    let json: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(json["ok"], true);
    let s =
        unsafe { bm_verify_local_bm(c("2,1").as_ptr(), c("2,1").as_ptr(), 5, 11, ptr::null_mut()) };
    assert_eq!(s, BmStatus::Ok);
    let s =
        unsafe { bm_verify_local_bm(c("2,1").as_ptr(), c("2,1").as_ptr(), 5, 12, ptr::null_mut()) };
    assert_eq!(s, BmStatus::InvalidArgument);
}

#[test]
fn component_counts() {
    let mut n = 0u64;
    assert_eq!(
        unsafe { bm_count_components(1, 5, 0, &mut n) },
        BmStatus::Ok
    );
    assert_eq!(n, 4);
    assert_eq!(
        unsafe { bm_count_components(2, 2, 0, &mut n) },
        BmStatus::Ok
    );
    assert_eq!(n, 3);
}

#[test]
fn matrix_handles() {
    let mut k = ptr::null_mut();
    let mut inv = ptr::null_mut();
    unsafe {
        assert_eq!(bm_kostka_matrix_new(4, &mut k), BmStatus::Ok);
        assert_eq!(bm_inverse_kostka_matrix_new(4, &mut inv), BmStatus::Ok);
        let n = bm_matrix_size(k);
        assert_eq!(n, 5);
        let mut label = ptr::null_mut();
        assert_eq!(bm_matrix_label(k, 0, &mut label), BmStatus::Ok);
        assert_eq!(take(label), "4");
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0i64;
                for t in 0..n {
                    let (mut a, mut b) = (0i64, 0i64);
                    assert_eq!(bm_matrix_entry(k, i, t, &mut a), BmStatus::Ok);
                    assert_eq!(bm_matrix_entry(inv, t, j, &mut b), BmStatus::Ok);
                    acc += a * b;
                }
                assert_eq!(acc, i64::from(i == j));
            }
        }
        let mut v = 0i64;
        assert_eq!(bm_matrix_entry(k, n, 0, &mut v), BmStatus::InvalidArgument);
        assert_eq!(bm_matrix_size(ptr::null()), 0);
        bm_matrix_free(k);
        bm_matrix_free(inv);
        bm_matrix_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_reported() {
    assert_eq!(call2(bm_kostka, "1,2", "3"), Err(BmStatus::InvalidArgument));
    assert!(!last_error().is_empty());
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { bm_kostka(ptr::null(), c("1").as_ptr(), &mut out) },
        BmStatus::NullPointer
    );
    assert_eq!(
        unsafe { bm_kostka(c("1").as_ptr(), c("1").as_ptr(), ptr::null_mut()) },
        BmStatus::NullPointer
    );
    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { bm_kostka(bad.as_ptr().cast(), c("1").as_ptr(), &mut out) },
        BmStatus::InvalidUtf8
    );
    assert_eq!(call2(bm_kostka, "1", "1").unwrap(), "1");
    assert!(bm_last_error().is_null());
    let mut k = ptr::null_mut();
    assert_eq!(
        unsafe { bm_kostka_matrix_new(10_000, &mut k) },
        BmStatus::ResourceBound
    );
    assert!(k.is_null());
    assert_eq!(bm_set_max_degree(0), BmStatus::InvalidArgument);
    let v = unsafe { CStr::from_ptr(bm_version()) }.to_str().unwrap();
    assert!(!v.is_empty());
    unsafe { bm_string_free(ptr::null_mut()) };
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/bmkit.h")).unwrap();
    let source =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    assert!(header.contains("typedef struct BmMatrix BmMatrix;"));
}
