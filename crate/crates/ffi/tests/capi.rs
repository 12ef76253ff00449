use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use skernel_ffi::*;

const Z2: &str = r#"{"min":0,"max":1,"ranks":{"0":1,"1":1},"d":{"1":[[2]]}}"#;
const CIRCLE: &str = r#"{"pointed":true,"basepoint":"*","cells":{"0":["*"],"1":["x"]},"faces":{"x":["*","*"]}}"#;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { sk_string_free(s) };
    out
}

fn last_error() -> String {
    let p = sk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn complex_handle_round_trip() {
    let json = CString::new(Z2).unwrap();
    let mut c: *mut SkComplex = ptr::null_mut();
    unsafe {
        assert_eq!(sk_complex_from_json(json.as_ptr(), &mut c), SkStatus::Ok);
        let mut h = ptr::null_mut();
        assert_eq!(sk_complex_homology(c, 0, &mut h), SkStatus::Ok);
        assert_eq!(take(h), "Z/2");
        let mut text = ptr::null_mut();
        assert_eq!(sk_complex_to_json(c, &mut text), SkStatus::Ok);
        assert!(take(text).contains("\"min\": 0"));
        assert_eq!(sk_check_nk(c, 3), SkStatus::Ok);
        let mut k: *mut SkGroup = ptr::null_mut();
        assert_eq!(sk_dold_kan_k(c, 3, &mut k), SkStatus::Ok);
        assert_eq!(sk_check_kn(k), SkStatus::Ok);
        let mut n: *mut SkComplex = ptr::null_mut();
        assert_eq!(sk_normalize(k, &mut n), SkStatus::Ok);
        let mut h = ptr::null_mut();
        assert_eq!(sk_complex_homology(n, 0, &mut h), SkStatus::Ok);
        assert_eq!(take(h), "Z/2");
        sk_complex_free(n);
        sk_group_free(k);
        sk_complex_free(c);
    }
}

#[test]
fn errors_are_reported() {
    let bad = CString::new(r#"{"min":0,"max":2,"ranks":{"0":1,"1":1,"2":1},"d":{"1":[[1]],"2":[[1]]}}"#).unwrap();
    let mut c: *mut SkComplex = ptr::null_mut();
    unsafe {
        assert_eq!(sk_complex_from_json(bad.as_ptr(), &mut c), SkStatus::Identity);
        assert!(c.is_null());
        assert!(last_error().contains("d(1)·d(2)"));
        let junk = CString::new("{").unwrap();
        assert_eq!(sk_space_from_json(junk.as_ptr(), &mut ptr::null_mut()), SkStatus::Parse);
        assert_eq!(sk_complex_from_json(ptr::null(), &mut c), SkStatus::NullPointer);
        assert_eq!(sk_complex_homology(ptr::null(), 0, &mut ptr::null_mut()), SkStatus::NullPointer);
        sk_complex_free(ptr::null_mut());
        sk_string_free(ptr::null_mut());
    }
}

#[test]
fn circle_counit_certificate() {
    let json = CString::new(CIRCLE).unwrap();
    let mut x: *mut SkSpace = ptr::null_mut();
    unsafe {
        assert_eq!(sk_space_from_json(json.as_ptr(), &mut x), SkStatus::Ok);
        let mut h = ptr::null_mut();
        assert_eq!(sk_space_homology(x, 1, true, &mut h), SkStatus::Ok);
        assert_eq!(take(h), "Z");
        let mut f: *mut SkMap = ptr::null_mut();
        assert_eq!(sk_wrap_counit(x, 4, &mut f), SkStatus::Ok);
        let mut cert = ptr::null_mut();
        assert_eq!(sk_weq_certificate(f, 3, &mut cert), SkStatus::Ok);
        assert!(take(cert).starts_with("{\"pass\":true"));
        sk_map_free(f);
        sk_space_free(x);
    }
}

#[test]
fn bar_of_group() {
    let json = CString::new(Z2).unwrap();
    unsafe {
        let mut c = ptr::null_mut();
        assert_eq!(sk_complex_from_json(json.as_ptr(), &mut c), SkStatus::Ok);
        let mut a = ptr::null_mut();
        assert_eq!(sk_dold_kan_k(c, 3, &mut a), SkStatus::Ok);
        let mut b = ptr::null_mut();
        assert_eq!(sk_bar(a, &mut b), SkStatus::Ok);
        let mut n = ptr::null_mut();
        assert_eq!(sk_normalize(b, &mut n), SkStatus::Ok);
        let mut h = ptr::null_mut();
        assert_eq!(sk_complex_homology(n, 1, &mut h), SkStatus::Ok);
        assert_eq!(take(h), "Z/2");
        for g in [a, b] {
            sk_group_free(g);
        }
        sk_complex_free(n);
        sk_complex_free(c);
    }
}

#[test]
fn header_compiles_as_c() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let src = std::env::temp_dir().join(format!("skernel-header-{}.c", std::process::id()));
    std::fs::write(&src, "#include \"skernel.h\"\nint main(void) { return (int)SK_STATUS_OK; }\n").unwrap();
    let Ok(status) = Command::new("cc").arg("-fsyntax-only").arg("-I").arg(&header).arg(&src).status() else {
        eprintln!("no C compiler available; header check skipped");
        return;
    };
    assert!(status.success());
}
