use std::ffi::{c_char, CStr, CString};
use std::ptr;
use twistinv_ffi::*;

fn last_error() -> String {
    let p = tw_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn datum(spec: &str) -> *mut TwDatum {
    let s = CString::new(spec).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { tw_datum_new(s.as_ptr(), &mut d) }, TwStatus::Ok);
    d
}

fn run(args: &[&str]) -> (String, i32) {
    let owned: Vec<CString> = args.iter().map(|a| CString::new(*a).unwrap()).collect();
    let ptrs: Vec<*const c_char> = owned.iter().map(|a| a.as_ptr()).collect();
    let mut text = ptr::null_mut();
    let mut code = -1;
    assert_eq!(unsafe { tw_run_json(ptrs.len(), ptrs.as_ptr(), &mut text, &mut code) }, TwStatus::Ok);
    let out = unsafe { CStr::from_ptr(text) }.to_string_lossy().into_owned();
    unsafe { tw_string_free(text) };
    (out, code)
}

#[test]
fn datum_queries() {
    let d = datum("E8");
    let (mut rank, mut roots) = (0, 0);
    unsafe {
        assert_eq!(tw_datum_rank(d, &mut rank), TwStatus::Ok);
        assert_eq!(tw_datum_num_positive_roots(d, &mut roots), TwStatus::Ok);
        tw_datum_free(d);
    }
    assert_eq!((rank, roots), (8, 120));
}

#[test]
fn module_queries() {
    let d = datum("G2");
    let mut m = ptr::null_mut();
    let lam = [0i64, 1];
    let zero = [0i64, 0];
    let (mut dim, mut mult) = (0, 0);
    unsafe {
        assert_eq!(tw_module_new(d, lam.as_ptr(), 2, &mut m), TwStatus::Ok);
        assert_eq!(tw_module_dim(m, &mut dim), TwStatus::Ok);
        assert_eq!(tw_module_weight_multiplicity(m, zero.as_ptr(), 2, &mut mult), TwStatus::Ok);
        tw_module_free(m);
        tw_datum_free(d);
    }
    assert_eq!((dim, mult), (14, 2));
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("Q7").unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { tw_datum_new(bad.as_ptr(), &mut d) }, TwStatus::InvalidInput);
    assert!(d.is_null());
    assert!(!last_error().is_empty());

    let invalid_utf8 = [0xffu8 as c_char, 0];
    assert_eq!(unsafe { tw_datum_new(invalid_utf8.as_ptr(), &mut d) }, TwStatus::Utf8);

    let d = datum("A2");
    let mut m = ptr::null_mut();
    let neg = [-1i64, 0];
    assert_eq!(unsafe { tw_module_new(d, neg.as_ptr(), 2, &mut m) }, TwStatus::InvalidInput);
    assert!(last_error().contains("dominant"));
    assert_eq!(unsafe { tw_module_new(d, neg.as_ptr(), 1, &mut m) }, TwStatus::InvalidInput);
    unsafe { tw_datum_free(d) };
}

#[test]
fn null_pointers_are_rejected() {
    let mut out = 0usize;
    let mut d = ptr::null_mut();
    unsafe {
        assert_eq!(tw_datum_rank(ptr::null(), &mut out), TwStatus::NullPointer);
        assert_eq!(tw_datum_new(ptr::null(), &mut d), TwStatus::NullPointer);
        assert_eq!(tw_module_dim(ptr::null(), &mut out), TwStatus::NullPointer);
        assert_eq!(tw_run_json(1, ptr::null(), ptr::null_mut(), ptr::null_mut()), TwStatus::NullPointer);
        tw_datum_free(ptr::null_mut());
        tw_module_free(ptr::null_mut());
        tw_string_free(ptr::null_mut());
    }
    assert!(last_error().contains("null"));
}

#[test]
fn command_line_through_the_abi() {
    let (text, code) = run(&["fold", "--group", "D4", "--sigma", "(1 3 4)"]);
    assert_eq!(code, 0);
    assert!(text.contains("\"folded_type\":\"G2\""));
    let (text, code) = run(&["mult", "--group", "A2", "--rep", "x"]);
    assert_eq!(code, 2);
    assert!(text.is_empty());
    assert!(last_error().contains("malformed"));
}

#[test]
fn header_declares_the_abi() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/twistinv.h")).unwrap();
    for name in [
        "tw_last_error_message",
        "tw_datum_new",
        "tw_datum_free",
        "tw_datum_rank",
        "tw_datum_num_positive_roots",
        "tw_module_new",
        "tw_module_free",
        "tw_module_dim",
        "tw_module_weight_multiplicity",
        "tw_run_json",
        "tw_string_free",
        "TW_STATUS_NULL_POINTER",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
