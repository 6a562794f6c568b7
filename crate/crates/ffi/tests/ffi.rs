use std::ffi::{c_char, CStr, CString};
use std::ptr;

use curve_canonical_ffi::*;
use serde_json::Value;

fn take_json(s: *mut c_char) -> Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { cc_string_free(s) };
    v
}

fn last_error_name() -> String {
    let p = cc_last_error_name();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn new(gens: &[i64]) -> *mut CcSemigroup {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { cc_semigroup_new(gens.as_ptr(), gens.len(), &mut h) }, CcStatus::Ok);
    h
}

#[test]
fn semigroup_queries() {
    let h = new(&[4, 7, 9]);
    let mut f = 0i64;
    assert_eq!(unsafe { cc_semigroup_frobenius(h, &mut f) }, CcStatus::Ok);
    assert_eq!(f, 10);
    let mut inside = false;
    assert_eq!(unsafe { cc_semigroup_contains(h, 11, &mut inside) }, CcStatus::Ok);
    assert!(inside);
    assert_eq!(unsafe { cc_semigroup_contains(h, 10, &mut inside) }, CcStatus::Ok);
    assert!(!inside);

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cc_invariants_json(h, &mut s) }, CcStatus::Ok);
    let v = take_json(s);
    assert_eq!((v["e0"].as_i64(), v["delta"].as_i64(), v["mu"].as_i64()), (Some(4), Some(6), Some(12)));

    assert_eq!(unsafe { cc_canonical_value_set_json(h, &mut s) }, CcStatus::Ok);
    let v = take_json(s);
    assert_eq!(v["tail"], 0);

    assert_eq!(unsafe { cc_shift_canonical_json(h, 15, &mut s) }, CcStatus::Ok);
    let v = take_json(s);
    assert_eq!(v["colength"], 3);

    assert_eq!(unsafe { cc_pfaffian_json(h, &mut s) }, CcStatus::Ok);
    let v = take_json(s);
    assert_eq!(v["colength"], 14);
    unsafe { cc_semigroup_free(h) };
}

#[test]
fn parsing_and_errors() {
    let text = CString::new("5, 6, 7").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { cc_semigroup_parse(text.as_ptr(), &mut h) }, CcStatus::Ok);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cc_pfaffian_json(h, &mut s) }, CcStatus::Ok);
    take_json(s);
    unsafe { cc_semigroup_free(h) };

    let mut h = ptr::null_mut();
    assert_eq!(unsafe { cc_semigroup_new([4i64, 6].as_ptr(), 2, &mut h) }, CcStatus::DomainError);
    assert_eq!(last_error_name(), "GcdNotOne");
    assert!(h.is_null());

    let h = new(&[3, 5]);
    assert_eq!(unsafe { cc_pfaffian_json(h, &mut s) }, CcStatus::DomainError);
    assert_eq!(last_error_name(), "NotThreeGenerated");
    let mut f = 0;
    assert_eq!(unsafe { cc_semigroup_frobenius(h, &mut f) }, CcStatus::Ok);
    assert!(cc_last_error_name().is_null());
    unsafe { cc_semigroup_free(h) };

    assert_eq!(unsafe { cc_semigroup_frobenius(ptr::null(), &mut f) }, CcStatus::NullPointer);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cc_semigroup_new(ptr::null(), 3, &mut out) }, CcStatus::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { cc_semigroup_parse(bad.as_ptr() as *const c_char, &mut out) }, CcStatus::InvalidUtf8);
    assert!(out.is_null());
    unsafe {
        cc_semigroup_free(ptr::null_mut());
        cc_string_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_per_thread() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { cc_semigroup_new([2i64, 4].as_ptr(), 2, &mut h) }, CcStatus::DomainError);
    std::thread::spawn(|| assert!(cc_last_error_name().is_null())).join().unwrap();
    assert_eq!(last_error_name(), "GcdNotOne");
}

#[test]
fn verification_report() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { cc_verify_examples_json(&mut s) }, CcStatus::Ok);
    let v = take_json(s);
    assert_eq!(v["pass"], true);
}

/// Every exported function and status code appears in the C header with the
/// same value.
#[test]
fn header_matches_exports() {
    let root = env!("CARGO_MANIFEST_DIR");
    let header = std::fs::read_to_string(format!("{root}/include/curve_canonical.h")).unwrap();
    let source = std::fs::read_to_string(format!("{root}/src/lib.rs")).unwrap();
    let exported: Vec<&str> =
        source.split("extern \"C\" fn ").skip(1).map(|rest| rest.split('(').next().unwrap()).collect();
    assert_eq!(exported.len(), source.matches("#[no_mangle]").count());
    let declared: Vec<&str> = header
        .lines()
        .filter(|l| !l.trim_start().starts_with("/*"))
        .filter_map(|l| l.split_once('(').map(|(head, _)| head))
        .filter_map(|head| head.rsplit([' ', '*']).next())
        .filter(|name| name.starts_with("cc_"))
        .collect();
    let mut a = exported.clone();
    let mut b = declared.clone();
    a.sort();
    b.sort();
    assert_eq!(a, b);
    for (name, code) in [
        ("OK", CcStatus::Ok),
        ("NULL_POINTER", CcStatus::NullPointer),
        ("INVALID_UTF8", CcStatus::InvalidUtf8),
        ("DOMAIN_ERROR", CcStatus::DomainError),
        ("PANIC", CcStatus::Panic),
    ] {
        assert!(header.contains(&format!("CC_STATUS_{name} = {},", code as i32)), "{name}");
    }
}

/// The header compiles as C against a program calling every function.
#[test]
fn header_compiles_as_c() {
    let root = env!("CARGO_MANIFEST_DIR");
    let status = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Wextra", "-Werror", "-fsyntax-only", "-I"])
        .arg(format!("{root}/include"))
        .arg(format!("{root}/tests/c/smoke.c"))
        .status();
    match status {
        Ok(s) => assert!(s.success(), "C compiler rejected the header"),
        Err(e) => eprintln!("skipping: no C compiler ({e})"),
    }
}
