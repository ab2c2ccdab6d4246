use std::ffi::{c_char, CStr, CString};
use std::ptr;

use contra_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = contra_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

unsafe fn coalgebra(json: &str) -> *mut ContraCoalgebra {
    let mut h = ptr::null_mut();
    assert_eq!(contra_coalgebra_from_json(c(json).as_ptr(), &mut h), ContraStatus::Ok);
    h
}

unsafe fn comodule(json: &str) -> *mut ContraComodule {
    let mut h = ptr::null_mut();
    assert_eq!(contra_comodule_from_json(c(json).as_ptr(), &mut h), ContraStatus::Ok);
    h
}

unsafe fn contramodule(json: &str) -> *mut ContraContramodule {
    let mut h = ptr::null_mut();
    assert_eq!(contra_contramodule_from_json(c(json).as_ptr(), &mut h), ContraStatus::Ok);
    h
}

const DP2: &str = r#"{"field": {"Fp": 2}, "catalog": "divided_power", "n": 2}"#;
const DP4: &str = r#"{"field": {"Fp": 2}, "catalog": "divided_power", "n": 4}"#;

fn free_over(coalgebra: &str, d: usize) -> String {
    format!(r#"{{"coalgebra": {coalgebra}, "catalog": "free", "d": {d}}}"#)
}

#[test]
fn coalgebra_round_trip() {
    unsafe {
        let h = coalgebra(r#"{"field": "Q", "catalog": "matrix", "n": 2}"#);
        let (mut dim, mut ok) = (0usize, false);
        assert_eq!(contra_coalgebra_dim(h, &mut dim), ContraStatus::Ok);
        assert_eq!(contra_coalgebra_verify(h, &mut ok), ContraStatus::Ok);
        assert_eq!((dim, ok), (4, true));
        contra_coalgebra_free(h);
        contra_coalgebra_free(ptr::null_mut());
    }
}

#[test]
fn broken_coalgebra_fails_verification() {
    unsafe {
        let h = coalgebra(r#"{"field": "Q", "dim": 1, "delta": [[0, 0, 0, 2]], "epsilon": [1]}"#);
        let mut ok = true;
        assert_eq!(contra_coalgebra_verify(h, &mut ok), ContraStatus::Ok);
        assert!(!ok);
        contra_coalgebra_free(h);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut h = ptr::null_mut();
        let bad = c(r#"{"field": "Q", "dim": "x"}"#);
        assert_eq!(contra_coalgebra_from_json(bad.as_ptr(), &mut h), ContraStatus::Schema);
        assert!(h.is_null());
        assert!(last_error().contains("/dim"));

        let not_json = c("{");
        assert_eq!(contra_coalgebra_from_json(not_json.as_ptr(), &mut h), ContraStatus::Parse);
        assert_eq!(contra_coalgebra_from_json(ptr::null(), &mut h), ContraStatus::NullPointer);
        assert_eq!(contra_coalgebra_dim(ptr::null(), ptr::null_mut()), ContraStatus::NullPointer);

        let bytes = [0xffu8, 0];
        assert_eq!(contra_coalgebra_from_json(bytes.as_ptr().cast(), &mut h), ContraStatus::Utf8);
    }
}

#[test]
fn hom_and_cohom_dimensions() {
    unsafe {
        let r = r#"{"field": {"Fp": 3}, "catalog": "grouplike", "n": 2}"#;
        let left = comodule(&format!(r#"{{"coalgebra": {r}, "side": "left", "catalog": "regular"}}"#));
        let right = comodule(&format!(r#"{{"coalgebra": {r}, "side": "right", "catalog": "regular"}}"#));
        let free = contramodule(&free_over(r, 2));
        let mut d = 0usize;
        assert_eq!(contra_hom_comodules_dim(left, left, &mut d), ContraStatus::Ok);
        assert_eq!(d, 2);
        assert_eq!(contra_cotensor_dim(right, left, &mut d), ContraStatus::Ok);
        assert_eq!(d, 2);
        assert_eq!(contra_cohom_dim(left, free, &mut d), ContraStatus::Ok);
        assert_eq!(d, 4);
        assert_eq!(contra_contratensor_dim(right, free, &mut d), ContraStatus::Ok);
        assert_eq!(d, 4);
        assert_eq!(contra_hom_contra_dim(free, free, &mut d), ContraStatus::Ok);
        assert_eq!(d, 8);
        assert_eq!(contra_cotensor_dim(left, left, &mut d), ContraStatus::Side);
        let mut proj = false;
        assert_eq!(contra_contramodule_is_projective(free, &mut proj), ContraStatus::Ok);
        assert!(proj);
        contra_comodule_free(left);
        contra_comodule_free(right);
        contra_contramodule_free(free);
    }
}

#[test]
fn induction_and_field_mismatch() {
    unsafe {
        let mut rho = ptr::null_mut();
        let json = c(r#"{"field": {"Fp": 2}, "catalog": "divided_power_frobenius", "m": 4, "j": 2}"#);
        assert_eq!(contra_morphism_from_json(json.as_ptr(), &mut rho), ContraStatus::Ok);
        let mut ok = false;
        assert_eq!(contra_morphism_verify(rho, &mut ok), ContraStatus::Ok);
        assert!(ok);

        let w = contramodule(&free_over(DP2, 1));
        let mut ind = ptr::null_mut();
        assert_eq!(contra_induce(rho, w, &mut ind), ContraStatus::Ok);
        let v = contramodule(&free_over(DP4, 1));
        let (mut a, mut b) = (0usize, 0usize);
        assert_eq!(contra_contramodule_dim(ind, &mut a), ContraStatus::Ok);
        assert_eq!(contra_contramodule_dim(v, &mut b), ContraStatus::Ok);
        assert_eq!(a, b);

        let wq = contramodule(&free_over(r#"{"field": "Q", "catalog": "divided_power", "n": 2}"#, 1));
        let mut out = ptr::null_mut();
        assert_eq!(contra_induce(rho, wq, &mut out), ContraStatus::FieldMismatch);
        assert!(out.is_null());
        assert!(last_error().contains("field mismatch"));

        for h in [w, ind, v, wq] {
            contra_contramodule_free(h);
        }
        contra_morphism_free(rho);
    }
}

#[test]
fn run_job_returns_a_report() {
    unsafe {
        let job = c(&format!(r#"{{"command": "verify", "inputs": {{"file": {DP4}}}, "seed": 1}}"#));
        let mut report: *mut c_char = ptr::null_mut();
        let mut ok = false;
        assert_eq!(contra_run_job(job.as_ptr(), &mut report, &mut ok), ContraStatus::Ok);
        assert!(ok);
        let text = CStr::from_ptr(report).to_str().unwrap();
        let v: serde_json::Value = serde_json::from_str(text).unwrap();
        assert_eq!(v["command"], "verify");
        contra_string_free(report);

        let bad = c(r#"{"command": "nope"}"#);
        assert_eq!(contra_run_job(bad.as_ptr(), &mut report, &mut ok), ContraStatus::Schema);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(contra_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export_and_compiles() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/contra.h")).unwrap();
    let src = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let names: Vec<String> = src
        .split("extern \"C\" fn ")
        .skip(1)
        .filter_map(|s| s.split('(').next())
        .map(str::to_string)
        .collect();
    assert!(names.len() > 20);
    for n in &names {
        assert!(header.contains(&format!("{n}(")), "{n} missing from header");
    }
    let status = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"])
        .arg(dir.join("include/contra.h"))
        .status()
        .unwrap();
    assert!(status.success());
}
