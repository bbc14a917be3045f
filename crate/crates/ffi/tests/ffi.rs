use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use popswitch_ffi::*;

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    ps_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = ps_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_owned()
}

#[test]
fn quantum_numbers() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(ps_quantum_int(3, &mut s), PsStatus::Ok);
        assert_eq!(take(s), "q^2 + 1 + q^-2");
        assert!(ps_last_error().is_null());
        assert_eq!(ps_quantum_binom(4, 2, &mut s), PsStatus::Ok);
        assert_eq!(take(s), "q^4 + q^2 + 2 + q^-2 + q^-4");
        assert_eq!(ps_quantum_binom(2, 3, &mut s), PsStatus::Domain);
        assert!(!last_error().is_empty());
        assert_eq!(ps_quantum_int(3, ptr::null_mut()), PsStatus::NullPointer);
    }
}

#[test]
fn jones_wenzl_handles() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(ps_jones_wenzl(3, &mut p), PsStatus::Ok);
        let mut passed = false;
        assert_eq!(ps_element_check_jw(p, &mut passed), PsStatus::Ok);
        assert!(passed);
        let mut s = ptr::null_mut();
        assert_eq!(ps_element_closure(p, &mut s), PsStatus::Ok);
        assert_eq!(take(s), "q^3 + q + q^-1 + q^-3");
        let mut pp = ptr::null_mut();
        assert_eq!(ps_element_compose(p, p, &mut pp), PsStatus::Ok);
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        ps_element_to_string(p, &mut a);
        ps_element_to_string(pp, &mut b);
        assert_eq!(take(a), take(b));
        ps_element_free(pp);
        ps_element_free(p);
        ps_element_free(ptr::null_mut());
        assert_eq!(ps_jones_wenzl(0, &mut p), PsStatus::Domain);
    }
}

#[test]
fn diagrams_from_text() {
    unsafe {
        let e1 = CString::new("TL(2,2){(b0,b1),(t0,t1)}").unwrap();
        let mut e = ptr::null_mut();
        assert_eq!(ps_element_from_diagram(e1.as_ptr(), &mut e), PsStatus::Ok);
        let mut passed = true;
        assert_eq!(ps_element_check_jw(e, &mut passed), PsStatus::Ok);
        assert!(!passed);
        let mut cap = ptr::null_mut();
        let text = CString::new("TL(2,0){(b0,b1)}").unwrap();
        assert_eq!(ps_element_from_diagram(text.as_ptr(), &mut cap), PsStatus::Ok);
        let mut bad = ptr::null_mut();
        assert_eq!(ps_element_compose(e, cap, &mut bad), PsStatus::Arity);
        ps_element_free(cap);
        ps_element_free(e);
        let junk = CString::new("TL(2,2){(b0,b0)}").unwrap();
        assert_eq!(ps_element_from_diagram(junk.as_ptr(), &mut e), PsStatus::Parse);
        assert_eq!(ps_element_from_diagram(ptr::null(), &mut e), PsStatus::NullPointer);
    }
}

#[test]
fn decomposition_report() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(ps_decompose(2, false, &mut s), PsStatus::Ok);
        assert!(take(s).ends_with("VERIFIED n=2 summands=3"));
        assert_eq!(ps_decompose(9, false, &mut s), PsStatus::Domain);
    }
}

/// Builds a small C program against the generated header and the static
/// library, then runs it.
#[test]
fn c_program_links_and_runs() {
    let Ok(cc) = which_cc() else { return };
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let libdir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = libdir.join("libpopswitch_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let src = dir.join("tests/smoke.c");
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("popswitch_smoke");
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "q^2 + 1 + q^-2\nq^2 + 1 + q^-2\nstatus 3\n");
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc);
        }
    }
    Err(())
}
