use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use vcsp_ffi::*;

const SMALL: &str = "vcsp 3\ndom 1 2\ndom 2 2\ndom 3 1\nbinary 1 2 0 0 2\nbinary 1 3 0 0 1\nbinary 2 3 0 0 1\nbinary 1 2 1 1 1\n";

fn parsed(text: &str) -> *mut VcspProblem {
    let text = CString::new(text).unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { vcsp_parse(text.as_ptr(), &mut p) }, VcspStatus::Ok);
    p
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(vcsp_last_error()) }.to_str().unwrap().to_owned()
}

#[test]
fn parse_solve_and_read_back() {
    let p = parsed(SMALL);
    unsafe {
        assert_eq!(vcsp_num_vars(p), 3);
        let mut jwp = false;
        assert_eq!(vcsp_check_jwp(p, &mut jwp), VcspStatus::Ok);
        assert!(jwp);
        let mut s = ptr::null_mut();
        assert_eq!(vcsp_solve(p, VcspMethod::Flow, 0, &mut s), VcspStatus::Ok);
        assert_eq!(vcsp_solution_len(s), 3);
        assert_eq!(vcsp_solution_method(s), VcspMethod::Flow);
        assert!(!vcsp_solution_is_infinite(s));
        let cost = vcsp_solution_cost(s);
        assert_eq!(CStr::from_ptr(cost).to_str().unwrap(), "1");
        vcsp_string_free(cost);
        let mut v = usize::MAX;
        assert_eq!(vcsp_solution_value(s, 2, &mut v), VcspStatus::Ok);
        assert_eq!(v, 0);
        assert_eq!(vcsp_solution_value(s, 3, &mut v), VcspStatus::InvalidArgument);
        vcsp_solution_free(s);
        let text = vcsp_serialize(p);
        assert!(CStr::from_ptr(text).to_str().unwrap().starts_with("vcsp 3\n"));
        vcsp_string_free(text);
        vcsp_free(p);
    }
}

#[test]
fn status_codes() {
    let mut p = ptr::null_mut();
    let bad = CString::new("vcsp 1\ndom 1 2\nunary 1 5 0\n").unwrap();
    assert_eq!(unsafe { vcsp_parse(bad.as_ptr(), &mut p) }, VcspStatus::Parse);
    assert!(last_error().contains("line 3"));
    assert_eq!(unsafe { vcsp_parse(ptr::null(), &mut p) }, VcspStatus::NullPointer);

    let non_jwp = parsed("vcsp 3\ndom 1 1\ndom 2 1\ndom 3 1\nbinary 1 3 0 0 inf\nbinary 2 3 0 0 inf\n");
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(vcsp_solve(non_jwp, VcspMethod::Flow, 0, &mut s), VcspStatus::Inapplicable);
        assert_eq!(vcsp_solve(non_jwp, VcspMethod::Brute, 0, &mut s), VcspStatus::Ok);
        assert!(vcsp_solution_is_infinite(s));
        vcsp_solution_free(s);
        vcsp_free(non_jwp);
    }
}

#[test]
fn null_handles_are_harmless() {
    unsafe {
        vcsp_free(ptr::null_mut());
        vcsp_solution_free(ptr::null_mut());
        vcsp_string_free(ptr::null_mut());
        assert_eq!(vcsp_num_vars(ptr::null()), 0);
        assert!(vcsp_serialize(ptr::null()).is_null());
        assert!(!CStr::from_ptr(vcsp_version()).to_bytes().is_empty());
    }
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn static_lib() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let profile_dir = exe.parent()?.parent()?;
    let lib = profile_dir.join("libvcsp_ffi.a");
    lib.exists().then_some(lib)
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok_and(|o| o.status.success())
}

#[test]
fn header_is_current() {
    let header = std::fs::read_to_string(manifest_dir().join("include/vcsp.h")).unwrap();
    for name in ["vcsp_parse", "vcsp_solve", "vcsp_solution_cost", "vcsp_last_error", "VCSP_STATUS_INAPPLICABLE"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn c_program_links_against_static_library() {
    if !have_cc() {
        eprintln!("cc not found; C link test not run");
        return;
    }
    let include = manifest_dir().join("include");
    let src = manifest_dir().join("tests/c/smoke.c");
    let out = tempfile_path("vcsp_smoke");
    let Some(lib) = static_lib() else {
        // Without the archive, at least check the header compiles as C.
        let status = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-I"]).arg(&include).arg(&src).status();
        assert!(status.unwrap().success());
        return;
    };
    let status = Command::new("cc")
        .args(["-Wall", "-Werror", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "1/2 1 1");
    let _ = std::fs::remove_file(out);
}

fn tempfile_path(stem: &str) -> PathBuf {
    Path::new(&std::env::temp_dir()).join(format!("{stem}_{}", std::process::id()))
}
