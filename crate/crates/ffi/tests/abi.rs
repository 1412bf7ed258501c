use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use sw_converse_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(swc_last_error()) }.to_str().unwrap().to_string()
}

fn uniform22() -> *mut SwcJointPmf {
    let mass = [0.25; 4];
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { swc_joint_new(2, 2, mass.as_ptr(), &mut h) }, SwcStatus::Ok);
    h
}

fn bound(h: *const SwcJointPmf, m1: usize, m2: usize, name: &str) -> (SwcStatus, SwcBound) {
    let name = CString::new(name).unwrap();
    let mut out = SwcBound { raw: f64::NAN, clamped: f64::NAN, t: f64::NAN };
    let st = unsafe { swc_bound(h, m1, m2, name.as_ptr(), &mut out) };
    (st, out)
}

#[test]
fn bounds_through_the_handle() {
    let h = uniform22();
    let (st, b) = bound(h, 1, 1, "meta-sw");
    assert_eq!(st, SwcStatus::Ok);
    assert!((b.raw - 0.75).abs() < 1e-9);
    assert!(b.t.is_nan());
    let (st, b) = bound(h, 1, 1, "mk");
    assert_eq!(st, SwcStatus::Ok);
    assert!((b.raw - 0.25).abs() < 1e-9 && (b.t - 0.25).abs() < 1e-12);
    let (mut n1, mut n2) = (0, 0);
    assert_eq!(unsafe { swc_joint_dims(h, &mut n1, &mut n2) }, SwcStatus::Ok);
    assert_eq!((n1, n2), (2, 2));
    let mut v = f64::NAN;
    assert_eq!(unsafe { swc_exact_opt_sw(h, 1, 1, 1000, &mut v) }, SwcStatus::Ok);
    assert!((v - 0.75).abs() < 1e-12);
    unsafe { swc_joint_free(h) };
}

#[test]
fn errors_map_to_status_codes() {
    let bad = [0.5, 0.5, 0.5, -0.5];
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { swc_joint_new(2, 2, bad.as_ptr(), &mut h) }, SwcStatus::NegativeMass);
    assert!(h.is_null());
    assert!(last_error().starts_with("NegativeMass"));

    let over = [0.5, 0.3, 0.2, 0.1];
    assert_eq!(unsafe { swc_joint_new(2, 2, over.as_ptr(), &mut h) }, SwcStatus::MassSumMismatch);

    let h = uniform22();
    assert_eq!(bound(h, 1, 1, "nope").0, SwcStatus::UnknownBound);
    assert_eq!(bound(h, 0, 1, "meta-sw").0, SwcStatus::InvalidArgument);
    assert_eq!(bound(ptr::null(), 1, 1, "meta-sw").0, SwcStatus::NullPointer);
    let mut v = 0.0;
    assert_eq!(unsafe { swc_exact_opt_sw(h, 2, 2, 3, &mut v) }, SwcStatus::EnumerationTooLarge);
    assert_eq!(bound(h, 1, 1, "meta-je").0, SwcStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe { swc_joint_free(h) };
    unsafe { swc_joint_free(ptr::null_mut()) };
}

#[test]
fn parse_and_dsbs() {
    let text = CString::new("pmf2 2 2\n0 0 0.5\n1 1 0.5\n").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { swc_joint_parse(text.as_ptr(), &mut h) }, SwcStatus::Ok);
    let (_, b) = bound(h, 1, 1, "max-converse");
    assert!((b.raw - 0.5).abs() < 1e-9);
    unsafe { swc_joint_free(h) };

    let single = CString::new("pmf1 2\n0 1\n").unwrap();
    assert_eq!(unsafe { swc_joint_parse(single.as_ptr(), &mut h) }, SwcStatus::InvalidArgument);
    let garbage = CString::new("pmf3 2\n").unwrap();
    assert_eq!(unsafe { swc_joint_parse(garbage.as_ptr(), &mut h) }, SwcStatus::ParseError);

    let name = CString::new("dsbs-converse").unwrap();
    let mut out = SwcBound { raw: 0.0, clamped: 0.0, t: 0.0 };
    assert_eq!(unsafe { swc_dsbs_bound(1, 0.25, 0.0, 0.0, name.as_ptr(), &mut out) }, SwcStatus::Ok);
    assert!((out.raw - 0.4375).abs() < 1e-12);
    assert_eq!(unsafe { swc_dsbs_bound(1, 0.6, 0.0, 0.0, name.as_ptr(), &mut out) }, SwcStatus::InvalidArgument);
}

#[test]
fn status_names_are_static() {
    let s = unsafe { CStr::from_ptr(swc_status_name(SwcStatus::EnumerationTooLarge)) };
    assert_eq!(s.to_str().unwrap(), "EnumerationTooLarge");
}

const C_PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "sw_converse.h"

int main(void) {
    double mass[4] = {0.25, 0.25, 0.25, 0.25};
    SwcJointPmf *h = NULL;
    if (swc_joint_new(2, 2, mass, &h) != SwcStatus_Ok) return 10;
    SwcBound b;
    if (swc_bound(h, 1, 1, "meta-sw", &b) != SwcStatus_Ok) return 11;
    if (fabs(b.raw - 0.75) > 1e-9) return 12;
    if (swc_bound(h, 1, 1, "bogus", &b) != SwcStatus_UnknownBound) return 13;
    printf("%s\n", swc_last_error());
    swc_joint_free(h);
    return 0;
}
"#;

#[test]
fn header_links_from_c() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = crate_dir.join("include").join("sw_converse.h");
    assert!(header.exists(), "header not generated");
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; header link check not run");
        return;
    }
    // the library built alongside this test binary lands in the same deps directory
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = deps.join("libsw_converse_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let work = std::env::temp_dir().join(format!("swc-abi-{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("main.c");
    let exe = work.join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("UnknownBound"));
    let _ = std::fs::remove_dir_all(&work);
}
