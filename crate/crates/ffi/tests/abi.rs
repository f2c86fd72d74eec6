use std::ffi::{CStr, CString};
use std::ptr;

use covertqft_ffi::*;

fn take(p: *mut std::ffi::c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { cq_string_free(p) };
    s
}

fn last_error() -> String {
    let p = cq_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn partitions_json() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cq_partitions_json(4, &mut out) }, CqStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["partitions"].as_array().unwrap().len(), 5);
    assert_eq!(v["partitions"][1]["partition"], "3+1");
}

#[test]
fn chartable_handle() {
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { cq_chartable_new(3, &mut t) }, CqStatus::Ok);
    assert_eq!(unsafe { cq_chartable_size(t) }, 3);
    let mut grid = vec![];
    for i in 0..3 {
        for j in 0..3 {
            let mut x = 0;
            assert_eq!(unsafe { cq_chartable_entry(t, i, j, &mut x) }, CqStatus::Ok);
            grid.push(x);
        }
    }
    assert_eq!(grid, [1, 1, 1, 2, 0, -1, 1, -1, 1]);
    let mut label = ptr::null_mut();
    assert_eq!(unsafe { cq_chartable_label(t, 1, 1, &mut label) }, CqStatus::Ok);
    assert_eq!(take(label), "2+1");

    let mut x = 0;
    assert_eq!(unsafe { cq_chartable_entry(t, 3, 0, &mut x) }, CqStatus::InvalidArgument);
    assert!(last_error().contains("outside"));
    unsafe { cq_chartable_free(t) };
    unsafe { cq_chartable_free(ptr::null_mut()) };
    assert_eq!(unsafe { cq_chartable_size(ptr::null()) }, 0);
}

#[test]
fn hurwitz_values() {
    let cases = [
        (2, 0, "2;2", 0, 0, "1/2"),
        (2, 1, "", 0, 0, "2"),
        (3, 0, "", 4, 1, "4"),
        (4, 0, "", 6, 1, "120"),
    ];
    for (d, g, classes, s, conn, want) in cases {
        let c = CString::new(classes).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { cq_hurwitz(d, g, c.as_ptr(), s, conn, &mut out) }, CqStatus::Ok, "{}", last_error());
        assert_eq!(take(out), want, "d={d} g={g} {classes} s={s}");
    }
}

#[test]
fn errors_are_reported() {
    let mut out = ptr::null_mut();
    let bad = CString::new("2+x").unwrap();
    assert_eq!(unsafe { cq_hurwitz(3, 0, bad.as_ptr(), 0, 0, &mut out) }, CqStatus::Parse);
    assert!(out.is_null());
    assert!(!last_error().is_empty());

    let wrong = CString::new("3").unwrap();
    let s = unsafe { cq_hurwitz(2, 0, wrong.as_ptr(), 0, 0, &mut out) };
    assert_eq!(s, CqStatus::DegreeMismatch, "{}", last_error());

    assert_eq!(unsafe { cq_hurwitz(2, 0, ptr::null(), 0, 0, &mut out) }, CqStatus::NullPointer);
    assert_eq!(unsafe { cq_partitions_json(3, ptr::null_mut()) }, CqStatus::NullPointer);
    assert_eq!(unsafe { cq_chartable_new(13, &mut ptr::null_mut()) }, CqStatus::InvalidArgument, "{}", last_error());

    let mut passed = 7;
    assert_eq!(unsafe { cq_relfin(1, 8, &mut passed) }, CqStatus::InvalidArgument);
    assert_eq!(passed, 7);
}

#[test]
fn last_error_is_per_thread() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cq_partitions_json(3, ptr::null_mut()) }, CqStatus::NullPointer);
    std::thread::spawn(|| assert!(cq_last_error().is_null())).join().unwrap();
    assert_eq!(unsafe { cq_partitions_json(2, &mut out) }, CqStatus::Ok);
    take(out);
}

#[test]
fn antid_and_relfin() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cq_antid_json(1, 0, 0, 0, 0, &mut out) }, CqStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["s_exponent"], -2);
    assert_eq!(v["sign"], "-1");

    assert_eq!(unsafe { cq_antid_json(2, 0, -1, -1, 6, &mut out) }, CqStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert!(v["u_series"].as_str().unwrap().ends_with("O(u^6)"));

    let mut passed = 0;
    assert_eq!(unsafe { cq_relfin(3, 10, &mut passed) }, CqStatus::Ok);
    assert_eq!(passed, 1);
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(cq_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
