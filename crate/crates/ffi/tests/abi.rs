use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::ptr;

use wonder_ffi::*;

fn job_json(name: &str) -> CString {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data").join(name);
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn load(name: &str) -> *mut WonderJob {
    let mut job = ptr::null_mut();
    assert_eq!(unsafe { wonder_job_from_json(job_json(name).as_ptr(), &mut job) }, WonderStatus::Ok);
    assert!(!job.is_null());
    job
}

fn last_error() -> String {
    let p = wonder_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn run(job: *const WonderJob, cmd: WonderCommand, nested: Option<&str>, opts: Option<&WonderRunOptions>) -> (WonderStatus, Option<serde_json::Value>, bool) {
    let nested = nested.map(|s| CString::new(s).unwrap());
    let mut out = ptr::null_mut();
    let mut passed = false;
    let status = unsafe {
        wonder_job_run(
            job,
            cmd,
            nested.as_ref().map_or(ptr::null(), |s| s.as_ptr()),
            opts.map_or(ptr::null(), |o| o as *const _),
            &mut out,
            &mut passed,
        )
    };
    if out.is_null() {
        return (status, None, passed);
    }
    let v = serde_json::from_str(unsafe { CStr::from_ptr(out) }.to_str().unwrap()).unwrap();
    unsafe { wonder_string_free(out) };
    (status, Some(v), passed)
}

#[test]
fn check_through_the_abi() {
    let job = load("quadric_coordinate.json");
    let (status, v, passed) = run(job, WonderCommand::Check, None, None);
    assert_eq!(status, WonderStatus::Ok);
    assert!(passed);
    assert_eq!(v.unwrap()["report"]["oracle"], serde_json::json!([1, 3, 1]));
    unsafe { wonder_job_free(job) };
}

#[test]
fn failed_check_is_not_an_error() {
    let job = load("plane_diagonal.json");
    let (status, v, passed) = run(job, WonderCommand::Validate, None, None);
    assert_eq!(status, WonderStatus::Ok);
    assert!(v.is_some());
    assert!(!passed);
    unsafe { wonder_job_free(job) };
}

#[test]
fn status_codes() {
    let mut job = ptr::null_mut();
    let bad = job_json("bad_schema.json");
    assert_eq!(unsafe { wonder_job_from_json(bad.as_ptr(), &mut job) }, WonderStatus::Schema);
    assert!(job.is_null());
    assert!(last_error().contains("phi"));

    let garbage = [0xffu8, 0xfe, 0];
    assert_eq!(unsafe { wonder_job_from_json(garbage.as_ptr().cast(), &mut job) }, WonderStatus::InvalidUtf8);
    assert_eq!(unsafe { wonder_job_from_json(ptr::null(), &mut job) }, WonderStatus::NullPointer);

    let job = load("quadric_diagonals.json");
    let tight = WonderRunOptions { max_degree: 0, budget: 2, seed: 0 };
    assert_eq!(run(job, WonderCommand::GoodfanSearch, None, Some(&tight)).0, WonderStatus::Budget);
    assert_eq!(run(job, WonderCommand::Present, None, None).0, WonderStatus::Validation);
    assert_eq!(run(job, WonderCommand::Stratum, None, None).0, WonderStatus::NullPointer);
    assert_eq!(run(ptr::null(), WonderCommand::Poset, None, None).0, WonderStatus::NullPointer);
    unsafe { wonder_job_free(job) };
}

#[test]
fn search_honours_the_seed() {
    let job = load("quadric_diagonals.json");
    let opts = WonderRunOptions { max_degree: 0, budget: 0, seed: 11 };
    let (status, v, passed) = run(job, WonderCommand::GoodfanSearch, None, Some(&opts));
    assert_eq!(status, WonderStatus::Ok);
    assert!(passed);
    let v = v.unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(v["fan"]["rays"].as_array().unwrap().len(), 8);
    unsafe { wonder_job_free(job) };
}

#[test]
fn presentation_handle() {
    let job = load("quadric_coordinate.json");
    let mut pres = ptr::null_mut();
    assert_eq!(unsafe { wonder_presentation_new(job, ptr::null(), &mut pres) }, WonderStatus::Ok);

    let mut len = 0;
    let mut small = [0usize; 2];
    let s = unsafe { wonder_presentation_hilbert(pres, small.as_mut_ptr(), small.len(), &mut len) };
    assert_eq!(s, WonderStatus::BufferTooSmall);
    assert_eq!(len, 3);
    let mut buf = [0usize; 8];
    assert_eq!(unsafe { wonder_presentation_hilbert(pres, buf.as_mut_ptr(), buf.len(), &mut len) }, WonderStatus::Ok);
    assert_eq!(&buf[..len], &[1, 3, 1]);

    let mut count = 0;
    assert_eq!(unsafe { wonder_presentation_relation_count(pres, &mut count) }, WonderStatus::Ok);
    assert!(count > 0);

    let mut text = ptr::null_mut();
    assert_eq!(unsafe { wonder_presentation_text(pres, &mut text) }, WonderStatus::Ok);
    assert!(unsafe { CStr::from_ptr(text) }.to_str().unwrap().contains("hilbert: (1,3,1)"));
    unsafe { wonder_string_free(text) };

    let mut json = ptr::null_mut();
    assert_eq!(unsafe { wonder_presentation_json(pres, &mut json) }, WonderStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(json) }.to_str().unwrap()).unwrap();
    assert_eq!(v["hilbert"], serde_json::json!([1, 3, 1]));
    unsafe { wonder_string_free(json) };
    unsafe { wonder_presentation_free(pres) };

    let nested = CString::new("g1").unwrap();
    let mut stratum = ptr::null_mut();
    assert_eq!(unsafe { wonder_presentation_new(job, nested.as_ptr(), &mut stratum) }, WonderStatus::Ok);
    unsafe { wonder_presentation_free(stratum) };

    let missing = CString::new("g9").unwrap();
    assert_eq!(unsafe { wonder_presentation_new(job, missing.as_ptr(), &mut stratum) }, WonderStatus::Schema);
    assert!(stratum.is_null());
    unsafe { wonder_job_free(job) };
}

#[test]
fn betti_into_a_buffer() {
    let job = load("quadric_diagonals.json");
    let mut buf = [0i64; 4];
    let mut len = 0;
    assert_eq!(unsafe { wonder_job_betti(job, buf.as_mut_ptr(), buf.len(), &mut len) }, WonderStatus::Ok);
    assert_eq!(&buf[..len], &[1, 4, 1]);
    unsafe { wonder_job_free(job) };
}

#[test]
fn free_accepts_null() {
    unsafe {
        wonder_job_free(ptr::null_mut());
        wonder_presentation_free(ptr::null_mut());
        wonder_string_free(ptr::null_mut());
    }
    assert!(!unsafe { CStr::from_ptr(wonder_version()) }.to_str().unwrap().is_empty());
}
