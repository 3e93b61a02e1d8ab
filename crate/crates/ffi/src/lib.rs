//! C ABI over `wonder-core`.
//!
//! Every entry point returns a [`WonderStatus`]. On failure the message is
//! kept per thread and read back with [`wonder_last_error`]. Strings handed
//! out by the library are released with [`wonder_string_free`], handles with
//! their own `_free` function. Null handles are accepted by every `_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wonder_core::cli::{exit_code, EXIT_BUDGET, EXIT_SCHEMA, EXIT_VALIDATION};
use wonder_core::error::Error;
use wonder_core::job::{self, Job, Outcome, RunOptions};
use wonder_core::presentation::Presentation;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WonderStatus {
    Ok = 0,
    /// The computation ran and a check failed, or the input is inconsistent.
    Validation = 1,
    /// The job document or an argument is malformed.
    Schema = 2,
    /// The good-fan search ran out of subdivisions.
    Budget = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    /// The output buffer is too short; the required length was written.
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WonderCommand {
    Validate = 0,
    Poset = 1,
    Nested = 2,
    Present = 3,
    Stratum = 4,
    Betti = 5,
    Check = 6,
    Goodfan = 7,
    GoodfanSearch = 8,
}

/// Optional overrides for [`wonder_job_run`]. Zero means "use the job file".
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct WonderRunOptions {
    pub max_degree: usize,
    pub budget: usize,
    pub seed: u64,
}

/// A parsed and validated job document.
pub struct WonderJob(Job);

/// A presentation of the integer cohomology of a model or a stratum.
pub struct WonderPresentation {
    pres: Presentation,
    hilbert: Vec<usize>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> WonderStatus {
    match exit_code(e) {
        EXIT_SCHEMA => WonderStatus::Schema,
        EXIT_BUDGET => WonderStatus::Budget,
        EXIT_VALIDATION => WonderStatus::Validation,
        _ => WonderStatus::Validation,
    }
}

struct Fail(WonderStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(WonderStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status and recording the message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> WonderStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WonderStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            WonderStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(WonderStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

unsafe fn copy_out<T: Copy>(src: &[T], buf: *mut T, cap: usize, len: *mut usize) -> Result<(), Fail> {
    if len.is_null() {
        return Err(null("len"));
    }
    *len = src.len();
    if src.len() > cap {
        return Err(Fail(WonderStatus::BufferTooSmall, format!("need {} entries, buffer holds {cap}", src.len())));
    }
    if !src.is_empty() {
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn wonder_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn wonder_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wonder_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a job document. On success `*out` owns a new handle.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wonder_job_from_json(json: *const c_char, out: *mut *mut WonderJob) -> WonderStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let job = Job::parse(read_str(json, "json")?)?;
        *out = Box::into_raw(Box::new(WonderJob(job)));
        Ok(())
    })
}

/// # Safety
/// `job` must be null or a handle from [`wonder_job_from_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wonder_job_free(job: *mut WonderJob) {
    if !job.is_null() {
        drop(Box::from_raw(job));
    }
}

fn run_options(o: Option<&WonderRunOptions>, job: &Job) -> RunOptions {
    let o = o.copied().unwrap_or_default();
    RunOptions {
        max_degree: (o.max_degree > 0).then_some(o.max_degree).or(job.spec.options.max_degree),
        budget: (o.budget > 0).then_some(o.budget),
        seed: o.seed,
    }
}

/// Runs a command and writes its JSON document to `*out_json` and whether
/// all checks passed to `*passed`. A failed check is not an error: the call
/// returns `WONDER_STATUS_OK` with `*passed` false. `nested` is required for
/// `WONDER_COMMAND_STRATUM` only; `options` may be null.
///
/// # Safety
/// `job` must be a live handle; `nested` null or nul-terminated; `options`
/// null or readable; `out_json` and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn wonder_job_run(
    job: *const WonderJob,
    command: WonderCommand,
    nested: *const c_char,
    options: *const WonderRunOptions,
    out_json: *mut *mut c_char,
    passed: *mut bool,
) -> WonderStatus {
    guard(|| {
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        if passed.is_null() {
            return Err(null("passed"));
        }
        *out_json = ptr::null_mut();
        let job = &job.as_ref().ok_or_else(|| null("job"))?.0;
        let run = run_options(options.as_ref(), job);
        let outcome: Outcome = match command {
            WonderCommand::Validate => job::validate(job)?,
            WonderCommand::Poset => job::poset(job)?,
            WonderCommand::Nested => job::nested(job)?,
            WonderCommand::Present => job::present(job, &run)?,
            WonderCommand::Stratum => job::stratum(job, read_str(nested, "nested")?, &run)?,
            WonderCommand::Betti => job::betti(job)?,
            WonderCommand::Check => job::check(job, &run)?,
            WonderCommand::Goodfan => job::goodfan(job, false, &run)?,
            WonderCommand::GoodfanSearch => job::goodfan(job, true, &run)?,
        };
        let text = serde_json::to_string_pretty(&outcome.json).map_err(|e| Fail(WonderStatus::Panic, e.to_string()))?;
        *out_json = into_c_string(text);
        *passed = outcome.ok;
        Ok(())
    })
}

/// Betti numbers of the model from the blowup formula, in even degrees.
///
/// # Safety
/// `job` must be a live handle; `buf` must hold `cap` entries; `len` writable.
#[no_mangle]
pub unsafe extern "C" fn wonder_job_betti(job: *const WonderJob, buf: *mut i64, cap: usize, len: *mut usize) -> WonderStatus {
    guard(|| {
        let job = &job.as_ref().ok_or_else(|| null("job"))?.0;
        let b = wonder_core::oracle::model_betti(&job.fan, &job.building()?)?;
        copy_out(&b, buf, cap, len)
    })
}

/// Builds the presentation of the model, or of the stratum named by
/// `nested` (members `g1..`, rays `r0..`, comma separated) when non-null.
///
/// # Safety
/// `job` must be a live handle; `nested` null or nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wonder_presentation_new(
    job: *const WonderJob,
    nested: *const c_char,
    out: *mut *mut WonderPresentation,
) -> WonderStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let job = &job.as_ref().ok_or_else(|| null("job"))?.0;
        let pres = if nested.is_null() {
            job::model_presentation(job)?
        } else {
            job::stratum_presentation(job, read_str(nested, "nested")?)?
        };
        let hilbert = pres.hilbert();
        *out = Box::into_raw(Box::new(WonderPresentation { pres, hilbert }));
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from [`wonder_presentation_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wonder_presentation_free(p: *mut WonderPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Ranks of the cohomology in degrees `0, 2, ..., 2 dim`.
///
/// # Safety
/// `p` must be a live handle; `buf` must hold `cap` entries; `len` writable.
#[no_mangle]
pub unsafe extern "C" fn wonder_presentation_hilbert(
    p: *const WonderPresentation,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> WonderStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("presentation"))?;
        copy_out(&p.hilbert, buf, cap, len)
    })
}

/// Number of generators of the relation ideal.
///
/// # Safety
/// `p` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wonder_presentation_relation_count(p: *const WonderPresentation, out: *mut usize) -> WonderStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null("presentation"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = p.pres.relations().len();
        Ok(())
    })
}

/// The presentation as a JSON document (same shape as `wonder present`).
///
/// # Safety
/// `p` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wonder_presentation_json(p: *const WonderPresentation, out: *mut *mut c_char) -> WonderStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let p = p.as_ref().ok_or_else(|| null("presentation"))?;
        let outcome = job::presentation_outcome(&p.pres, &RunOptions::default());
        let text = serde_json::to_string_pretty(&outcome.json).map_err(|e| Fail(WonderStatus::Panic, e.to_string()))?;
        *out = into_c_string(text);
        Ok(())
    })
}

/// The presentation as human-readable text.
///
/// # Safety
/// `p` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wonder_presentation_text(p: *const WonderPresentation, out: *mut *mut c_char) -> WonderStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let p = p.as_ref().ok_or_else(|| null("presentation"))?;
        *out = into_c_string(wonder_core::render::render_text(&p.pres, &p.hilbert));
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_codes_match_cli_exit_codes() {
        assert_eq!(status_of(&Error::Schema("x".into())) as i32, EXIT_SCHEMA);
        assert_eq!(status_of(&Error::BudgetExhausted(2)) as i32, EXIT_BUDGET);
        assert_eq!(status_of(&Error::NotGood("x".into())) as i32, EXIT_VALIDATION);
    }

    #[test]
    fn panics_become_a_status() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, WonderStatus::Panic);
        let msg = unsafe { CStr::from_ptr(wonder_last_error()) }.to_str().unwrap();
        assert!(msg.contains("boom"));
    }

    #[test]
    fn short_buffer_reports_length() {
        let mut len = 0;
        let mut buf = [0i64; 1];
        let r = unsafe { copy_out(&[1i64, 2, 3], buf.as_mut_ptr(), 1, &mut len) };
        assert!(matches!(r, Err(Fail(WonderStatus::BufferTooSmall, _))));
        assert_eq!(len, 3);
    }
}
