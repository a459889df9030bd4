//! C ABI over `binsum`.
//!
//! Every fallible call returns a [`BinsumStatus`]; on anything other than
//! `BINSUM_STATUS_OK` a message is available from [`binsum_last_error`]
//! on the same thread. Big integers cross the boundary as NUL-terminated
//! decimal strings owned by the caller and released with
//! [`binsum_string_free`]. Memo tables, records and reports are opaque
//! handles with their own `_free` functions.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;

use binsum::binomial_sums::{Algorithm, MemoTable};
use binsum::cli::{render_record, render_sweep, OutputFormat};
use binsum::verifier::{parse_checks, sweep_with, theorem_bound, verify_theorem, SweepConfig};
use binsum::{Error, Slack, SweepReport, TheoremRecord, Valuation};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinsumStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// A division that must be exact was not, or two routes disagreed.
    CheckFailed = 3,
    Internal = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinsumAlgorithm {
    Direct = 0,
    RecR = 1,
    RecMixed = 2,
}

impl From<BinsumAlgorithm> for Algorithm {
    fn from(a: BinsumAlgorithm) -> Self {
        match a {
            BinsumAlgorithm::Direct => Algorithm::Direct,
            BinsumAlgorithm::RecR => Algorithm::RecR,
            BinsumAlgorithm::RecMixed => Algorithm::RecMixed,
        }
    }
}

/// Cache of F(n, r) values shared across calls.
pub struct BinsumMemo(MemoTable);

/// One theorem check.
pub struct BinsumRecord(TheoremRecord);

/// Result of a sweep.
pub struct BinsumReport(SweepReport);

/// Fixed-width view of a [`BinsumRecord`].
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BinsumRecordSummary {
    pub n: u64,
    pub r: u64,
    /// Meaningless when `nu2_infinite` is set.
    pub nu2: u64,
    pub nu2_infinite: bool,
    pub bound: u64,
    /// Meaningless when `slack_infinite` is set.
    pub slack: i64,
    pub slack_infinite: bool,
    pub pass: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: BinsumStatus, msg: impl Into<String>) -> BinsumStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> BinsumStatus {
    let status = match e {
        Error::RouteMismatch { .. } | Error::InexactDivision { .. } => BinsumStatus::CheckFailed,
        _ => BinsumStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guarded(f: impl FnOnce() -> BinsumStatus) -> BinsumStatus {
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(BinsumStatus::Internal, "internal panic"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `out` must be valid for a write of one pointer, or NULL.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> BinsumStatus {
    if out.is_null() {
        return fail(BinsumStatus::NullPointer, "output pointer is NULL");
    }
    *out = into_c_string(s);
    BinsumStatus::Ok
}

/// # Safety
/// `out` must be valid for a write of one `T`, or NULL.
unsafe fn write_value<T>(out: *mut T, value: T) -> BinsumStatus {
    if out.is_null() {
        return fail(BinsumStatus::NullPointer, "output pointer is NULL");
    }
    *out = value;
    BinsumStatus::Ok
}

/// Message for the most recent failure on this thread, or NULL. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn binsum_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not have been freed yet. NULL is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn binsum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Sum of the base-`p` digits of `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn binsum_digit_sum(n: u64, p: u64, out: *mut u64) -> BinsumStatus {
    match binsum::padic::digit_sum(n, p) {
        Ok(v) => write_value(out, v),
        Err(e) => from_error(e),
    }
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn binsum_nu_factorial(n: u64, p: u64, out: *mut u64) -> BinsumStatus {
    match binsum::padic::nu_factorial(n, p) {
        Ok(v) => write_value(out, v),
        Err(e) => from_error(e),
    }
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn binsum_nu_binomial(s: u64, t: u64, p: u64, out: *mut u64) -> BinsumStatus {
    match binsum::padic::nu_binomial(s, t, p) {
        Ok(v) => write_value(out, v),
        Err(e) => from_error(e),
    }
}

/// `2n - min(α(n), α(r))`.
#[no_mangle]
pub extern "C" fn binsum_theorem_bound(n: u64, r: u64) -> u64 {
    theorem_bound(n, r)
}

/// F(n, r) as a decimal string, written to `*out`.
///
/// # Safety
/// `out` must be writable; free the string with `binsum_string_free`.
#[no_mangle]
pub unsafe extern "C" fn binsum_f_value(
    n: u64,
    r: u64,
    algorithm: BinsumAlgorithm,
    out: *mut *mut c_char,
) -> BinsumStatus {
    guarded(|| {
        let value = Algorithm::from(algorithm).evaluate(n, r, &mut MemoTable::new());
        write_string(out, value.to_string())
    })
}

#[no_mangle]
pub extern "C" fn binsum_memo_new() -> *mut BinsumMemo {
    Box::into_raw(Box::new(BinsumMemo(MemoTable::new())))
}

/// # Safety
/// `memo` must come from `binsum_memo_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn binsum_memo_free(memo: *mut BinsumMemo) {
    if !memo.is_null() {
        drop(Box::from_raw(memo));
    }
}

/// Number of cached values; 0 for NULL.
///
/// # Safety
/// `memo` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn binsum_memo_len(memo: *const BinsumMemo) -> usize {
    memo.as_ref().map_or(0, |m| m.0.len())
}

/// F(n, r) through a caller-owned cache. A handle must not be used from
/// two threads at once.
///
/// # Safety
/// `memo` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn binsum_memo_f_value(
    memo: *mut BinsumMemo,
    n: u64,
    r: u64,
    algorithm: BinsumAlgorithm,
    out: *mut *mut c_char,
) -> BinsumStatus {
    let Some(memo) = memo.as_mut() else {
        return fail(BinsumStatus::NullPointer, "memo handle is NULL");
    };
    guarded(|| {
        let value = Algorithm::from(algorithm).evaluate(n, r, &mut memo.0);
        write_string(out, value.to_string())
    })
}

/// Checks the bound at `(n, r)`. Never NULL; free with
/// `binsum_record_free`.
#[no_mangle]
pub extern "C" fn binsum_verify(n: u64, r: u64) -> *mut BinsumRecord {
    Box::into_raw(Box::new(BinsumRecord(verify_theorem(n, r))))
}

/// # Safety
/// `record` must come from `binsum_verify` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn binsum_record_free(record: *mut BinsumRecord) {
    if !record.is_null() {
        drop(Box::from_raw(record));
    }
}

/// # Safety
/// `record` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn binsum_record_summary(
    record: *const BinsumRecord,
    out: *mut BinsumRecordSummary,
) -> BinsumStatus {
    let Some(BinsumRecord(rec)) = record.as_ref() else {
        return fail(BinsumStatus::NullPointer, "record handle is NULL");
    };
    let (nu2, nu2_infinite) = match rec.nu2 {
        Valuation::Finite(v) => (v, false),
        Valuation::Infinite => (0, true),
    };
    let (slack, slack_infinite) = match rec.slack {
        Slack::Finite(v) => (v, false),
        Slack::Infinite => (0, true),
    };
    write_value(
        out,
        BinsumRecordSummary {
            n: rec.n,
            r: rec.r,
            nu2,
            nu2_infinite,
            bound: rec.bound,
            slack,
            slack_infinite,
            pass: rec.pass,
        },
    )
}

/// The record's F value as a decimal string.
///
/// # Safety
/// `record` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn binsum_record_f_value(
    record: *const BinsumRecord,
    out: *mut *mut c_char,
) -> BinsumStatus {
    match record.as_ref() {
        Some(rec) => write_string(out, rec.0.f_value.to_string()),
        None => fail(BinsumStatus::NullPointer, "record handle is NULL"),
    }
}

/// The record as JSON, same schema as `binsum verify --format json`.
///
/// # Safety
/// `record` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn binsum_record_to_json(
    record: *const BinsumRecord,
    out: *mut *mut c_char,
) -> BinsumStatus {
    let Some(rec) = record.as_ref() else {
        return fail(BinsumStatus::NullPointer, "record handle is NULL");
    };
    match render_record(&rec.0, OutputFormat::Json) {
        Ok(s) => write_string(out, s),
        Err(msg) => fail(BinsumStatus::Internal, msg),
    }
}

/// Runs the checks named in the comma-separated `checks` over
/// `[0, n_max] x [0, r_max]` and writes a report handle to `*out`.
///
/// # Safety
/// `checks` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn binsum_sweep(
    n_max: u64,
    r_max: u64,
    checks: *const c_char,
    workers: usize,
    failure_cap: usize,
    out: *mut *mut BinsumReport,
) -> BinsumStatus {
    if checks.is_null() || out.is_null() {
        return fail(
            BinsumStatus::NullPointer,
            "checks or output pointer is NULL",
        );
    }
    let Ok(list) = CStr::from_ptr(checks).to_str() else {
        return fail(BinsumStatus::InvalidArgument, "checks is not UTF-8");
    };
    let checks = match parse_checks(list) {
        Ok(c) => c,
        Err(e) => return from_error(e),
    };
    guarded(|| {
        let config = SweepConfig {
            n_max,
            r_max,
            checks,
            workers,
            failure_cap,
        };
        let report = sweep_with(&config);
        *out = Box::into_raw(Box::new(BinsumReport(report)));
        BinsumStatus::Ok
    })
}

/// # Safety
/// `report` must come from `binsum_sweep` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn binsum_report_free(report: *mut BinsumReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Grid points visited; 0 for NULL.
///
/// # Safety
/// `report` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn binsum_report_total(report: *const BinsumReport) -> u64 {
    report.as_ref().map_or(0, |r| r.0.total)
}

/// Failures seen, including any beyond the cap; 0 for NULL.
///
/// # Safety
/// `report` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn binsum_report_failure_count(report: *const BinsumReport) -> u64 {
    report.as_ref().map_or(0, |r| r.0.failure_count)
}

/// The report as JSON, same schema as `binsum sweep --format json`. With
/// `include_timing` false the elapsed time is zeroed.
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn binsum_report_to_json(
    report: *const BinsumReport,
    include_timing: bool,
    out: *mut *mut c_char,
) -> BinsumStatus {
    let Some(BinsumReport(report)) = report.as_ref() else {
        return fail(BinsumStatus::NullPointer, "report handle is NULL");
    };
    let rendered = if include_timing {
        render_sweep(report, OutputFormat::Json)
    } else {
        render_sweep(&report.without_timing(), OutputFormat::Json)
    };
    match rendered {
        Ok(s) => write_string(out, s),
        Err(msg) => fail(BinsumStatus::Internal, msg),
    }
}
