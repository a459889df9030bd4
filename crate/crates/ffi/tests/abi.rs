use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use binsum_ffi::*;
use libc::c_char;

unsafe fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let owned = CStr::from_ptr(s).to_str().unwrap().to_owned();
    binsum_string_free(s);
    owned
}

unsafe fn last_error() -> String {
    let p = binsum_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn scalar_functions() {
    unsafe {
        let mut v = 0u64;
        assert_eq!(binsum_digit_sum(100, 5, &mut v), BinsumStatus::Ok);
        assert_eq!(v, 4);
        assert_eq!(binsum_nu_factorial(10, 2, &mut v), BinsumStatus::Ok);
        assert_eq!(v, 8);
        assert_eq!(binsum_nu_binomial(8, 4, 2, &mut v), BinsumStatus::Ok);
        assert_eq!(v, 1);
        assert_eq!(binsum_theorem_bound(5, 3), 8);

        assert_eq!(
            binsum_digit_sum(3, 1, &mut v),
            BinsumStatus::InvalidArgument
        );
        assert!(last_error().contains("base"));
        assert_eq!(
            binsum_nu_factorial(3, 4, &mut v),
            BinsumStatus::InvalidArgument
        );
        assert!(last_error().contains("not a prime"));
        assert_eq!(
            binsum_nu_binomial(2, 3, 2, &mut v),
            BinsumStatus::InvalidArgument
        );
        assert_eq!(
            binsum_digit_sum(3, 2, ptr::null_mut()),
            BinsumStatus::NullPointer
        );
    }
}

#[test]
fn f_values_for_every_algorithm() {
    unsafe {
        for algo in [
            BinsumAlgorithm::Direct,
            BinsumAlgorithm::RecR,
            BinsumAlgorithm::RecMixed,
        ] {
            let mut s = ptr::null_mut();
            assert_eq!(binsum_f_value(2, 2, algo, &mut s), BinsumStatus::Ok);
            assert_eq!(take_string(s), "40");
        }
        let mut s = ptr::null_mut();
        assert_eq!(
            binsum_f_value(25, 25, BinsumAlgorithm::RecMixed, &mut s),
            BinsumStatus::Ok
        );
        assert_eq!(take_string(s), binsum::f_direct(25, 25).to_string());
        assert_eq!(
            binsum_f_value(1, 1, BinsumAlgorithm::Direct, ptr::null_mut()),
            BinsumStatus::NullPointer
        );
    }
}

#[test]
fn memo_handle() {
    unsafe {
        let memo = binsum_memo_new();
        assert_eq!(binsum_memo_len(memo), 0);
        let mut s = ptr::null_mut();
        assert_eq!(
            binsum_memo_f_value(memo, 4, 3, BinsumAlgorithm::RecR, &mut s),
            BinsumStatus::Ok
        );
        assert_eq!(take_string(s), binsum::f_direct(4, 3).to_string());
        assert_eq!(binsum_memo_len(memo), 5 * 4);
        assert_eq!(
            binsum_memo_f_value(memo, 6, 3, BinsumAlgorithm::RecMixed, &mut s),
            BinsumStatus::Ok
        );
        assert_eq!(take_string(s), binsum::f_direct(6, 3).to_string());
        binsum_memo_free(memo);

        assert_eq!(binsum_memo_len(ptr::null()), 0);
        assert_eq!(
            binsum_memo_f_value(ptr::null_mut(), 1, 1, BinsumAlgorithm::Direct, &mut s),
            BinsumStatus::NullPointer
        );
        binsum_memo_free(ptr::null_mut());
    }
}

#[test]
fn record_handle() {
    unsafe {
        let rec = binsum_verify(2, 1);
        let mut summary = BinsumRecordSummary::default();
        assert_eq!(binsum_record_summary(rec, &mut summary), BinsumStatus::Ok);
        assert_eq!(
            summary,
            BinsumRecordSummary {
                n: 2,
                r: 1,
                nu2: 4,
                nu2_infinite: false,
                bound: 3,
                slack: 1,
                slack_infinite: false,
                pass: true,
            }
        );
        let mut s = ptr::null_mut();
        assert_eq!(binsum_record_f_value(rec, &mut s), BinsumStatus::Ok);
        assert_eq!(take_string(s), "16");
        assert_eq!(binsum_record_to_json(rec, &mut s), BinsumStatus::Ok);
        let parsed: binsum::TheoremRecord = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(parsed, binsum::verifier::verify_theorem(2, 1));
        binsum_record_free(rec);

        let rec = binsum_verify(0, 5);
        assert_eq!(binsum_record_summary(rec, &mut summary), BinsumStatus::Ok);
        assert!(summary.nu2_infinite && summary.slack_infinite && summary.pass);
        binsum_record_free(rec);

        assert_eq!(
            binsum_record_summary(ptr::null(), &mut summary),
            BinsumStatus::NullPointer
        );
    }
}

#[test]
fn report_handle() {
    unsafe {
        let checks = CString::new("theorem,shapiro").unwrap();
        let mut one = ptr::null_mut();
        let mut four = ptr::null_mut();
        assert_eq!(
            binsum_sweep(20, 10, checks.as_ptr(), 1, 100, &mut one),
            BinsumStatus::Ok
        );
        assert_eq!(
            binsum_sweep(20, 10, checks.as_ptr(), 4, 100, &mut four),
            BinsumStatus::Ok
        );
        assert_eq!(binsum_report_total(one), 21 * 11);
        assert_eq!(binsum_report_failure_count(one), 0);

        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(binsum_report_to_json(one, false, &mut a), BinsumStatus::Ok);
        assert_eq!(binsum_report_to_json(four, false, &mut b), BinsumStatus::Ok);
        let (a, b) = (take_string(a), take_string(b));
        assert_eq!(a, b);
        let report: binsum::SweepReport = serde_json::from_str(&a).unwrap();
        assert_eq!(report.total, 231);

        binsum_report_free(one);
        binsum_report_free(four);

        let bad = CString::new("theorem,nope").unwrap();
        let mut r = ptr::null_mut();
        assert_eq!(
            binsum_sweep(1, 1, bad.as_ptr(), 1, 10, &mut r),
            BinsumStatus::InvalidArgument
        );
        assert!(last_error().contains("nope"));
        assert!(r.is_null());
        assert_eq!(
            binsum_sweep(1, 1, ptr::null(), 1, 10, &mut r),
            BinsumStatus::NullPointer
        );
        assert_eq!(binsum_report_total(ptr::null()), 0);
    }
}

/// Compiles and runs a C program against the generated header and the
/// static library when a C compiler and the archive are available.
#[test]
fn c_program_links_against_header() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header_dir = crate_dir.join("include");
    assert!(header_dir.join("binsum.h").exists());

    let Ok(exe) = std::env::current_exe() else {
        return;
    };
    // target/<profile>/deps/abi-xxxx -> target/<profile>
    let Some(profile_dir) = exe.parent().and_then(Path::parent) else {
        return;
    };
    let archive = profile_dir.join("libbinsum_ffi.a");
    if !archive.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping C link test");
        return;
    }

    let dir = tempfile::tempdir().unwrap();
    let bin = dir.path().join("smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&header_dir)
        .arg(crate_dir.join("tests").join("smoke.c"))
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C smoke program failed to build");
    let out = Command::new(&bin).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "F(2,2)=40 nu2=4 bound=3 slack=1 pass=1\n"
    );
}
