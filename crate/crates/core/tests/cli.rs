use std::process::{Command, Output};

use binsum::cli::TableRow;
use binsum::{Slack, SweepReport, TheoremRecord, Valuation};

fn binsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binsum"))
        .args(args)
        .output()
        .expect("run binsum")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_prints_decimal() {
    let out = binsum(&["compute", "--n", "2", "--r", "1", "--algo", "direct"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "16\n");
    assert_eq!(
        stdout(&binsum(&["compute", "--n", "3", "--r", "0"])),
        "64\n"
    );
    assert_eq!(
        stdout(&binsum(&[
            "compute",
            "--n",
            "2",
            "--r",
            "2",
            "--algo",
            "rec-mixed"
        ])),
        "40\n"
    );
}

#[test]
fn malformed_flags_exit_one_on_stderr() {
    for args in [
        &["compute", "--n", "-3", "--r", "1"][..],
        &["compute", "--r", "1"],
        &["verify", "--n", "1", "--r", "1", "--format", "xml"],
        &[
            "sweep",
            "--n-max",
            "2",
            "--r-max",
            "2",
            "--checks",
            "theorem,magic",
        ],
        &["table"],
    ] {
        let out = binsum(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verify_json_record() {
    let out = binsum(&["verify", "--n", "2", "--r", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"f_value\": \"16\""), "{text}");
    let rec: TheoremRecord = serde_json::from_str(&text).unwrap();
    assert_eq!(
        (rec.nu2, rec.bound, rec.slack, rec.pass),
        (Valuation::Finite(4), 3, Slack::Finite(1), true)
    );

    let rec: TheoremRecord = serde_json::from_str(&stdout(&binsum(&[
        "verify", "--n", "1", "--r", "1", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(rec.slack, Slack::Finite(0));

    let out = binsum(&["verify", "--n", "0", "--r", "3", "--format", "json"]);
    let rec: TheoremRecord = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((rec.nu2, rec.slack), (Valuation::Infinite, Slack::Infinite));

    assert_eq!(
        binsum(&["verify", "--n", "0", "--r", "0"]).status.code(),
        Some(0)
    );
}

#[test]
fn big_values_stay_exact_in_json() {
    let out = binsum(&["verify", "--n", "60", "--r", "40", "--format", "json"]);
    let rec: TheoremRecord = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rec.f_value, binsum::f_direct(60, 40));
    let raw: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(raw["f_value"].is_string());
}

#[test]
fn sweep_to_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = binsum(&[
        "sweep",
        "--n-max",
        "12",
        "--r-max",
        "6",
        "--checks",
        "all",
        "--workers",
        "3",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let report: SweepReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.total, 13 * 7);
    assert!(report.passed());
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn sweep_unwritable_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("report.json");
    let out = binsum(&[
        "sweep",
        "--n-max",
        "1",
        "--r-max",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot write"));
}

#[test]
fn sweep_examples_exit_zero() {
    let out = binsum(&[
        "sweep", "--n-max", "0", "--r-max", "0", "--checks", "theorem", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: SweepReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.total, 1);

    let out = binsum(&[
        "sweep",
        "--n-max",
        "30",
        "--r-max",
        "4",
        "--checks",
        "closed-forms,guo-zeng,shapiro",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("failures: 0"));

    let out = binsum(&[
        "sweep", "--n-max", "5", "--r-max", "5", "--checks", "all", "--format", "csv",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("check,evaluations,failures\n"));
    assert_eq!(text.lines().count(), 1 + 8);
}

#[test]
fn table_formats() {
    let out = binsum(&["table", "--n-max", "2", "--r-max", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(
        reader
            .headers()
            .unwrap()
            .iter()
            .collect::<Vec<_>>()
            .join(","),
        "n,r,f_nu2,bound,slack,pass"
    );
    let rows: Vec<TableRow> = reader.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(
        rows[3],
        TableRow {
            n: 1,
            r: 1,
            f_nu2: Valuation::Finite(1),
            bound: 1,
            slack: Slack::Finite(0),
            pass: true
        }
    );

    let out = binsum(&["table", "--n-max", "0", "--r-max", "0"]);
    assert_eq!(stdout(&out).lines().count(), 2);

    let out = binsum(&["table", "--n-max", "1", "--r-max", "2", "--format", "csv"]);
    assert!(stdout(&out).contains("0,1,inf,0,inf,true"));
}
