//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage or I/O errors, 2 when a
//! mathematical check fails.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::binomial_sums::{Algorithm, MemoTable};
use crate::padic::Valuation;
use crate::types::Slack;
use crate::verifier::{
    parse_checks, sweep_with, theorem_table, verify_theorem, CheckKind, SweepConfig, SweepReport,
    TheoremRecord, DEFAULT_FAILURE_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

pub const CSV_HEADER: &str = "n,r,f_nu2,bound,slack,pass";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Plain,
}

#[derive(Debug, Parser)]
#[command(
    name = "binsum",
    version,
    about = "Central binomial power sums and their 2-adic orders"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print F(n, r) in decimal.
    Compute {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        /// direct, rec-r or rec-mixed
        #[arg(long = "algo", default_value = "direct")]
        algo: Algorithm,
    },
    /// Check the 2-adic lower bound at one point.
    Verify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Run checks over [0, n-max] x [0, r-max].
    Sweep {
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        r_max: u64,
        /// Comma-separated: theorem, split, rec-2-3, rec-3-1, closed-forms,
        /// guo-zeng, shapiro, odd-vanishing, or all
        #[arg(long, default_value = "theorem", value_parser = parse_checks)]
        checks: BTreeSet<CheckKind>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long, default_value_t = DEFAULT_FAILURE_CAP)]
        failure_cap: usize,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate nu2(F(n, r)) against the bound.
    Table {
        #[arg(long)]
        n_max: u64,
        #[arg(long)]
        r_max: u64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
}

/// One row of `verify`/`table` output in json and csv form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u64,
    pub r: u64,
    pub f_nu2: Valuation,
    pub bound: u64,
    pub slack: Slack,
    pub pass: bool,
}

impl From<&TheoremRecord> for TableRow {
    fn from(rec: &TheoremRecord) -> Self {
        TableRow {
            n: rec.n,
            r: rec.r,
            f_nu2: rec.nu2,
            bound: rec.bound,
            slack: rec.slack,
            pass: rec.pass,
        }
    }
}

struct Output {
    text: String,
    code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };

    let (out_path, result) = match cli.command {
        Command::Compute { n, r, algo } => (None, Ok(compute(n, r, algo))),
        Command::Verify { n, r, format } => (None, verify(n, r, format)),
        Command::Sweep {
            n_max,
            r_max,
            checks,
            workers,
            failure_cap,
            format,
            out,
        } => {
            let config = SweepConfig {
                n_max,
                r_max,
                checks,
                workers,
                failure_cap,
            };
            (out, sweep(&config, format))
        }
        Command::Table {
            n_max,
            r_max,
            format,
        } => (None, table(n_max, r_max, format)),
    };

    let output = match result {
        Ok(out) => out,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return EXIT_USAGE;
        }
    };

    let written = match &out_path {
        Some(path) => std::fs::write(path, output.text.as_bytes())
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout
            .write_all(output.text.as_bytes())
            .map_err(|e| format!("cannot write to stdout: {e}")),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_USAGE;
    }
    output.code
}

fn compute(n: u64, r: u64, algo: Algorithm) -> Output {
    let value = algo.evaluate(n, r, &mut MemoTable::new());
    Output {
        text: format!("{value}\n"),
        code: EXIT_OK,
    }
}

fn status(pass: bool) -> i32 {
    if pass {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn verify(n: u64, r: u64, format: OutputFormat) -> Result<Output, String> {
    let record = verify_theorem(n, r);
    Ok(Output {
        text: render_record(&record, format)?,
        code: status(record.pass),
    })
}

pub fn render_record(record: &TheoremRecord, format: OutputFormat) -> Result<String, String> {
    match format {
        OutputFormat::Json => json(record),
        OutputFormat::Csv => csv_rows(std::iter::once(TableRow::from(record))),
        OutputFormat::Plain => {
            let verdict = if record.pass { "pass" } else { "FAIL" };
            Ok(format!(
                "F({}, {}) = {}\nnu2 = {}, bound = {}, slack = {}: {verdict}\n",
                record.n, record.r, record.f_value, record.nu2, record.bound, record.slack
            ))
        }
    }
}

fn sweep(config: &SweepConfig, format: OutputFormat) -> Result<Output, String> {
    let report = sweep_with(config);
    Ok(Output {
        text: render_sweep(&report, format)?,
        code: status(report.passed()),
    })
}

pub fn render_sweep(report: &SweepReport, format: OutputFormat) -> Result<String, String> {
    match format {
        OutputFormat::Json => json(report),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["check", "evaluations", "failures"])
                .map_err(|e| e.to_string())?;
            for (check, count) in &report.evaluations {
                let failed = report.failures.iter().filter(|f| f.check == *check).count();
                w.write_record([check.name(), &count.to_string(), &failed.to_string()])
                    .map_err(|e| e.to_string())?;
            }
            finish_csv(w)
        }
        OutputFormat::Plain => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "sweep n in [{}, {}], r in [{}, {}]: {} points",
                report.n_range.0,
                report.n_range.1,
                report.r_range.0,
                report.r_range.1,
                report.total
            );
            for (check, count) in &report.evaluations {
                let _ = writeln!(s, "  {check:<14} {count} evaluations");
            }
            let _ = writeln!(s, "failures: {}", report.failure_count);
            for f in &report.failures {
                let _ = writeln!(s, "  {} at ({}, {}): {}", f.check, f.n, f.r, f.detail);
            }
            if report.failure_count > report.failures.len() as u64 {
                let _ = writeln!(s, "  ... (capped at {})", report.failure_cap);
            }
            if report.evaluations.contains_key(&CheckKind::Theorem) {
                let _ = writeln!(s, "min slack: {}", report.min_slack);
                let hist: Vec<String> = report
                    .slack_histogram
                    .iter()
                    .map(|(k, v)| format!("{k}:{v}"))
                    .collect();
                let _ = writeln!(s, "slack histogram: {}", hist.join(" "));
            }
            let _ = writeln!(s, "elapsed: {:.3}s", report.elapsed.as_secs_f64());
            Ok(s)
        }
    }
}

fn table(n_max: u64, r_max: u64, format: OutputFormat) -> Result<Output, String> {
    let records = theorem_table(n_max, r_max);
    let all_pass = records.iter().all(|r| r.pass);
    let rows: Vec<TableRow> = records.iter().map(TableRow::from).collect();
    let text = match format {
        OutputFormat::Json => json(&rows)?,
        OutputFormat::Csv => csv_rows(rows)?,
        OutputFormat::Plain => {
            let mut s = format!(
                "{:>4} {:>4} {:>6} {:>6} {:>6}\n",
                "n", "r", "nu2", "bound", "slack"
            );
            for row in &rows {
                let _ = writeln!(
                    s,
                    "{:>4} {:>4} {:>6} {:>6} {:>6}",
                    row.n,
                    row.r,
                    row.f_nu2.to_string(),
                    row.bound,
                    row.slack.to_string()
                );
            }
            s
        }
    };
    Ok(Output {
        text,
        code: status(all_pass),
    })
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    s.push('\n');
    Ok(s)
}

fn csv_rows(rows: impl IntoIterator<Item = TableRow>) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| e.to_string())?;
    }
    finish_csv(w)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, String> {
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}
