//! Instance checks of the lower bound
//! `ν₂(F(n,r)) >= 2n - min{α(n), α(r)}`, its two halves, the recurrences
//! and identities of [`crate::binomial_sums`], and rectangle sweeps over
//! all of them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::binomial_sums::{
    binomial, closed_form_even, f_direct, guo_zeng_quotient, odd_sum_zero, shapiro_sum,
    sum_general, KRange, MemoTable, SumSpec,
};
use crate::error::{Error, Result};
use crate::padic::{binary_weight, nu_int, Valuation};
use crate::types::{decimal, ExactInt, Slack};

pub const DEFAULT_FAILURE_CAP: usize = 100;

/// `2n - min{α(n), α(r)}`.
pub fn theorem_bound(n: u64, r: u64) -> u64 {
    2 * n - binary_weight(n).min(binary_weight(r))
}

/// `2n - α(n)`.
pub fn bound_by_n(n: u64) -> u64 {
    2 * n - binary_weight(n)
}

/// `2n - α(r)`, clamped at zero (only `n = 0` with `r > 0` can go negative,
/// where `F = 0` anyway).
pub fn bound_by_r(n: u64, r: u64) -> u64 {
    (2 * n).saturating_sub(binary_weight(r))
}

/// Outcome of checking the bound at one `(n, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremRecord {
    pub n: u64,
    pub r: u64,
    #[serde(with = "decimal")]
    pub f_value: ExactInt,
    pub nu2: Valuation,
    pub bound: u64,
    /// `nu2 - bound`; negative only when the check fails.
    pub slack: Slack,
    pub pass: bool,
}

impl TheoremRecord {
    pub fn from_value(n: u64, r: u64, f_value: ExactInt) -> Self {
        let nu2 = nu_int(&f_value, 2).expect("2 is prime");
        let bound = theorem_bound(n, r);
        let slack = match nu2 {
            Valuation::Finite(v) => Slack::Finite(v as i64 - bound as i64),
            Valuation::Infinite => Slack::Infinite,
        };
        TheoremRecord {
            n,
            r,
            f_value,
            nu2,
            bound,
            slack,
            pass: nu2.meets(bound),
        }
    }
}

pub fn verify_theorem(n: u64, r: u64) -> TheoremRecord {
    TheoremRecord::from_value(n, r, f_direct(n, r))
}

/// The two halves `ν₂(F) >= 2n - α(n)` and `ν₂(F) >= 2n - α(r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitRecord {
    pub bound_by_n: u64,
    pub bound_by_r: u64,
    pub pass_by_n: bool,
    pub pass_by_r: bool,
}

impl SplitRecord {
    fn from_nu2(n: u64, r: u64, nu2: Valuation) -> Self {
        let (b13, b14) = (bound_by_n(n), bound_by_r(n, r));
        SplitRecord {
            bound_by_n: b13,
            bound_by_r: b14,
            pass_by_n: nu2.meets(b13),
            pass_by_r: nu2.meets(b14),
        }
    }

    pub fn pass(&self) -> bool {
        self.pass_by_n && self.pass_by_r
    }
}

pub fn verify_split(n: u64, r: u64) -> SplitRecord {
    let nu2 = nu_int(&f_direct(n, r), 2).expect("2 is prime");
    SplitRecord::from_nu2(n, r, nu2)
}

fn require_positive(n: u64, r: u64, what: &str) -> Result<()> {
    if n == 0 || r == 0 {
        return Err(Error::Domain(format!(
            "{what} needs n, r >= 1, got ({n}, {r})"
        )));
    }
    Ok(())
}

/// `F(n,r) == n² F(n,r-1) - 2n(2n-1) F(n-1,r-1)` with every `F` summed
/// directly.
pub fn verify_recurrence_2_3(n: u64, r: u64) -> Result<bool> {
    verify_recurrence_2_3_with(n, r, &mut MemoTable::new())
}

/// Five-term identity lowering `n` at fixed `r`, with every `F` summed
/// directly.
pub fn verify_recurrence_3_1(n: u64, r: u64) -> Result<bool> {
    verify_recurrence_3_1_with(n, r, &mut MemoTable::new())
}

/// Directly summed `F`, cached. The table only ever holds `f_direct`
/// output, so recurrence checks against it stay independent of the
/// recurrences themselves.
fn direct(cache: &mut MemoTable, n: u64, r: u64) -> ExactInt {
    cache.get_or_insert_with(n, r, || f_direct(n, r)).clone()
}

fn verify_recurrence_2_3_with(n: u64, r: u64, cache: &mut MemoTable) -> Result<bool> {
    require_positive(n, r, "two-term recurrence")?;
    let rhs =
        direct(cache, n, r - 1) * (n * n) - direct(cache, n - 1, r - 1) * (2 * n * (2 * n - 1));
    Ok(direct(cache, n, r) == rhs)
}

fn verify_recurrence_3_1_with(n: u64, r: u64, cache: &mut MemoTable) -> Result<bool> {
    require_positive(n, r, "five-term recurrence")?;
    let mut rhs = direct(cache, n - 1, r) * 4u32;
    for i in 0..r {
        let c_even = binomial(2 * r, (2 * i) as i64);
        let c_odd = binomial(2 * r, (2 * i + 1) as i64);
        rhs -= &c_even * direct(cache, n, i);
        rhs -= &c_odd * direct(cache, n - 1, i) * (2 * (2 * n - 1));
        rhs += &c_odd * direct(cache, n, i) * n;
        rhs += c_even * direct(cache, n - 1, i) * 2u32;
    }
    Ok(direct(cache, n, r) == rhs)
}

/// A check that [`sweep`] can run at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CheckKind {
    #[serde(rename = "theorem")]
    Theorem,
    #[serde(rename = "split")]
    Split,
    #[serde(rename = "rec-2-3")]
    Recurrence23,
    #[serde(rename = "rec-3-1")]
    Recurrence31,
    #[serde(rename = "closed-forms")]
    ClosedForms,
    #[serde(rename = "guo-zeng")]
    GuoZeng,
    #[serde(rename = "shapiro")]
    Shapiro,
    #[serde(rename = "odd-vanishing")]
    OddVanishing,
}

impl CheckKind {
    pub const ALL: [CheckKind; 8] = [
        CheckKind::Theorem,
        CheckKind::Split,
        CheckKind::Recurrence23,
        CheckKind::Recurrence31,
        CheckKind::ClosedForms,
        CheckKind::GuoZeng,
        CheckKind::Shapiro,
        CheckKind::OddVanishing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Theorem => "theorem",
            CheckKind::Split => "split",
            CheckKind::Recurrence23 => "rec-2-3",
            CheckKind::Recurrence31 => "rec-3-1",
            CheckKind::ClosedForms => "closed-forms",
            CheckKind::GuoZeng => "guo-zeng",
            CheckKind::Shapiro => "shapiro",
            CheckKind::OddVanishing => "odd-vanishing",
        }
    }

    /// Whether the check applies at grid point `(n, r)`.
    ///
    /// Shapiro's identity depends on `n` only and runs at `r = 0`; the
    /// odd-exponent sum at `(n, r)` uses `j = 2r + 1`.
    pub fn applies(self, n: u64, r: u64) -> bool {
        match self {
            CheckKind::Theorem | CheckKind::Split | CheckKind::OddVanishing => true,
            CheckKind::Recurrence23 | CheckKind::Recurrence31 | CheckKind::GuoZeng => {
                n >= 1 && r >= 1
            }
            CheckKind::ClosedForms => n >= 1 && (1..=4).contains(&r),
            CheckKind::Shapiro => n >= 1 && r == 0,
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnknownCheck(s.to_string()))
    }
}

/// Parses a comma-separated list such as `theorem,split`. `all` selects
/// every check.
pub fn parse_checks(list: &str) -> Result<BTreeSet<CheckKind>> {
    let mut out = BTreeSet::new();
    for item in list.split(',').map(str::trim) {
        if item == "all" {
            out.extend(CheckKind::ALL);
        } else {
            out.insert(item.parse()?);
        }
    }
    Ok(out)
}

/// A check that did not hold at `(n, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckFailure {
    pub check: CheckKind,
    pub n: u64,
    pub r: u64,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub record: Option<TheoremRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_max: u64,
    pub r_max: u64,
    pub checks: BTreeSet<CheckKind>,
    pub workers: usize,
    pub failure_cap: usize,
}

impl SweepConfig {
    pub fn new(n_max: u64, r_max: u64, checks: impl IntoIterator<Item = CheckKind>) -> Self {
        SweepConfig {
            n_max,
            r_max,
            checks: checks.into_iter().collect(),
            workers: 1,
            failure_cap: DEFAULT_FAILURE_CAP,
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn failure_cap(mut self, cap: usize) -> Self {
        self.failure_cap = cap;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n_range: (u64, u64),
    pub r_range: (u64, u64),
    pub checks: Vec<CheckKind>,
    /// Grid points visited.
    pub total: u64,
    /// Check evaluations performed, per check.
    pub evaluations: BTreeMap<CheckKind, u64>,
    pub failure_count: u64,
    pub failure_cap: usize,
    /// The first `failure_cap` failures in `(n, r)` order.
    pub failures: Vec<CheckFailure>,
    /// Smallest theorem slack seen; infinite when none was finite.
    pub min_slack: Slack,
    /// Finite theorem slacks and how often each occurred.
    pub slack_histogram: BTreeMap<i64, u64>,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    /// The same report with `elapsed` zeroed, for content comparisons.
    pub fn without_timing(&self) -> SweepReport {
        SweepReport {
            elapsed: Duration::ZERO,
            ..self.clone()
        }
    }
}

#[derive(Debug, Default)]
struct CellOutcome {
    n: u64,
    r: u64,
    evaluated: Vec<CheckKind>,
    failures: Vec<CheckFailure>,
    slack: Option<Slack>,
}

fn evaluate_cell(
    n: u64,
    r: u64,
    checks: &BTreeSet<CheckKind>,
    cache: &mut MemoTable,
) -> CellOutcome {
    let mut out = CellOutcome {
        n,
        r,
        ..CellOutcome::default()
    };
    for &check in checks {
        if !check.applies(n, r) {
            continue;
        }
        out.evaluated.push(check);
        let failure = match run_check(check, n, r, cache, &mut out.slack) {
            Ok(None) => continue,
            Ok(Some((detail, record))) => CheckFailure {
                check,
                n,
                r,
                detail,
                record,
            },
            Err(e) => CheckFailure {
                check,
                n,
                r,
                detail: e.to_string(),
                record: None,
            },
        };
        out.failures.push(failure);
    }
    out
}

type CheckResult = Result<Option<(String, Option<TheoremRecord>)>>;

fn fail(detail: String) -> CheckResult {
    Ok(Some((detail, None)))
}

fn run_check(
    check: CheckKind,
    n: u64,
    r: u64,
    cache: &mut MemoTable,
    slack: &mut Option<Slack>,
) -> CheckResult {
    match check {
        CheckKind::Theorem => {
            let record = TheoremRecord::from_value(n, r, direct(cache, n, r));
            *slack = Some(record.slack);
            if record.pass {
                Ok(None)
            } else {
                let detail = format!("nu2 = {} < bound {}", record.nu2, record.bound);
                Ok(Some((detail, Some(record))))
            }
        }
        CheckKind::Split => {
            let nu2 = nu_int(&direct(cache, n, r), 2)?;
            let split = SplitRecord::from_nu2(n, r, nu2);
            if split.pass() {
                Ok(None)
            } else {
                fail(format!(
                    "nu2 = {nu2}; bound by n {} ({}), bound by r {} ({})",
                    split.bound_by_n, split.pass_by_n, split.bound_by_r, split.pass_by_r
                ))
            }
        }
        CheckKind::Recurrence23 => {
            if verify_recurrence_2_3_with(n, r, cache)? {
                Ok(None)
            } else {
                fail("two-term recurrence does not hold".into())
            }
        }
        CheckKind::Recurrence31 => {
            if verify_recurrence_3_1_with(n, r, cache)? {
                Ok(None)
            } else {
                fail("five-term recurrence does not hold".into())
            }
        }
        CheckKind::ClosedForms => {
            let closed = closed_form_even(n, r)?;
            let summed = sum_general(&SumSpec::new(n, 2 * r, KRange::Positive));
            if closed == summed {
                Ok(None)
            } else {
                fail(format!("closed form {closed} != sum {summed}"))
            }
        }
        CheckKind::GuoZeng => {
            let q = guo_zeng_quotient(n, r)?;
            if q.is_odd() {
                Ok(None)
            } else {
                fail(format!("quotient {q} is even"))
            }
        }
        CheckKind::Shapiro => {
            let (lhs, rhs) = shapiro_sum(n)?;
            if lhs == rhs {
                Ok(None)
            } else {
                fail(format!("row sum {lhs} != {rhs}"))
            }
        }
        CheckKind::OddVanishing => {
            let j = 2 * r + 1;
            let s = odd_sum_zero(n, j)?;
            if s.is_zero() {
                Ok(None)
            } else {
                fail(format!("sum with j = {j} is {s}"))
            }
        }
    }
}

pub fn sweep(n_max: u64, r_max: u64, checks: &BTreeSet<CheckKind>, workers: usize) -> SweepReport {
    sweep_with(&SweepConfig {
        n_max,
        r_max,
        checks: checks.clone(),
        workers,
        failure_cap: DEFAULT_FAILURE_CAP,
    })
}

/// Runs every selected check over `[0, n_max] × [0, r_max]`.
///
/// Rows of `n` are dealt round-robin to `workers` threads, each with its own
/// cache. Results are merged in `(n, r)` order, so everything but `elapsed`
/// is independent of the worker count.
pub fn sweep_with(config: &SweepConfig) -> SweepReport {
    let start = Instant::now();
    let workers = config.workers.max(1);
    let rows: Vec<u64> = (0..=config.n_max).collect();

    let run_rows = |mine: Vec<u64>| -> Vec<CellOutcome> {
        let mut cache = MemoTable::new();
        let mut out = Vec::new();
        for n in mine {
            for r in 0..=config.r_max {
                out.push(evaluate_cell(n, r, &config.checks, &mut cache));
            }
        }
        out
    };

    let cells: Vec<CellOutcome> = if workers == 1 {
        run_rows(rows)
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let mine: Vec<u64> = rows.iter().copied().skip(w).step_by(workers).collect();
                    let run_rows = &run_rows;
                    scope.spawn(move || run_rows(mine))
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };
    aggregate(config, cells, start.elapsed())
}

fn aggregate(config: &SweepConfig, mut cells: Vec<CellOutcome>, elapsed: Duration) -> SweepReport {
    cells.sort_by_key(|c| (c.n, c.r));

    let mut evaluations: BTreeMap<CheckKind, u64> = config.checks.iter().map(|&c| (c, 0)).collect();
    let mut failures = Vec::new();
    let mut failure_count = 0u64;
    let mut min_slack = Slack::Infinite;
    let mut slack_histogram = BTreeMap::new();
    for cell in cells.iter_mut() {
        for check in &cell.evaluated {
            *evaluations.entry(*check).or_default() += 1;
        }
        failure_count += cell.failures.len() as u64;
        for f in cell.failures.drain(..) {
            if failures.len() < config.failure_cap {
                failures.push(f);
            }
        }
        if let Some(slack) = cell.slack {
            min_slack = min_slack.min(slack);
            if let Slack::Finite(s) = slack {
                *slack_histogram.entry(s).or_default() += 1;
            }
        }
    }

    SweepReport {
        n_range: (0, config.n_max),
        r_range: (0, config.r_max),
        checks: config.checks.iter().copied().collect(),
        total: cells.len() as u64,
        evaluations,
        failure_count,
        failure_cap: config.failure_cap,
        failures,
        min_slack,
        slack_histogram,
        elapsed,
    }
}

/// Theorem records for every point of `[0, n_max] × [0, r_max]`, row-major.
pub fn theorem_table(n_max: u64, r_max: u64) -> Vec<TheoremRecord> {
    (0..=n_max)
        .flat_map(|n| (0..=r_max).map(move |r| verify_theorem(n, r)))
        .collect()
}
