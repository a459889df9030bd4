//! Central binomial power sums
//!
//! `F(n, r) = Σ_{k=-n}^{n} C(2n, n-k) k^{2r}`
//!
//! evaluated by literal summation and by two recurrences, along with the
//! classical identities around the Catalan triangle.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::types::ExactInt;

/// Exact `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> ExactInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        // acc is now C(n, i+1) * (i+1), so the division is exact
        acc /= i + 1;
    }
    acc
}

/// The row `C(2n, 0), ..., C(2n, 2n)`.
fn central_row(n: u64) -> Vec<ExactInt> {
    let top = 2 * n;
    let mut row = Vec::with_capacity(top as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for j in 0..top {
        c = c * (top - j) / (j + 1);
        row.push(c.clone());
    }
    row
}

fn power(k: i64, exponent: u64) -> ExactInt {
    if exponent == 0 {
        // 0^0 = 1
        return BigInt::one();
    }
    let exp = u32::try_from(exponent).expect("exponent fits in u32");
    Pow::pow(BigInt::from(k), exp)
}

/// Which values of `k` a [`SumSpec`] sums over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KRange {
    /// `k = -n ..= n`
    Full,
    /// `k = 1 ..= n`
    Positive,
}

/// Parameters of `Σ_k C(2n, n-k) k^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SumSpec {
    pub n: u64,
    pub exponent: u64,
    pub range: KRange,
}

impl SumSpec {
    pub fn new(n: u64, exponent: u64, range: KRange) -> Self {
        SumSpec { n, exponent, range }
    }
}

/// `Σ_k C(2n, n-k) k^exponent` over the selected range, with `0^0 = 1`.
pub fn sum_general(spec: &SumSpec) -> ExactInt {
    let n = spec.n as i64;
    let row = central_row(spec.n);
    let lo = match spec.range {
        KRange::Full => -n,
        KRange::Positive => 1,
    };
    (lo..=n)
        .map(|k| &row[(n - k) as usize] * power(k, spec.exponent))
        .sum()
}

/// `F(n, r)` by literal summation over `k = -n ..= n`.
pub fn f_direct(n: u64, r: u64) -> ExactInt {
    sum_general(&SumSpec::new(n, 2 * r, KRange::Full))
}

/// Cache of `F(n, r)` values keyed by `(n, r)`.
///
/// Every stored value must equal `F(n, r)`; the recurrences below read and
/// write through it, and any evaluator may share a table with another.
#[derive(Debug, Clone, Default)]
pub struct MemoTable {
    values: HashMap<(u64, u64), ExactInt>,
}

impl MemoTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: u64, r: u64) -> Option<&ExactInt> {
        self.values.get(&(n, r))
    }

    pub fn contains(&self, n: u64, r: u64) -> bool {
        self.values.contains_key(&(n, r))
    }

    pub fn insert(&mut self, n: u64, r: u64, value: ExactInt) {
        self.values.insert((n, r), value);
    }

    pub fn get_or_insert_with(
        &mut self,
        n: u64,
        r: u64,
        f: impl FnOnce() -> ExactInt,
    ) -> &ExactInt {
        self.values.entry((n, r)).or_insert_with(f)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn clear(&mut self) {
        self.values.clear();
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u64, u64), &ExactInt)> {
        self.values.iter().map(|(&k, v)| (k, v))
    }

    fn at(&self, n: u64, r: u64) -> &ExactInt {
        self.values
            .get(&(n, r))
            .unwrap_or_else(|| panic!("F({n}, {r}) evaluated before its dependencies"))
    }
}

/// `F(m, 0) = 4^m` and `F(0, s) = [s = 0]`.
fn base_case(m: u64, i: u64) -> Option<ExactInt> {
    if i == 0 {
        Some(BigInt::one() << (2 * m) as usize)
    } else if m == 0 {
        Some(BigInt::zero())
    } else {
        None
    }
}

/// `F(n, r)` through `F(n,r) = n² F(n,r-1) - 2n(2n-1) F(n-1,r-1)`.
///
/// Fills the table for every `(m, i)` with `m <= n`, `i <= r` in
/// lexicographic order, so no recursion is involved.
pub fn f_rec_r(n: u64, r: u64, memo: &mut MemoTable) -> ExactInt {
    if let Some(v) = memo.get(n, r) {
        return v.clone();
    }
    for m in 0..=n {
        for i in 0..=r {
            if memo.contains(m, i) {
                continue;
            }
            let value = base_case(m, i).unwrap_or_else(|| {
                memo.at(m, i - 1) * (m * m) - memo.at(m - 1, i - 1) * (2 * m * (2 * m - 1))
            });
            memo.insert(m, i, value);
        }
    }
    memo.at(n, r).clone()
}

/// `F(n, r)` through the five-term identity
///
/// ```text
/// F(n,r) = 4 F(n-1,r)
///        - Σ_{i<r} C(2r,2i)   F(n,i)
///        - 2(2n-1) Σ_{i<r} C(2r,2i+1) F(n-1,i)
///        + n Σ_{i<r} C(2r,2i+1) F(n,i)
///        + 2 Σ_{i<r} C(2r,2i)   F(n-1,i)
/// ```
///
/// which lowers `n` at fixed `r` and otherwise only uses smaller `r`.
pub fn f_rec_mixed(n: u64, r: u64, memo: &mut MemoTable) -> ExactInt {
    if let Some(v) = memo.get(n, r) {
        return v.clone();
    }
    for m in 0..=n {
        for i in 0..=r {
            if memo.contains(m, i) {
                continue;
            }
            let value = base_case(m, i).unwrap_or_else(|| mixed_step(m, i, memo));
            memo.insert(m, i, value);
        }
    }
    memo.at(n, r).clone()
}

fn mixed_step(m: u64, r: u64, memo: &MemoTable) -> ExactInt {
    let mut even_here = BigInt::zero();
    let mut odd_here = BigInt::zero();
    let mut even_below = BigInt::zero();
    let mut odd_below = BigInt::zero();
    for i in 0..r {
        let c_even = binomial(2 * r, (2 * i) as i64);
        let c_odd = binomial(2 * r, (2 * i + 1) as i64);
        even_here += &c_even * memo.at(m, i);
        odd_here += &c_odd * memo.at(m, i);
        even_below += c_even * memo.at(m - 1, i);
        odd_below += c_odd * memo.at(m - 1, i);
    }
    memo.at(m - 1, r) * 4u32 - even_here - odd_below * (2 * (2 * m - 1))
        + odd_here * m
        + even_below * 2u32
}

/// Evaluation strategy for `F(n, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Algorithm {
    #[default]
    Direct,
    RecR,
    RecMixed,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Direct, Algorithm::RecR, Algorithm::RecMixed];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Direct => "direct",
            Algorithm::RecR => "rec-r",
            Algorithm::RecMixed => "rec-mixed",
        }
    }

    pub fn evaluate(self, n: u64, r: u64, memo: &mut MemoTable) -> ExactInt {
        match self {
            Algorithm::Direct => memo.get_or_insert_with(n, r, || f_direct(n, r)).clone(),
            Algorithm::RecR => f_rec_r(n, r, memo),
            Algorithm::RecMixed => f_rec_mixed(n, r, memo),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "unknown algorithm `{s}` (expected direct, rec-r or rec-mixed)"
                ))
            })
    }
}

/// `Σ_{k=-n}^{n} C(2n, n-k) k^j` for odd `j`, which vanishes by `k ↔ -k`.
pub fn odd_sum_zero(n: u64, j: u64) -> Result<ExactInt> {
    if j.is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "odd-exponent sum needs odd j, got {j}"
        )));
    }
    Ok(sum_general(&SumSpec::new(n, j, KRange::Full)))
}

/// Both sides of `Σ_{k=1}^{n} k C(2n, n-k) = (n/2) C(2n, n)`.
pub fn shapiro_sum(n: u64) -> Result<(ExactInt, ExactInt)> {
    if n == 0 {
        return Err(Error::Domain("Catalan row sum needs n >= 1".into()));
    }
    let lhs = sum_general(&SumSpec::new(n, 1, KRange::Positive));
    let twice_rhs = binomial(2 * n, n as i64) * n;
    let (rhs, rem) = twice_rhs.div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(Error::InexactDivision {
            what: "n C(2n,n) / 2",
            numerator: twice_rhs.to_string(),
            denominator: "2".into(),
        });
    }
    Ok((lhs, rhs))
}

/// `2 Σ_{k=1}^{n} C(2n, n-k) k^{2r+1} / (n² C(2n, n))`, which must divide
/// exactly (and is expected to be odd).
pub fn guo_zeng_quotient(n: u64, r: u64) -> Result<ExactInt> {
    if n == 0 || r == 0 {
        return Err(Error::Domain(format!(
            "odd-power quotient needs n, r >= 1, got ({n}, {r})"
        )));
    }
    let numerator = sum_general(&SumSpec::new(n, 2 * r + 1, KRange::Positive)) * 2u32;
    let denominator = binomial(2 * n, n as i64) * (n * n);
    let (q, rem) = numerator.div_rem(&denominator);
    if !rem.is_zero() {
        return Err(Error::InexactDivision {
            what: "odd-power quotient",
            numerator: numerator.to_string(),
            denominator: denominator.to_string(),
        });
    }
    Ok(q)
}

/// The polynomial factor `P_r(n)` of the closed form `2^{2n-r-1} n P_r(n)`.
fn closed_form_polynomial(n: u64, r: u64) -> ExactInt {
    let n = BigInt::from(n);
    let coefficients: &[i64] = match r {
        1 => &[1],
        2 => &[-1, 3],
        3 => &[4, -15, 15],
        4 => &[-34, 147, -210, 105],
        _ => unreachable!("validated by caller"),
    };
    // Horner, highest degree first
    coefficients
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, &c| acc * &n + c)
}

/// `Σ_{k=1}^{n} C(2n, n-k) k^{2r}` from its closed form, `r ∈ 1..=4`.
///
/// The power of two is evaluated over the rationals since `2n - r - 1`
/// is negative for small `n`; the result must be an integer.
pub fn closed_form_even(n: u64, r: u64) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::Domain("closed forms need n >= 1".into()));
    }
    if !(1..=4).contains(&r) {
        return Err(Error::Domain(format!(
            "closed forms exist for r in 1..=4, got {r}"
        )));
    }
    let two_exp = 2 * n as i64 - r as i64 - 1;
    let power_of_two = if two_exp >= 0 {
        BigRational::from_integer(BigInt::one() << two_exp as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-two_exp) as usize)
    };
    let value = power_of_two * BigRational::from_integer(closed_form_polynomial(n, r) * n);
    if !value.is_integer() {
        return Err(Error::InexactDivision {
            what: "closed form",
            numerator: value.numer().to_string(),
            denominator: value.denom().to_string(),
        });
    }
    Ok(value.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactInt {
        BigInt::from(v)
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), int(6));
        assert_eq!(binomial(9, 0), int(1));
        assert_eq!(binomial(0, 0), int(1));
        assert_eq!(binomial(4, 5), int(0));
        assert_eq!(binomial(4, -1), int(0));
        assert_eq!(
            binomial(100, 49).to_string(),
            "98913082887808032681188722800"
        );
    }

    #[test]
    fn central_row_matches_binomial() {
        for n in 0..12 {
            let row = central_row(n);
            for (j, c) in row.iter().enumerate() {
                assert_eq!(*c, binomial(2 * n, j as i64));
            }
        }
    }

    #[test]
    fn sum_general_examples() {
        assert_eq!(sum_general(&SumSpec::new(2, 2, KRange::Positive)), int(8));
        assert_eq!(sum_general(&SumSpec::new(2, 3, KRange::Positive)), int(12));
        assert_eq!(sum_general(&SumSpec::new(2, 0, KRange::Full)), int(16));
        assert_eq!(sum_general(&SumSpec::new(3, 5, KRange::Full)), int(0));
        assert_eq!(sum_general(&SumSpec::new(0, 0, KRange::Full)), int(1));
        assert_eq!(sum_general(&SumSpec::new(0, 4, KRange::Positive)), int(0));
    }

    #[test]
    fn f_direct_examples() {
        assert_eq!(f_direct(2, 1), int(16));
        assert_eq!(f_direct(3, 0), int(64));
        assert_eq!(f_direct(0, 3), int(0));
        assert_eq!(f_direct(0, 0), int(1));
        assert_eq!(f_direct(2, 2), int(40));
        assert_eq!(f_direct(3, 1), int(96));
    }

    #[test]
    fn recurrence_examples() {
        let mut memo = MemoTable::new();
        assert_eq!(f_rec_r(1, 1, &mut memo), int(2));
        assert_eq!(f_rec_r(2, 1, &mut memo), int(16));
        assert_eq!(f_rec_r(5, 0, &mut memo), int(1024));

        let mut memo = MemoTable::new();
        assert_eq!(f_rec_mixed(1, 1, &mut memo), int(2));
        assert_eq!(f_rec_mixed(2, 2, &mut memo), int(40));
        assert_eq!(f_rec_mixed(5, 0, &mut memo), int(1024));
        assert_eq!(f_rec_mixed(0, 4, &mut memo), int(0));
    }

    #[test]
    fn memo_fill_covers_triangle() {
        let mut memo = MemoTable::new();
        f_rec_mixed(4, 3, &mut memo);
        assert_eq!(memo.len(), 5 * 4);
        for ((m, i), v) in memo.iter() {
            assert_eq!(*v, f_direct(m, i), "F({m}, {i})");
        }
    }

    #[test]
    fn shared_memo_between_recurrences() {
        let mut memo = MemoTable::new();
        let a = f_rec_r(6, 4, &mut memo);
        let b = f_rec_mixed(7, 5, &mut memo);
        assert_eq!(a, f_direct(6, 4));
        assert_eq!(b, f_direct(7, 5));
    }

    #[test]
    fn algorithm_parse() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>(), Ok(a));
        }
        assert!("fast".parse::<Algorithm>().is_err());
    }

    #[test]
    fn odd_sum_examples() {
        assert_eq!(odd_sum_zero(3, 5), Ok(int(0)));
        assert_eq!(odd_sum_zero(1, 1), Ok(int(0)));
        assert_eq!(odd_sum_zero(0, 1), Ok(int(0)));
        assert!(odd_sum_zero(3, 4).is_err());
    }

    #[test]
    fn shapiro_examples() {
        assert_eq!(shapiro_sum(2), Ok((int(6), int(6))));
        assert_eq!(shapiro_sum(1), Ok((int(1), int(1))));
        assert_eq!(shapiro_sum(3), Ok((int(30), int(30))));
        assert!(shapiro_sum(0).is_err());
    }

    #[test]
    fn guo_zeng_examples() {
        assert_eq!(guo_zeng_quotient(1, 1), Ok(int(1)));
        assert_eq!(guo_zeng_quotient(2, 1), Ok(int(1)));
        assert_eq!(guo_zeng_quotient(2, 2), Ok(int(3)));
        assert!(guo_zeng_quotient(0, 1).is_err());
        assert!(guo_zeng_quotient(1, 0).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_even(3, 1), Ok(int(48)));
        assert_eq!(closed_form_even(2, 2), Ok(int(20)));
        assert_eq!(closed_form_even(1, 3), Ok(int(1)));
        assert_eq!(closed_form_even(1, 4), Ok(int(1)));
        assert_eq!(closed_form_even(1, 1), Ok(int(1)));
        assert!(closed_form_even(0, 1).is_err());
        assert!(closed_form_even(3, 5).is_err());
        assert!(closed_form_even(3, 0).is_err());
    }

    #[test]
    fn polynomials() {
        assert_eq!(closed_form_polynomial(2, 3), int(15 * 4 - 30 + 4));
        // 105·8 - 210·4 + 147·2 - 34
        assert_eq!(closed_form_polynomial(2, 4), int(260));
    }
}
