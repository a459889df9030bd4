//! Digit sums and p-adic valuations.
//!
//! Valuations of factorials and binomial coefficients are computed twice,
//! once from Legendre's floor sum and once from base-p digit sums; a
//! disagreement between the two surfaces as [`Error::RouteMismatch`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The exponent of the largest power of a prime dividing an integer.
///
/// `Infinite` is produced only for the integer zero. It compares greater
/// than every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// `true` when `self >= bound`.
    pub fn meets(self, bound: u64) -> bool {
        self >= Valuation::Finite(bound)
    }

    /// `self - bound`, or `None` when the valuation is below the bound.
    /// Infinity minus anything stays infinite.
    pub fn checked_sub(self, bound: u64) -> Option<Valuation> {
        match self {
            Valuation::Finite(v) => v.checked_sub(bound).map(Valuation::Finite),
            Valuation::Infinite => Some(Valuation::Infinite),
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Valuation {
    fn from(v: u64) -> Self {
        Valuation::Finite(v)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

// Finite values serialize as integers, infinity as the string "inf".
impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_u64(*v),
            Valuation::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ValuationVisitor;

        impl de::Visitor<'_> for ValuationVisitor {
            type Value = Valuation;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Valuation, E> {
                Ok(Valuation::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Valuation, E> {
                u64::try_from(v)
                    .map(Valuation::Finite)
                    .map_err(|_| E::invalid_value(de::Unexpected::Signed(v), &self))
            }

            // csv infers `inf` as a float
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Valuation, E> {
                if v == f64::INFINITY {
                    Ok(Valuation::Infinite)
                } else {
                    Err(E::invalid_value(de::Unexpected::Float(v), &self))
                }
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Valuation, E> {
                if v == "inf" {
                    return Ok(Valuation::Infinite);
                }
                v.parse::<u64>()
                    .map(Valuation::Finite)
                    .map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }

        deserializer.deserialize_any(ValuationVisitor)
    }
}

/// Trial division; the primes used here are small.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Sum of the base-`p` digits of `n`. `digit_sum(0, p) == 0`.
pub fn digit_sum(n: u64, p: u64) -> Result<u64> {
    if p < 2 {
        return Err(Error::InvalidBase(p));
    }
    Ok(digit_sum_unchecked(n, p))
}

fn digit_sum_unchecked(mut n: u64, p: u64) -> u64 {
    if p == 2 {
        return u64::from(n.count_ones());
    }
    let mut sum = 0;
    while n > 0 {
        sum += n % p;
        n /= p;
    }
    sum
}

/// Number of 1s in the binary expansion of `n`.
pub fn binary_weight(n: u64) -> u64 {
    u64::from(n.count_ones())
}

/// Multiplicity of the prime `p` in `x`; the sign of `x` is ignored.
pub fn nu_int(x: &BigInt, p: u64) -> Result<Valuation> {
    check_prime(p)?;
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    if p == 2 {
        return Ok(Valuation::Finite(x.trailing_zeros().unwrap_or(0)));
    }
    Ok(Valuation::Finite(nu_by_division(x, p)))
}

fn nu_by_division(x: &BigInt, p: u64) -> u64 {
    let p = BigInt::from(p);
    let mut m = x.abs();
    let mut v = 0;
    loop {
        let (q, rem) = m.div_rem(&p);
        if !rem.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// Legendre's floor sum `Σ_{i≥1} ⌊n / p^i⌋`.
pub fn legendre_floor_sum(n: u64, p: u64) -> Result<u64> {
    check_prime(p)?;
    let mut total = 0;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    Ok(total)
}

/// `(n - α_p(n)) / (p - 1)`.
pub fn legendre_digit_form(n: u64, p: u64) -> Result<u64> {
    check_prime(p)?;
    let numerator = n - digit_sum_unchecked(n, p);
    exact_u64_div(numerator, p - 1, "legendre digit form")
}

fn exact_u64_div(numerator: u64, denominator: u64, what: &'static str) -> Result<u64> {
    if !numerator.is_multiple_of(denominator) {
        return Err(Error::InexactDivision {
            what,
            numerator: numerator.to_string(),
            denominator: denominator.to_string(),
        });
    }
    Ok(numerator / denominator)
}

/// `ν_p(n!)`, computed by both Legendre routes which must agree.
pub fn nu_factorial(n: u64, p: u64) -> Result<u64> {
    let floors = legendre_floor_sum(n, p)?;
    let digits = legendre_digit_form(n, p)?;
    if floors != digits {
        return Err(Error::RouteMismatch {
            what: "nu_factorial",
            left: floors.to_string(),
            right: digits.to_string(),
        });
    }
    Ok(floors)
}

/// `ν_p(C(s, t))` for `0 <= t <= s`.
///
/// The factorial difference is checked against the digit-sum expression
/// `(α_p(t) + α_p(s-t) - α_p(s)) / (p - 1)`. For `p = 2` and `s > t` the
/// result is further checked against the lower bound `α(t) - α(s) + 1`.
pub fn nu_binomial(s: u64, t: u64, p: u64) -> Result<u64> {
    if t > s {
        return Err(Error::Domain(format!("binomial C({s}, {t}) needs t <= s")));
    }
    let by_factorials = nu_factorial(s, p)? - nu_factorial(t, p)? - nu_factorial(s - t, p)?;

    let carries =
        digit_sum_unchecked(t, p) + digit_sum_unchecked(s - t, p) - digit_sum_unchecked(s, p);
    let by_digits = exact_u64_div(carries, p - 1, "nu_binomial digit form")?;
    if by_factorials != by_digits {
        return Err(Error::RouteMismatch {
            what: "nu_binomial",
            left: by_factorials.to_string(),
            right: by_digits.to_string(),
        });
    }

    if p == 2 && s > t && !binomial_bound_holds(s, t, by_factorials) {
        return Err(Error::RouteMismatch {
            what: "nu_binomial lower bound",
            left: by_factorials.to_string(),
            right: format!(
                ">= {}",
                binary_weight(t) as i64 - binary_weight(s) as i64 + 1
            ),
        });
    }
    Ok(by_factorials)
}

#[allow(clippy::int_plus_one)]
fn binomial_bound_holds(s: u64, t: u64, nu: u64) -> bool {
    nu as i64 >= binary_weight(t) as i64 - binary_weight(s) as i64 + 1
}

/// `ν₂(C(s, t)) >= α(t) - α(s) + 1` for `s > t >= 0`.
pub fn binomial_lower_bound_check(s: u64, t: u64) -> Result<bool> {
    if t >= s {
        return Err(Error::Domain(format!(
            "lower bound needs s > t, got s={s}, t={t}"
        )));
    }
    let nu = legendre_floor_sum(s, 2)? - legendre_floor_sum(t, 2)? - legendre_floor_sum(s - t, 2)?;
    Ok(binomial_bound_holds(s, t, nu))
}

/// `ν₂(n) - 1 == α(n-1) - α(n)` for `n >= 1`.
pub fn lemma_2_1_i_check(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain(
            "ν₂(n) - 1 = α(n-1) - α(n) needs n >= 1".into(),
        ));
    }
    let nu = match nu_int(&BigInt::from(n), 2)? {
        Valuation::Finite(v) => v as i64,
        Valuation::Infinite => unreachable!("n >= 1"),
    };
    Ok(nu - 1 == binary_weight(n - 1) as i64 - binary_weight(n) as i64)
}
