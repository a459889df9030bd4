//! Exact evaluation of the central binomial power sums
//! `F(n, r) = Σ_{k=-n}^{n} C(2n, n-k) k^{2r}` and instance-level
//! verification of the lower bound `ν₂(F(n, r)) >= 2n - min{α(n), α(r)}`,
//! where `α` counts binary 1s.
//!
//! * [`padic`]: digit sums and p-adic valuations via Legendre's formula.
//! * [`binomial_sums`]: `F(n, r)` by direct summation and two recurrences,
//!   plus the Catalan-triangle identities.
//! * [`verifier`]: per-point records and parallel rectangle sweeps.
//! * [`cli`]: the `binsum` command-line tool.

pub mod binomial_sums;
pub mod cli;
pub mod error;
pub mod padic;
mod types;
pub mod verifier;

pub use binomial_sums::{f_direct, f_rec_mixed, f_rec_r, Algorithm, KRange, MemoTable, SumSpec};
pub use error::{Error, Result};
pub use padic::Valuation;
pub use types::{decimal, ExactInt, Slack};
pub use verifier::{CheckKind, SweepConfig, SweepReport, TheoremRecord};
