//! Analytics over daily return series: NAV compounding, drawdown-based risk
//! metrics, fee accrual against a high-water mark, factor-model alpha
//! inference with false-discovery control, random-portfolio Monte Carlo
//! cohorts and fund-of-funds selection backtests.
//!
//! Every operation is deterministic. Cohort-level work (per-portfolio fits,
//! per-simulation paths, per-member metrics) fans out over rayon when the
//! `parallel` feature is enabled and falls back to a plain loop otherwise;
//! see [`exec::Parallelism`].

// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod exec;
pub mod factor;
pub mod fees;
pub mod fof;
pub mod metrics;
pub mod montecarlo;
pub mod multiple;
pub mod normality;
pub mod series;
pub mod special;
pub mod stats;

pub use error::{Error, Result};
pub use exec::Parallelism;
pub use series::{NavSeries, QuantileBand, ReturnSeries, TradingCalendar};
