//! File-driven reports and plot data built on `navstat-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod dataset;
pub mod error;
pub mod fixture;
pub mod format;
pub mod ingest;
pub mod plot;
pub mod report;

pub use config::{OutputFormat, RunConfig};
pub use dataset::Dataset;
pub use error::{CliError, Result};
pub use report::{run_report, Command};
