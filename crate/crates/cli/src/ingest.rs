//! CSV ingestion: a `date` column of ISO-8601 dates followed by one numeric
//! column per series.

use std::path::Path;
use std::str::FromStr;

use chrono::NaiveDate;
use navstat_core::series::returns_from_prices;
use navstat_core::{ReturnSeries, TradingCalendar};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// Decimal-fraction daily returns.
    Returns,
    /// Positive prices, converted to simple returns.
    Prices,
}

impl FromStr for SeriesKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "returns" => Ok(SeriesKind::Returns),
            "prices" => Ok(SeriesKind::Prices),
            other => Err(CliError::Input(format!(
                "unknown series kind `{other}` (expected returns or prices)"
            ))),
        }
    }
}

pub fn ingest_csv(path: &Path, kind: SeriesKind) -> Result<Vec<ReturnSeries>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_csv(&text, kind).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_csv(text: &str, kind: SeriesKind) -> Result<Vec<ReturnSeries>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| CliError::Input(format!("unreadable header: {e}")))?
        .clone();
    if headers.get(0) != Some("date") {
        return Err(CliError::Input("first column header must be `date`".into()));
    }
    let names: Vec<String> = headers.iter().skip(1).map(str::to_string).collect();
    if names.is_empty() {
        return Err(CliError::Input("no series columns".into()));
    }

    let mut dates: Vec<NaiveDate> = Vec::new();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    for (i, record) in reader.records().enumerate() {
        // Header is line 1.
        let row = i + 2;
        let record = record.map_err(|e| CliError::Input(format!("row {row}: {e}")))?;
        if record.len() != names.len() + 1 {
            return Err(CliError::Input(format!(
                "row {row}: expected {} cells, found {}",
                names.len() + 1,
                record.len()
            )));
        }
        let date = NaiveDate::parse_from_str(&record[0], "%Y-%m-%d")
            .map_err(|_| CliError::Input(format!("row {row}, column 1: invalid date `{}`", &record[0])))?;
        if let Some(&prev) = dates.last() {
            if date == prev || dates.contains(&date) {
                return Err(CliError::Input(format!("row {row}: duplicate date {date}")));
            }
        }
        dates.push(date);
        for (j, cell) in record.iter().skip(1).enumerate() {
            let v: f64 = cell.parse().map_err(|_| {
                CliError::Input(format!(
                    "row {row}, column {} ({}): non-numeric cell `{cell}`",
                    j + 2,
                    names[j]
                ))
            })?;
            if !v.is_finite() {
                return Err(CliError::Input(format!(
                    "row {row}, column {} ({}): non-finite value",
                    j + 2,
                    names[j]
                )));
            }
            columns[j].push(v);
        }
    }

    let calendar = TradingCalendar::new(dates.clone()).map_err(|e| CliError::Input(e.to_string()))?;
    names
        .into_iter()
        .zip(columns)
        .enumerate()
        .map(|(j, (name, values))| {
            let series = match kind {
                SeriesKind::Returns => ReturnSeries::new(name.clone(), calendar.clone(), values),
                SeriesKind::Prices => returns_from_prices(&name, &dates, &values),
            };
            series.map_err(|e| CliError::Input(format!("column {} ({name}): {e}", j + 2)))
        })
        .collect()
}
