//! Number formatting and table emission.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use crate::config::OutputFormat;
use crate::error::{CliError, Result};

pub const SIGNIFICANT_DIGITS: usize = 6;

/// Six significant digits, shortest form that re-parses to the rounded value.
/// Non-finite values print as `NA`; negative zero prints as `0`.
pub fn fmt_num(v: f64) -> String {
    if !v.is_finite() {
        return "NA".into();
    }
    let rounded: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v)
        .parse()
        .expect("float formatting round-trips");
    if rounded == 0.0 {
        return "0".into();
    }
    let exp = rounded.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".into(), fmt_num)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i64),
    Num(Option<f64>),
    Bool(bool),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn num(v: f64) -> Self {
        Cell::Num(Some(v))
    }

    pub fn int(v: usize) -> Self {
        Cell::Int(v as i64)
    }

    fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Num(v) => fmt_opt(*v),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Int(i) => Value::from(*i),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Num(v) => match fmt_opt(*v).parse::<f64>() {
                Ok(x) => Value::from(x),
                Err(_) => Value::Null,
            },
        }
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        Cell::Num(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub command: String,
    pub config_hash: String,
    pub seed: u64,
}

impl Provenance {
    pub fn line(&self) -> String {
        format!(
            "# navstat {} config_hash={} seed={}",
            self.command, self.config_hash, self.seed
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width for table {}", self.name);
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat, prov: &Provenance) -> Result<String> {
        match format {
            OutputFormat::Csv => {
                let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
                let write_err = |e: csv::Error| CliError::Input(format!("writing {}: {e}", self.name));
                w.write_record(&self.columns).map_err(write_err)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::render)).map_err(write_err)?;
                }
                let body = w
                    .into_inner()
                    .map_err(|e| CliError::Input(format!("writing {}: {e}", self.name)))?;
                let mut out = prov.line();
                out.push('\n');
                out.push_str(&String::from_utf8(body).expect("csv output is UTF-8"));
                Ok(out)
            }
            OutputFormat::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .columns
                            .iter()
                            .cloned()
                            .zip(row.iter().map(Cell::to_json))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                let doc = serde_json::json!({
                    "provenance": {
                        "command": prov.command,
                        "config_hash": prov.config_hash,
                        "seed": prov.seed,
                    },
                    "table": self.name,
                    "columns": self.columns,
                    "rows": rows,
                });
                let mut s = serde_json::to_string_pretty(&doc).expect("JSON serialization");
                s.push('\n');
                Ok(s)
            }
        }
    }

    pub fn write(&self, dir: &Path, format: OutputFormat, prov: &Provenance) -> Result<PathBuf> {
        let ext = match format {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        };
        let path = dir.join(format!("{}.{ext}", self.name));
        write_file(&path, &self.render(format, prov)?)?;
        Ok(path)
    }
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Joins already-rendered cells with tabs.
pub(crate) fn tsv_line(out: &mut String, cells: &[String]) {
    let _ = writeln!(out, "{}", cells.join("\t"));
}
