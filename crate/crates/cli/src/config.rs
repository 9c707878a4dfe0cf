//! Run configuration: a flat `key = value` file with command-line overrides
//! applied on top.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use chrono::NaiveDate;
use navstat_core::factor::COMPETITION_TRADING_DAYS;
use navstat_core::fees::{FeeSchedule, HwmBasis};
use navstat_core::metrics::{AnnualizationConfig, SdMode, TRADING_DAYS_PER_YEAR};
use navstat_core::montecarlo::{competition_rebalance_dates, HoldingMode};
use navstat_core::multiple::BhMode;
use navstat_core::series::DEFAULT_INITIAL_CAPITAL;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};
use crate::ingest::SeriesKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct InputPaths {
    pub competitors: Option<PathBuf>,
    pub competitors_kind: SeriesKind,
    pub benchmarks: Option<PathBuf>,
    pub benchmarks_kind: SeriesKind,
    pub universe: Option<PathBuf>,
    pub universe_kind: SeriesKind,
    pub risk_free: Option<PathBuf>,
    pub risk_free_kind: SeriesKind,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub inputs: InputPaths,
    pub n_star: u32,
    pub sd_mode: SdMode,
    pub alpha_days: u32,
    pub capital: f64,
    pub mgmt: f64,
    pub perf: f64,
    pub hwm_basis: HwmBasis,
    pub sims: usize,
    pub seed: u64,
    pub portfolio_size: usize,
    pub holding: HoldingMode,
    pub rebalance_dates: Vec<NaiveDate>,
    pub k: usize,
    pub bh_level: f64,
    pub bh_mode: BhMode,
    pub hist_bin_width: f64,
    pub density_bins: usize,
    pub format: OutputFormat,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            inputs: InputPaths {
                competitors: None,
                competitors_kind: SeriesKind::Returns,
                benchmarks: None,
                benchmarks_kind: SeriesKind::Returns,
                universe: None,
                universe_kind: SeriesKind::Prices,
                risk_free: None,
                risk_free_kind: SeriesKind::Returns,
            },
            n_star: TRADING_DAYS_PER_YEAR,
            sd_mode: SdMode::Sample,
            alpha_days: COMPETITION_TRADING_DAYS,
            capital: DEFAULT_INITIAL_CAPITAL,
            mgmt: 0.01,
            perf: 0.10,
            hwm_basis: HwmBasis::PrePerformanceFee,
            sims: 10_000,
            seed: 2023,
            portfolio_size: 10,
            holding: HoldingMode::BuyAndHold,
            rebalance_dates: competition_rebalance_dates(),
            k: 10,
            bh_level: 0.05,
            bh_mode: BhMode::StepUp,
            hist_bin_width: 10.0,
            density_bins: 40,
            format: OutputFormat::Csv,
            out_dir: PathBuf::from("navstat-out"),
        }
    }
}

fn bad(key: &str, value: &str, expected: &str) -> CliError {
    CliError::Input(format!("config `{key}`: invalid value `{value}` ({expected})"))
}

fn parse<T: FromStr>(key: &str, value: &str, expected: &str) -> Result<T> {
    value.parse().map_err(|_| bad(key, value, expected))
}

fn parse_rate(key: &str, value: &str) -> Result<f64> {
    let v: f64 = parse(key, value, "a rate in [0, 1)")?;
    if !(0.0..1.0).contains(&v) {
        return Err(bad(key, value, "a rate in [0, 1)"));
    }
    Ok(v)
}

fn parse_positive<T: FromStr + PartialOrd + Default>(key: &str, value: &str) -> Result<T> {
    let v: T = parse(key, value, "a positive number")?;
    if !(v > T::default()) {
        return Err(bad(key, value, "a positive number"));
    }
    Ok(v)
}

impl RunConfig {
    /// Loads a config file. Relative input paths resolve against the file's
    /// directory.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let base = path.parent().unwrap_or(Path::new(""));
        let mut cfg = Self::default();
        cfg.apply_text(&text, base)?;
        Ok(cfg)
    }

    pub fn apply_text(&mut self, text: &str, base: &Path) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Input(format!("config line {}: expected `key = value`", lineno + 1)))?;
            self.set(key.trim(), value.trim(), base)?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str, base: &Path) -> Result<()> {
        let path = |v: &str| Some(base.join(v));
        match key {
            "competitors" => self.inputs.competitors = path(value),
            "benchmarks" => self.inputs.benchmarks = path(value),
            "universe" => self.inputs.universe = path(value),
            "risk_free" => self.inputs.risk_free = path(value),
            "competitors_kind" => self.inputs.competitors_kind = value.parse()?,
            "benchmarks_kind" => self.inputs.benchmarks_kind = value.parse()?,
            "universe_kind" => self.inputs.universe_kind = value.parse()?,
            "risk_free_kind" => self.inputs.risk_free_kind = value.parse()?,
            "n_star" => self.n_star = parse_positive(key, value)?,
            "sd_mode" => {
                self.sd_mode = match value {
                    "sample" => SdMode::Sample,
                    "population" => SdMode::Population,
                    _ => return Err(bad(key, value, "sample or population")),
                }
            }
            "alpha_days" => {
                self.alpha_days = match value {
                    "238" => 238,
                    "252" => 252,
                    _ => return Err(bad(key, value, "238 or 252")),
                }
            }
            "capital" => self.capital = parse_positive(key, value)?,
            "mgmt" => self.mgmt = parse_rate(key, value)?,
            "perf" => self.perf = parse_rate(key, value)?,
            "hwm_basis" => {
                self.hwm_basis = match value {
                    "pre_performance_fee" => HwmBasis::PrePerformanceFee,
                    "post_fee" => HwmBasis::PostFee,
                    _ => return Err(bad(key, value, "pre_performance_fee or post_fee")),
                }
            }
            "sims" => self.sims = parse_positive(key, value)?,
            "seed" => self.seed = parse(key, value, "an unsigned 64-bit integer")?,
            "portfolio_size" => self.portfolio_size = parse_positive(key, value)?,
            "holding" => {
                self.holding = match value {
                    "buy_and_hold" => HoldingMode::BuyAndHold,
                    "daily_rebalance" => HoldingMode::DailyRebalance,
                    _ => return Err(bad(key, value, "buy_and_hold or daily_rebalance")),
                }
            }
            "rebalance_dates" => {
                self.rebalance_dates = value
                    .split(',')
                    .map(|d| NaiveDate::parse_from_str(d.trim(), "%Y-%m-%d"))
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| bad(key, value, "comma-separated ISO dates"))?;
            }
            "k" => self.k = parse_positive(key, value)?,
            "bh_level" => {
                let v: f64 = parse(key, value, "a level in (0, 1)")?;
                if !(v > 0.0 && v < 1.0) {
                    return Err(bad(key, value, "a level in (0, 1)"));
                }
                self.bh_level = v;
            }
            "bh_mode" => {
                self.bh_mode = match value {
                    "step_up" => BhMode::StepUp,
                    "multiply_only" => BhMode::MultiplyOnly,
                    _ => return Err(bad(key, value, "step_up or multiply_only")),
                }
            }
            "hist_bin_width" => self.hist_bin_width = parse_positive(key, value)?,
            "density_bins" => self.density_bins = parse_positive(key, value)?,
            "format" => {
                self.format = match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(bad(key, value, "csv or json")),
                }
            }
            "out_dir" => self.out_dir = base.join(value),
            _ => return Err(CliError::Input(format!("unknown config key `{key}`"))),
        }
        Ok(())
    }

    pub fn annualization(&self) -> AnnualizationConfig {
        AnnualizationConfig {
            periods_per_year: self.n_star,
            sd_mode: self.sd_mode,
        }
    }

    pub fn fee_schedule(&self) -> FeeSchedule {
        FeeSchedule {
            hwm_basis: self.hwm_basis,
            ..FeeSchedule::new(self.mgmt, self.perf)
        }
    }

    /// Canonical text of every setting that changes computed results. Paths,
    /// output directory and output format are excluded.
    pub fn canonical(&self) -> String {
        let dates: Vec<String> = self.rebalance_dates.iter().map(|d| d.to_string()).collect();
        let lines = [
            format!("n_star={}", self.n_star),
            format!("sd_mode={:?}", self.sd_mode),
            format!("alpha_days={}", self.alpha_days),
            format!("capital={:016x}", self.capital.to_bits()),
            format!("mgmt={:016x}", self.mgmt.to_bits()),
            format!("perf={:016x}", self.perf.to_bits()),
            format!("hwm_basis={:?}", self.hwm_basis),
            format!("sims={}", self.sims),
            format!("seed={}", self.seed),
            format!("portfolio_size={}", self.portfolio_size),
            format!("holding={:?}", self.holding),
            format!("rebalance_dates={}", dates.join(",")),
            format!("k={}", self.k),
            format!("bh_level={:016x}", self.bh_level.to_bits()),
            format!("bh_mode={:?}", self.bh_mode),
            format!("hist_bin_width={:016x}", self.hist_bin_width.to_bits()),
            format!("density_bins={}", self.density_bins),
        ];
        lines.join("\n")
    }

    /// SHA-256 of the canonical settings and the dataset digest.
    pub fn config_hash(&self, dataset_digest: &str) -> String {
        let mut h = Sha256::new();
        h.update(b"navstat-run-v1\n");
        h.update(self.canonical().as_bytes());
        h.update(b"\ndataset=");
        h.update(dataset_digest.as_bytes());
        hex(&h.finalize())
    }
}

pub(crate) fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_overrides() {
        let mut cfg = RunConfig::default();
        cfg.apply_text(
            "# fixture\ncompetitors = data/c.csv\nsims = 200\nseed=42 # inline\nformat = json\n",
            Path::new("/fx"),
        )
        .unwrap();
        assert_eq!(cfg.inputs.competitors.as_deref(), Some(Path::new("/fx/data/c.csv")));
        assert_eq!(cfg.sims, 200);
        assert_eq!(cfg.format, OutputFormat::Json);
        cfg.set("seed", "7", Path::new("")).unwrap();
        assert_eq!(cfg.seed, 7);
    }

    #[test]
    fn rejects_out_of_range() {
        let mut cfg = RunConfig::default();
        let base = Path::new("");
        assert!(cfg.set("alpha_days", "250", base).is_err());
        assert!(cfg.set("mgmt", "1.5", base).is_err());
        assert!(cfg.set("perf", "-0.1", base).is_err());
        assert!(cfg.set("sims", "0", base).is_err());
        assert!(cfg.set("bh_level", "1", base).is_err());
        assert!(cfg.set("colour", "blue", base).is_err());
        assert!(cfg.apply_text("no equals sign", base).is_err());
        assert!(cfg.set("rebalance_dates", "2022-03-06,June", base).is_err());
    }

    #[test]
    fn hash_ignores_paths_and_format() {
        let a = RunConfig::default();
        let mut b = RunConfig::default();
        b.set("competitors", "elsewhere.csv", Path::new("")).unwrap();
        b.set("out_dir", "x", Path::new("")).unwrap();
        b.set("format", "json", Path::new("")).unwrap();
        assert_eq!(a.config_hash("d"), b.config_hash("d"));
        b.set("seed", "1", Path::new("")).unwrap();
        assert_ne!(a.config_hash("d"), b.config_hash("d"));
        assert_ne!(a.config_hash("d"), a.config_hash("e"));
    }
}
