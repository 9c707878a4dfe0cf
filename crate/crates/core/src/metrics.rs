//! Return/risk metrics of a single series and cohort summaries of them.
//!
//! Drawdowns are measured from the running peak with the initial capital
//! counted as the day-0 peak. SR, CR and UPI share one annualized-return
//! numerator: `(prod(1 + r_t))^(n*/n) - 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Parallelism;
use crate::series::{nav_from_returns, NavSeries, ReturnSeries, TradingCalendar};
use crate::stats::{mean, std_dev, Summary};

pub const TRADING_DAYS_PER_YEAR: u32 = 252;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SdMode {
    #[default]
    Sample,
    Population,
}

impl SdMode {
    fn ddof(self) -> usize {
        match self {
            SdMode::Sample => 1,
            SdMode::Population => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnualizationConfig {
    pub periods_per_year: u32,
    pub sd_mode: SdMode,
}

impl Default for AnnualizationConfig {
    fn default() -> Self {
        Self {
            periods_per_year: TRADING_DAYS_PER_YEAR,
            sd_mode: SdMode::Sample,
        }
    }
}

impl AnnualizationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.periods_per_year == 0 {
            return Err(Error::InvalidParameter("periods per year must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DrawdownSeries {
    pub calendar: TradingCalendar,
    pub dd: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Positive,
    Negative,
}

/// Why a metric could not be computed for a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Absence {
    TooShort,
    ZeroVolatility,
    ZeroDrawdown,
    ZeroUlcer,
    ZeroVariance,
    NoPositiveReturns,
    NoNegativeReturns,
}

impl Absence {
    pub fn code(self) -> &'static str {
        match self {
            Absence::TooShort => "too_short",
            Absence::ZeroVolatility => "zero_volatility",
            Absence::ZeroDrawdown => "zero_drawdown",
            Absence::ZeroUlcer => "zero_ulcer",
            Absence::ZeroVariance => "zero_variance",
            Absence::NoPositiveReturns => "no_positive_returns",
            Absence::NoNegativeReturns => "no_negative_returns",
        }
    }
}

/// A metric value, or the reason it is undefined for this series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Value(f64),
    Absent(Absence),
}

impl Metric {
    pub fn value(self) -> Option<f64> {
        match self {
            Metric::Value(v) => Some(v),
            Metric::Absent(_) => None,
        }
    }

    fn from_result(r: Result<f64>) -> Metric {
        match r {
            Ok(v) => Metric::Value(v),
            Err(e) => Metric::Absent(absence_of(&e)),
        }
    }
}

fn absence_of(e: &Error) -> Absence {
    match e {
        Error::Undefined { metric: "SR", .. } => Absence::ZeroVolatility,
        Error::Undefined { metric: "CR", .. } => Absence::ZeroDrawdown,
        Error::Undefined { metric: "UPI", .. } => Absence::ZeroUlcer,
        Error::Undefined { .. } => Absence::ZeroVariance,
        Error::EmptySide("positive") => Absence::NoPositiveReturns,
        Error::EmptySide(_) => Absence::NoNegativeReturns,
        _ => Absence::TooShort,
    }
}

/// One row of a metrics table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub name: String,
    pub n: usize,
    pub sr: Metric,
    pub mdd: f64,
    pub cr: Metric,
    pub ui: f64,
    pub upi: Metric,
    pub vol_up: Metric,
    pub vol_down: Metric,
    pub autocorr: Metric,
    pub autocorr_lag: usize,
    pub ann_return: f64,
    pub ann_sd: Metric,
    pub ending_nav: f64,
}

/// Column names in report order.
pub const REPORT_COLUMNS: [&str; 11] = [
    "sr",
    "mdd",
    "cr",
    "ui",
    "upi",
    "vol_up",
    "vol_down",
    "autocorr",
    "ann_return",
    "ann_sd",
    "ending_nav",
];

impl MetricsReport {
    /// Values in [`REPORT_COLUMNS`] order; `None` for absent metrics.
    pub fn columns(&self) -> [Option<f64>; 11] {
        [
            self.sr.value(),
            Some(self.mdd),
            self.cr.value(),
            Some(self.ui),
            self.upi.value(),
            self.vol_up.value(),
            self.vol_down.value(),
            self.autocorr.value(),
            Some(self.ann_return),
            self.ann_sd.value(),
            Some(self.ending_nav),
        ]
    }
}

pub fn drawdown_series(nav: &NavSeries) -> Result<DrawdownSeries> {
    if nav.is_empty() {
        return Err(Error::Empty(format!("NAV series {}", nav.name)));
    }
    let mut peak = nav.initial_capital;
    let dd = nav
        .navs()
        .iter()
        .map(|&v| {
            if v >= peak {
                peak = v;
                0.0
            } else {
                1.0 - v / peak
            }
        })
        .collect();
    Ok(DrawdownSeries {
        calendar: nav.calendar().clone(),
        dd,
    })
}

pub fn max_drawdown(nav: &NavSeries) -> Result<f64> {
    Ok(drawdown_series(nav)?.dd.into_iter().fold(0.0, f64::max))
}

pub fn ulcer_index(nav: &NavSeries) -> Result<f64> {
    let dd = drawdown_series(nav)?.dd;
    Ok((dd.iter().map(|d| d * d).sum::<f64>() / dd.len() as f64).sqrt())
}

/// `(prod(1 + r_t))^(n*/n) - 1`.
pub fn annualized_return(r: &ReturnSeries, cfg: &AnnualizationConfig) -> Result<f64> {
    cfg.validate()?;
    if r.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    Ok(r.growth().powf(cfg.periods_per_year as f64 / r.len() as f64) - 1.0)
}

/// `sqrt(n*) * sd(daily returns)`.
pub fn annualized_sd(r: &ReturnSeries, cfg: &AnnualizationConfig) -> Result<f64> {
    cfg.validate()?;
    if r.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: r.len(),
        });
    }
    Ok((cfg.periods_per_year as f64).sqrt() * std_dev(r.returns(), cfg.sd_mode.ddof()))
}

pub fn sharpe_ratio(r: &ReturnSeries, cfg: &AnnualizationConfig) -> Result<f64> {
    let sd = annualized_sd(r, cfg)?;
    if sd == 0.0 {
        return Err(Error::Undefined {
            metric: "SR",
            reason: "zero volatility",
        });
    }
    Ok(annualized_return(r, cfg)? / sd)
}

pub fn calmar_ratio(r: &ReturnSeries, nav: &NavSeries, cfg: &AnnualizationConfig) -> Result<f64> {
    let mdd = max_drawdown(nav)?;
    if mdd == 0.0 {
        return Err(Error::Undefined {
            metric: "CR",
            reason: "zero maximum drawdown",
        });
    }
    Ok(annualized_return(r, cfg)? / mdd)
}

pub fn upi(r: &ReturnSeries, nav: &NavSeries, cfg: &AnnualizationConfig) -> Result<f64> {
    let ui = ulcer_index(nav)?;
    if ui == 0.0 {
        return Err(Error::Undefined {
            metric: "UPI",
            reason: "zero ulcer index",
        });
    }
    Ok(annualized_return(r, cfg)? / ui)
}

/// Population standard deviation of one side's returns about that side's own
/// mean. Zero returns belong to neither side.
pub fn side_volatility(r: &ReturnSeries, side: Side) -> Result<f64> {
    let picked: Vec<f64> = r
        .returns()
        .iter()
        .copied()
        .filter(|&x| match side {
            Side::Positive => x > 0.0,
            Side::Negative => x < 0.0,
        })
        .collect();
    if picked.is_empty() {
        return Err(Error::EmptySide(match side {
            Side::Positive => "positive",
            Side::Negative => "negative",
        }));
    }
    Ok(std_dev(&picked, 0))
}

/// Sample autocorrelation at `lag`, normalized by the full-sample sum of
/// squared deviations.
pub fn autocorrelation(r: &ReturnSeries, lag: usize) -> Result<f64> {
    let x = r.returns();
    if x.len() <= lag + 1 {
        return Err(Error::InsufficientData {
            needed: lag + 2,
            got: x.len(),
        });
    }
    let m = mean(x);
    let denom: f64 = x.iter().map(|v| (v - m).powi(2)).sum();
    if denom == 0.0 {
        return Err(Error::Undefined {
            metric: "autocorrelation",
            reason: "zero variance",
        });
    }
    let num: f64 = x.iter().zip(&x[lag..]).map(|(a, b)| (a - m) * (b - m)).sum();
    Ok(num / denom)
}

/// Assembles every metric for one series. Undefined constituents are
/// recorded as absent rather than failing the row.
pub fn metrics_report(r: &ReturnSeries, initial_capital: f64, cfg: &AnnualizationConfig) -> Result<MetricsReport> {
    cfg.validate()?;
    if r.is_empty() {
        return Err(Error::Empty(format!("return series {}", r.name)));
    }
    let nav = nav_from_returns(r, initial_capital)?;
    let ann_return = annualized_return(r, cfg)?;
    let mdd = max_drawdown(&nav)?;
    let ui = ulcer_index(&nav)?;
    let ann_sd = Metric::from_result(annualized_sd(r, cfg));

    let ratio = |den: Option<f64>, missing: Absence, zero: Absence| match den {
        None => Metric::Absent(missing),
        Some(0.0) => Metric::Absent(zero),
        Some(d) => Metric::Value(ann_return / d),
    };
    let sr = match ann_sd {
        Metric::Absent(a) => Metric::Absent(a),
        Metric::Value(sd) => ratio(Some(sd), Absence::TooShort, Absence::ZeroVolatility),
    };
    let lag = 1;
    Ok(MetricsReport {
        name: r.name.clone(),
        n: r.len(),
        sr,
        mdd,
        cr: ratio(Some(mdd), Absence::TooShort, Absence::ZeroDrawdown),
        ui,
        upi: ratio(Some(ui), Absence::TooShort, Absence::ZeroUlcer),
        vol_up: Metric::from_result(side_volatility(r, Side::Positive)),
        vol_down: Metric::from_result(side_volatility(r, Side::Negative)),
        autocorr: Metric::from_result(autocorrelation(r, lag)),
        autocorr_lag: lag,
        ann_return,
        ann_sd,
        ending_nav: nav.ending_nav(),
    })
}

/// Reports for many series, in input order.
pub fn metrics_reports(
    series: &[ReturnSeries],
    initial_capital: f64,
    cfg: &AnnualizationConfig,
    par: Parallelism,
) -> Vec<Result<MetricsReport>> {
    par.map_slice(series, |r| metrics_report(r, initial_capital, cfg))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnSummary {
    pub metric: &'static str,
    pub summary: Option<Summary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CohortSummary {
    pub members: usize,
    pub columns: Vec<ColumnSummary>,
}

impl CohortSummary {
    pub fn column(&self, metric: &str) -> Option<&Summary> {
        self.columns
            .iter()
            .find(|c| c.metric == metric)
            .and_then(|c| c.summary.as_ref())
    }
}

/// Min / quartiles / median / mean / max per metric column, skipping absent
/// values.
pub fn cohort_summary(reports: &[MetricsReport]) -> Result<CohortSummary> {
    if reports.is_empty() {
        return Err(Error::Empty("cohort has no reports".into()));
    }
    let rows: Vec<[Option<f64>; 11]> = reports.iter().map(MetricsReport::columns).collect();
    let columns = REPORT_COLUMNS
        .iter()
        .enumerate()
        .map(|(i, &metric)| ColumnSummary {
            metric,
            summary: Summary::from_options(rows.iter().map(|row| row[i])),
        })
        .collect();
    Ok(CohortSummary {
        members: reports.len(),
        columns,
    })
}
