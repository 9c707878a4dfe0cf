//! Dated return and NAV series, calendar alignment and cross-sectional
//! quantile bands.

use std::collections::BTreeSet;

use chrono::NaiveDate;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::stats::quantile_sorted;

pub const DEFAULT_INITIAL_CAPITAL: f64 = 100.0;

/// Strictly increasing list of trading dates.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TradingCalendar {
    dates: Vec<NaiveDate>,
}

impl TradingCalendar {
    pub fn new(dates: Vec<NaiveDate>) -> Result<Self> {
        for w in dates.windows(2) {
            if w[1] == w[0] {
                return Err(Error::DuplicateDate(w[1]));
            }
            if w[1] < w[0] {
                return Err(Error::UnorderedCalendar(w[1], w[0]));
            }
        }
        Ok(Self { dates })
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    pub fn first(&self) -> Option<NaiveDate> {
        self.dates.first().copied()
    }

    pub fn last(&self) -> Option<NaiveDate> {
        self.dates.last().copied()
    }

    /// Index of the first trading date strictly after `date`.
    pub fn first_index_after(&self, date: NaiveDate) -> usize {
        self.dates.partition_point(|d| *d <= date)
    }

    pub fn slice(&self, start: usize, end: usize) -> TradingCalendar {
        TradingCalendar {
            dates: self.dates[start..end].to_vec(),
        }
    }
}

/// Daily simple returns (0.01 = 1%) of one named entity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReturnSeries {
    pub name: String,
    calendar: TradingCalendar,
    returns: Vec<f64>,
}

impl ReturnSeries {
    pub fn new(name: impl Into<String>, calendar: TradingCalendar, returns: Vec<f64>) -> Result<Self> {
        let name = name.into();
        if returns.len() != calendar.len() {
            return Err(Error::LengthMismatch {
                what: format!("returns of {name}"),
                expected: calendar.len(),
                got: returns.len(),
            });
        }
        for (d, &r) in calendar.dates().iter().zip(&returns) {
            if !(r > -1.0) || !r.is_finite() {
                return Err(Error::InvalidReturn { date: *d, value: r });
            }
        }
        Ok(Self {
            name,
            calendar,
            returns,
        })
    }

    pub fn calendar(&self) -> &TradingCalendar {
        &self.calendar
    }

    pub fn returns(&self) -> &[f64] {
        &self.returns
    }

    pub fn len(&self) -> usize {
        self.returns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.returns.is_empty()
    }

    pub fn mean(&self) -> f64 {
        crate::stats::mean(&self.returns)
    }

    /// Growth of one unit over the whole series.
    pub fn growth(&self) -> f64 {
        self.returns.iter().map(|r| 1.0 + r).product()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Net asset values at each daily close, compounded from `initial_capital`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NavSeries {
    pub name: String,
    pub initial_capital: f64,
    calendar: TradingCalendar,
    navs: Vec<f64>,
}

impl NavSeries {
    pub fn new(
        name: impl Into<String>,
        initial_capital: f64,
        calendar: TradingCalendar,
        navs: Vec<f64>,
    ) -> Result<Self> {
        let name = name.into();
        if !(initial_capital > 0.0) || !initial_capital.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "initial capital must be positive, got {initial_capital}"
            )));
        }
        if navs.len() != calendar.len() {
            return Err(Error::LengthMismatch {
                what: format!("navs of {name}"),
                expected: calendar.len(),
                got: navs.len(),
            });
        }
        for (d, &v) in calendar.dates().iter().zip(&navs) {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!("non-positive NAV {v} on {d}")));
            }
        }
        Ok(Self {
            name,
            initial_capital,
            calendar,
            navs,
        })
    }

    pub fn calendar(&self) -> &TradingCalendar {
        &self.calendar
    }

    pub fn navs(&self) -> &[f64] {
        &self.navs
    }

    pub fn len(&self) -> usize {
        self.navs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.navs.is_empty()
    }

    /// Final NAV; the initial capital for an empty series.
    pub fn ending_nav(&self) -> f64 {
        self.navs.last().copied().unwrap_or(self.initial_capital)
    }

    /// Daily returns implied by the path, with the initial capital as the
    /// day-0 value.
    pub fn to_returns(&self) -> ReturnSeries {
        let mut prev = self.initial_capital;
        let returns = self
            .navs
            .iter()
            .map(|&v| {
                let r = v / prev - 1.0;
                prev = v;
                r
            })
            .collect();
        ReturnSeries {
            name: self.name.clone(),
            calendar: self.calendar.clone(),
            returns,
        }
    }
}

/// Per-date cross-sectional quantile of a cohort of NAV paths.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantileBand {
    pub q: f64,
    pub calendar: TradingCalendar,
    pub values: Vec<f64>,
}

/// Simple returns from a dated price sequence. The first date carries no
/// return and is dropped from the output calendar.
pub fn returns_from_prices(name: &str, dates: &[NaiveDate], prices: &[f64]) -> Result<ReturnSeries> {
    if dates.len() != prices.len() {
        return Err(Error::LengthMismatch {
            what: format!("prices of {name}"),
            expected: dates.len(),
            got: prices.len(),
        });
    }
    if prices.is_empty() {
        return Err(Error::Empty(format!("price series {name}")));
    }
    for (d, &p) in dates.iter().zip(prices) {
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::NonPositivePrice { date: *d, price: p });
        }
    }
    let calendar = TradingCalendar::new(dates.to_vec())?;
    let calendar = calendar.slice(1, calendar.len());
    let returns = prices.windows(2).map(|w| w[1] / w[0] - 1.0).collect();
    ReturnSeries::new(name, calendar, returns)
}

/// Compounds returns from `initial_capital`.
pub fn nav_from_returns(r: &ReturnSeries, initial_capital: f64) -> Result<NavSeries> {
    if !(initial_capital > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "initial capital must be positive, got {initial_capital}"
        )));
    }
    let mut nav = initial_capital;
    let mut navs = Vec::with_capacity(r.len());
    for (d, &x) in r.calendar.dates().iter().zip(&r.returns) {
        if !(x > -1.0) {
            return Err(Error::InvalidReturn { date: *d, value: x });
        }
        nav *= 1.0 + x;
        navs.push(nav);
    }
    NavSeries::new(r.name.clone(), initial_capital, r.calendar.clone(), navs)
}

/// Restricts every series to the dates common to all of them. Returns on
/// dropped dates are discarded, not compounded into neighbouring days.
pub fn align_series(series: &[ReturnSeries]) -> Result<Vec<ReturnSeries>> {
    let Some(first) = series.first() else {
        return Err(Error::Empty("no series to align".into()));
    };
    let mut common: BTreeSet<NaiveDate> = first.calendar.dates().iter().copied().collect();
    for s in &series[1..] {
        let other: BTreeSet<NaiveDate> = s.calendar.dates().iter().copied().collect();
        common = common.intersection(&other).copied().collect();
    }
    if common.is_empty() {
        return Err(Error::EmptyIntersection);
    }
    let calendar = TradingCalendar::new(common.iter().copied().collect())?;
    series
        .iter()
        .map(|s| {
            if s.calendar == calendar {
                return Ok(s.clone());
            }
            let returns = s
                .calendar
                .dates()
                .iter()
                .zip(&s.returns)
                .filter(|(d, _)| common.contains(d))
                .map(|(_, &r)| r)
                .collect();
            ReturnSeries::new(s.name.clone(), calendar.clone(), returns)
        })
        .collect()
}

/// Per-date empirical `q`-quantile across a cohort sharing one calendar.
pub fn quantile_band(series: &[NavSeries], q: f64) -> Result<QuantileBand> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!("quantile level {q} outside [0, 1]")));
    }
    let Some(first) = series.first() else {
        return Err(Error::Empty("no series for quantile band".into()));
    };
    let calendar = first.calendar.clone();
    if let Some(bad) = series.iter().find(|s| s.calendar != calendar) {
        return Err(Error::CalendarMismatch(format!(
            "{} does not share the calendar of {}",
            bad.name, first.name
        )));
    }
    let mut column = vec![0.0; series.len()];
    let values = (0..calendar.len())
        .map(|t| {
            for (slot, s) in column.iter_mut().zip(series) {
                *slot = s.navs[t];
            }
            column.sort_by(f64::total_cmp);
            quantile_sorted(&column, q)
        })
        .collect();
    Ok(QuantileBand { q, calendar, values })
}
