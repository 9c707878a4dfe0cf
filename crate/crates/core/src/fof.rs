//! Fund-of-funds backtests that each month invest equally in the `k`
//! competitors with the highest (`Top`) or lowest (`Bottom`) return over the
//! previous month.

use chrono::NaiveDate;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::montecarlo::HoldingSchedule;
use crate::series::{NavSeries, ReturnSeries, TradingCalendar, DEFAULT_INITIAL_CAPITAL};

/// Contiguous periods delimited by boundary dates. Period `p` (1-based)
/// covers the trading days strictly after boundary `p` up to and including
/// boundary `p + 1`; the last period runs to the end of the calendar.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodGrid {
    pub calendar: TradingCalendar,
    pub boundaries: Vec<NaiveDate>,
    /// Half-open index ranges into `calendar`.
    pub ranges: Vec<(usize, usize)>,
}

impl PeriodGrid {
    pub fn new(calendar: TradingCalendar, boundaries: Vec<NaiveDate>) -> Result<Self> {
        let ranges = match HoldingSchedule::new(&calendar, &boundaries) {
            Ok(s) => s.periods,
            Err(Error::EmptyHoldingPeriod(d)) => {
                let p = boundaries.iter().position(|b| *b == d).unwrap_or(0);
                return Err(Error::EmptyPeriod(p + 1));
            }
            Err(e) => return Err(e),
        };
        Ok(Self {
            calendar,
            boundaries,
            ranges,
        })
    }

    pub fn num_periods(&self) -> usize {
        self.ranges.len()
    }

    pub fn period_end_date(&self, p: usize) -> NaiveDate {
        self.calendar.dates()[self.ranges[p - 1].1 - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Selector {
    /// Prior-period winners.
    Top,
    /// Prior-period losers.
    Bottom,
}

/// Compounded return of each grid period.
pub fn period_returns(r: &ReturnSeries, grid: &PeriodGrid) -> Result<Vec<f64>> {
    if r.calendar() != &grid.calendar {
        return Err(Error::CalendarMismatch(format!(
            "{} does not cover the period grid's trading days",
            r.name
        )));
    }
    Ok(grid
        .ranges
        .iter()
        .map(|&(s, e)| r.returns()[s..e].iter().map(|x| 1.0 + x).product::<f64>() - 1.0)
        .collect())
}

/// Picks `k` competitor indices by their return in period `p - 1`.
/// `period_rets[i][q]` is competitor `i`'s return in period `q + 1`. Ties go
/// to the lower index. The result is sorted ascending.
pub fn select_team(period_rets: &[Vec<f64>], p: usize, selector: Selector, k: usize) -> Result<Vec<usize>> {
    if p <= 1 {
        return Err(Error::NoPriorPeriod(p));
    }
    if period_rets.len() < k {
        return Err(Error::PortfolioTooLarge {
            k,
            universe: period_rets.len(),
        });
    }
    if k == 0 {
        return Err(Error::InvalidParameter("team size must be positive".into()));
    }
    if let Some(short) = period_rets.iter().position(|r| r.len() < p - 1) {
        return Err(Error::InvalidParameter(format!(
            "competitor {short} has no return for period {}",
            p - 1
        )));
    }
    let prior = p - 2;
    let mut order: Vec<usize> = (0..period_rets.len()).collect();
    order.sort_by(|&a, &b| {
        let (ra, rb) = (period_rets[a][prior], period_rets[b][prior]);
        let by_return = match selector {
            Selector::Top => rb.total_cmp(&ra),
            Selector::Bottom => ra.total_cmp(&rb),
        };
        by_return.then(a.cmp(&b))
    });
    let mut team = order[..k].to_vec();
    team.sort_unstable();
    Ok(team)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TeamPeriod {
    /// 1-based period index (always >= 2).
    pub period: usize,
    pub team: Vec<usize>,
    pub member_returns: Vec<f64>,
    pub strategy_return: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FofBacktest {
    pub selector: Selector,
    pub k: usize,
    pub periods: Vec<TeamPeriod>,
    /// Strategy NAV at each invested period's last trading day.
    pub nav: NavSeries,
    /// Daily strategy NAV under a single allocation at the start of each
    /// period (member weights drift within the month).
    pub daily_nav: NavSeries,
    pub total_return: f64,
}

pub fn fof_backtest(cohort: &[ReturnSeries], grid: &PeriodGrid, selector: Selector, k: usize) -> Result<FofBacktest> {
    if grid.num_periods() < 2 {
        return Err(Error::InvalidParameter("backtest needs at least two periods".into()));
    }
    let rets = cohort
        .iter()
        .map(|c| period_returns(c, grid))
        .collect::<Result<Vec<_>>>()?;
    let capital = DEFAULT_INITIAL_CAPITAL;
    let mut periods = Vec::with_capacity(grid.num_periods() - 1);
    let mut nav = capital;
    let mut navs = Vec::new();
    let mut nav_dates = Vec::new();
    let mut daily = Vec::new();
    for p in 2..=grid.num_periods() {
        let team = select_team(&rets, p, selector, k)?;
        let member_returns: Vec<f64> = team.iter().map(|&i| rets[i][p - 1]).collect();
        let strategy_return = member_returns.iter().sum::<f64>() / k as f64;

        let (s, e) = grid.ranges[p - 1];
        let mut growth = vec![1.0; team.len()];
        for t in s..e {
            for (g, &i) in growth.iter_mut().zip(&team) {
                *g *= 1.0 + cohort[i].returns()[t];
            }
            daily.push(nav * growth.iter().sum::<f64>() / k as f64);
        }

        nav *= 1.0 + strategy_return;
        navs.push(nav);
        nav_dates.push(grid.period_end_date(p));
        periods.push(TeamPeriod {
            period: p,
            team,
            member_returns,
            strategy_return,
        });
    }
    let name = match selector {
        Selector::Top => "superstars",
        Selector::Bottom => "superlosers",
    };
    let daily_calendar = grid
        .calendar
        .slice(grid.ranges[1].0, grid.ranges[grid.num_periods() - 1].1);
    Ok(FofBacktest {
        selector,
        k,
        periods,
        nav: NavSeries::new(name, capital, TradingCalendar::new(nav_dates)?, navs)?,
        daily_nav: NavSeries::new(name, capital, daily_calendar, daily)?,
        total_return: nav / capital - 1.0,
    })
}

/// Per-period member curves restarting at `capital` each period, for
/// display. Returns `(period, competitor index, navs)` in backtest order.
pub fn member_curves(
    cohort: &[ReturnSeries],
    grid: &PeriodGrid,
    backtest: &FofBacktest,
    capital: f64,
) -> Vec<(usize, usize, Vec<f64>)> {
    let mut out = Vec::new();
    for tp in &backtest.periods {
        let (s, e) = grid.ranges[tp.period - 1];
        for &i in &tp.team {
            let mut v = capital;
            let path = cohort[i].returns()[s..e]
                .iter()
                .map(|r| {
                    v *= 1.0 + r;
                    v
                })
                .collect();
            out.push((tp.period, i, path));
        }
    }
    out
}
