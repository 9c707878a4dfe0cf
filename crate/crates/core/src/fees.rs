//! Management and high-water-mark performance fees applied to a gross NAV
//! path, deducted daily.
//!
//! Each day, in order: the gross return is applied to yesterday's net NAV,
//! the prorated management fee `mgmt_rate / periods_per_year` of that value
//! is deducted, and if the result exceeds the high-water mark the
//! performance fee `perf_rate * (value - hwm)` is deducted.

use chrono::NaiveDate;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::NavSeries;

/// Which value becomes the new high-water mark after a performance fee
/// crystallizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HwmBasis {
    /// The post-management, pre-performance-fee value: a $100 -> $200 gain
    /// nets to $190 and leaves the mark at $200.
    #[default]
    PrePerformanceFee,
    /// The net value after the performance fee ($190 in the same example).
    PostFee,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeeSchedule {
    pub mgmt_rate: f64,
    pub perf_rate: f64,
    pub periods_per_year: u32,
    pub hwm_basis: HwmBasis,
}

impl Default for FeeSchedule {
    fn default() -> Self {
        Self {
            mgmt_rate: 0.01,
            perf_rate: 0.10,
            periods_per_year: 252,
            hwm_basis: HwmBasis::PrePerformanceFee,
        }
    }
}

impl FeeSchedule {
    pub fn new(mgmt_rate: f64, perf_rate: f64) -> Self {
        Self {
            mgmt_rate,
            perf_rate,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.mgmt_rate) {
            return Err(Error::InvalidParameter(format!(
                "management rate {} outside [0, 1)",
                self.mgmt_rate
            )));
        }
        if !(0.0..1.0).contains(&self.perf_rate) {
            return Err(Error::InvalidParameter(format!(
                "performance rate {} outside [0, 1)",
                self.perf_rate
            )));
        }
        if self.periods_per_year == 0 {
            return Err(Error::InvalidParameter("periods per year must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeeLedger {
    pub schedule: FeeSchedule,
    pub mgmt_fee: Vec<f64>,
    pub perf_fee: Vec<f64>,
    /// High-water mark at each close, after that day's crystallization.
    pub high_water_mark: Vec<f64>,
    pub net: NavSeries,
}

impl FeeLedger {
    pub fn total_mgmt_fees(&self) -> f64 {
        self.mgmt_fee.iter().sum()
    }

    pub fn total_perf_fees(&self) -> f64 {
        self.perf_fee.iter().sum()
    }
}

pub fn apply_fees(gross: &NavSeries, schedule: &FeeSchedule) -> Result<FeeLedger> {
    schedule.validate()?;
    let n = gross.len();
    let mut mgmt_fee = Vec::with_capacity(n);
    let mut perf_fee = Vec::with_capacity(n);
    let mut hwm_path = Vec::with_capacity(n);
    let mut navs = Vec::with_capacity(n);

    let mgmt_daily = schedule.mgmt_rate / schedule.periods_per_year as f64;
    let mut prev_gross = gross.initial_capital;
    let mut prev_net = gross.initial_capital;
    let mut hwm = gross.initial_capital;
    for (&date, &g) in gross.calendar().dates().iter().zip(gross.navs()) {
        // Scale today's gross by the cumulative net/gross ratio so a zero-fee
        // path reproduces the gross path exactly.
        let mut value = g * (prev_net / prev_gross);
        let mgmt = mgmt_daily * value;
        value -= mgmt;
        let mut perf = 0.0;
        if value > hwm {
            perf = schedule.perf_rate * (value - hwm);
            match schedule.hwm_basis {
                HwmBasis::PrePerformanceFee => {
                    hwm = value;
                    value -= perf;
                }
                HwmBasis::PostFee => {
                    value -= perf;
                    hwm = value;
                }
            }
        }
        check_positive(value, date)?;
        mgmt_fee.push(mgmt);
        perf_fee.push(perf);
        hwm_path.push(hwm);
        navs.push(value);
        prev_gross = g;
        prev_net = value;
    }
    let net = NavSeries::new(
        gross.name.clone(),
        gross.initial_capital,
        gross.calendar().clone(),
        navs,
    )?;
    Ok(FeeLedger {
        schedule: *schedule,
        mgmt_fee,
        perf_fee,
        high_water_mark: hwm_path,
        net,
    })
}

fn check_positive(value: f64, date: NaiveDate) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::FeesExhausted(date))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::nav_from_returns;
    use crate::series::tests::{rs, weekdays};
    use proptest::prelude::*;

    fn gross(path: &[f64]) -> NavSeries {
        NavSeries::new("g", 100.0, weekdays(path.len()), path.to_vec()).unwrap()
    }

    #[test]
    fn doubling_pays_ten_dollars() {
        let ledger = apply_fees(&gross(&[200.0]), &FeeSchedule::new(0.0, 0.10)).unwrap();
        assert_eq!(ledger.net.navs(), &[190.0]);
        assert_eq!(ledger.perf_fee, vec![10.0]);
        assert_eq!(ledger.high_water_mark, vec![200.0]);
    }

    #[test]
    fn no_fee_until_previous_mark_is_exceeded() {
        // 100 -> 200 (fee 10, net 190, mark 200) -> 150 -> 220.
        let ledger = apply_fees(&gross(&[200.0, 150.0, 220.0]), &FeeSchedule::new(0.0, 0.10)).unwrap();
        assert_eq!(ledger.perf_fee[1], 0.0);
        // Net tracks gross at 95%: 142.5 then 209 > 200, fee on the 9 excess.
        let pre = 220.0 * 0.95;
        assert!((ledger.perf_fee[2] - 0.1 * (pre - 200.0)).abs() < 1e-12);

        let post = FeeSchedule {
            hwm_basis: HwmBasis::PostFee,
            ..FeeSchedule::new(0.0, 0.10)
        };
        let ledger = apply_fees(&gross(&[200.0]), &post).unwrap();
        assert_eq!(ledger.high_water_mark, vec![190.0]);
    }

    #[test]
    fn zero_rates_are_identity() {
        let g = nav_from_returns(&rs("g", &[0.01, -0.03, 0.2, -0.07, 0.013]), 100.0).unwrap();
        let ledger = apply_fees(&g, &FeeSchedule::new(0.0, 0.0)).unwrap();
        assert_eq!(ledger.net.navs(), g.navs());
        assert!(ledger.mgmt_fee.iter().chain(&ledger.perf_fee).all(|&f| f == 0.0));
    }

    #[test]
    fn flat_year_of_management_fees() {
        let ledger = apply_fees(&gross(&[100.0; 252]), &FeeSchedule::new(0.01, 0.0)).unwrap();
        let oracle = 100.0 * (1.0 - 0.01f64 / 252.0).powi(252);
        assert!((ledger.net.ending_nav() - oracle).abs() < 1e-10);
        assert!((ledger.net.ending_nav() - 99.005).abs() < 5e-4);
    }

    #[test]
    fn rejects_bad_rates() {
        assert!(apply_fees(&gross(&[100.0]), &FeeSchedule::new(1.0, 0.0)).is_err());
        assert!(apply_fees(&gross(&[100.0]), &FeeSchedule::new(0.0, -0.1)).is_err());
    }

    proptest! {
        #[test]
        fn management_only_matches_closed_form(rets in prop::collection::vec(-0.05f64..0.05, 1..300), m in 0.0f64..0.5) {
            let g = nav_from_returns(&rs("g", &rets), 100.0).unwrap();
            let ledger = apply_fees(&g, &FeeSchedule::new(m, 0.0)).unwrap();
            let k = 1.0 - m / 252.0;
            for (t, (net, gr)) in ledger.net.navs().iter().zip(g.navs()).enumerate() {
                let closed = gr * k.powi(t as i32 + 1);
                prop_assert!((net - closed).abs() <= 1e-12 * closed);
            }
        }

        #[test]
        fn ledger_invariants(
            rets in prop::collection::vec(-0.05f64..0.06, 1..200),
            m in 0.0f64..0.05,
            p in 0.0f64..0.5,
            a in 0usize..200,
            b in 0usize..200,
        ) {
            let g = nav_from_returns(&rs("g", &rets), 100.0).unwrap();
            let ledger = apply_fees(&g, &FeeSchedule::new(m, p)).unwrap();
            let net = ledger.net.navs();
            let hwm = &ledger.high_water_mark;
            for t in 0..net.len() {
                prop_assert!(net[t] <= g.navs()[t] * (1.0 + 1e-14));
                prop_assert!(ledger.mgmt_fee[t] >= 0.0 && ledger.perf_fee[t] >= 0.0);
                let prev_hwm = if t == 0 { 100.0 } else { hwm[t - 1] };
                prop_assert!(hwm[t] >= prev_hwm);
                if ledger.perf_fee[t] > 0.0 {
                    prop_assert!(hwm[t] > prev_hwm);
                    // The mark sits on the day's pre-performance-fee value.
                    prop_assert!((hwm[t] - (net[t] + ledger.perf_fee[t])).abs() <= 1e-9 * hwm[t]);
                }
            }
            // Performance fees over any interval are bounded by the mark's rise.
            let (lo, hi) = (a.min(b).min(net.len() - 1), a.max(b).min(net.len() - 1));
            let start_hwm = if lo == 0 { 100.0 } else { hwm[lo - 1] };
            let fees: f64 = ledger.perf_fee[lo..=hi].iter().sum();
            prop_assert!(fees <= p * (hwm[hi] - start_hwm) * (1.0 + 1e-12) + 1e-12);
            if m > 0.0 {
                prop_assert!(net.iter().zip(g.navs()).all(|(n, g)| n < g));
            }
        }
    }
}
