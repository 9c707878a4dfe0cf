//! Random equal-weight portfolios drawn from an asset universe and redrawn
//! at each rebalance date.
//!
//! A rebalance dated `d` sets the holdings that earn the returns of every
//! trading day strictly after `d` up to the next rebalance date. Between
//! rebalances positions are either held (weights drift with relative
//! returns) or re-equalized daily.
//!
//! Simulation `i` draws from a ChaCha8 stream keyed by `(master_seed, i)`,
//! so any simulation can be regenerated alone and results do not depend on
//! scheduling or on `num_sims`.

use chrono::NaiveDate;
use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exec::Parallelism;
use crate::metrics::{cohort_summary, metrics_report, AnnualizationConfig, CohortSummary, MetricsReport};
use crate::series::{NavSeries, ReturnSeries, TradingCalendar, DEFAULT_INITIAL_CAPITAL};

/// The twelve portfolio selection dates of the 2022-23 competition.
pub fn competition_rebalance_dates() -> Vec<NaiveDate> {
    [
        (2022, 3, 6),
        (2022, 4, 3),
        (2022, 5, 1),
        (2022, 5, 29),
        (2022, 6, 26),
        (2022, 7, 24),
        (2022, 8, 21),
        (2022, 9, 18),
        (2022, 10, 16),
        (2022, 11, 13),
        (2022, 12, 11),
        (2023, 1, 8),
    ]
    .into_iter()
    .map(|(y, m, d)| NaiveDate::from_ymd_opt(y, m, d).expect("valid date"))
    .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HoldingMode {
    #[default]
    BuyAndHold,
    DailyRebalance,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationConfig {
    pub universe: Vec<ReturnSeries>,
    pub portfolio_size: usize,
    pub rebalance_dates: Vec<NaiveDate>,
    pub num_sims: usize,
    pub master_seed: u64,
    pub holding: HoldingMode,
    pub initial_capital: f64,
    pub annualization: AnnualizationConfig,
}

impl SimulationConfig {
    pub fn new(universe: Vec<ReturnSeries>, master_seed: u64) -> Self {
        Self {
            universe,
            portfolio_size: 10,
            rebalance_dates: competition_rebalance_dates(),
            num_sims: 10_000,
            master_seed,
            holding: HoldingMode::BuyAndHold,
            initial_capital: DEFAULT_INITIAL_CAPITAL,
            annualization: AnnualizationConfig::default(),
        }
    }

    /// SHA-256 over every input that affects the simulated paths.
    pub fn config_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(b"navstat-simulation-v1");
        h.update((self.portfolio_size as u64).to_le_bytes());
        h.update((self.num_sims as u64).to_le_bytes());
        h.update(self.master_seed.to_le_bytes());
        h.update([self.holding as u8]);
        h.update(self.initial_capital.to_bits().to_le_bytes());
        h.update(self.annualization.periods_per_year.to_le_bytes());
        h.update([self.annualization.sd_mode as u8]);
        for d in &self.rebalance_dates {
            h.update(d.to_string().as_bytes());
        }
        for s in &self.universe {
            h.update(s.name.as_bytes());
            h.update([0]);
            for d in s.calendar().dates() {
                h.update(d.to_string().as_bytes());
            }
            for r in s.returns() {
                h.update(r.to_bits().to_le_bytes());
            }
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Equal-weight selection of distinct asset indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Selection {
    /// Ascending asset indices.
    pub ids: Vec<usize>,
    pub weight: f64,
}

/// Uniform draw of `k` distinct assets out of `universe_size`, each weighted
/// `1/k`.
pub fn sample_portfolio<R: Rng + ?Sized>(rng: &mut R, universe_size: usize, k: usize) -> Result<Selection> {
    if k > universe_size {
        return Err(Error::PortfolioTooLarge {
            k,
            universe: universe_size,
        });
    }
    if k == 0 {
        return Err(Error::InvalidParameter("portfolio size must be positive".into()));
    }
    let mut ids = sample(rng, universe_size, k).into_vec();
    ids.sort_unstable();
    let weight = 1.0 / k as f64;
    let total: f64 = std::iter::repeat_n(weight, k).sum();
    debug_assert!((total - 1.0).abs() <= k as f64 * f64::EPSILON);
    Ok(Selection { ids, weight })
}

/// Half-open calendar index ranges, one per rebalance date.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HoldingSchedule {
    pub periods: Vec<(usize, usize)>,
}

impl HoldingSchedule {
    pub fn new(calendar: &TradingCalendar, dates: &[NaiveDate]) -> Result<Self> {
        if dates.is_empty() {
            return Err(Error::Empty("no rebalance dates".into()));
        }
        TradingCalendar::new(dates.to_vec())?;
        let starts: Vec<usize> = dates.iter().map(|d| calendar.first_index_after(*d)).collect();
        let mut periods = Vec::with_capacity(dates.len());
        for (i, &start) in starts.iter().enumerate() {
            let end = starts.get(i + 1).copied().unwrap_or(calendar.len());
            if start >= end {
                return Err(Error::EmptyHoldingPeriod(dates[i]));
            }
            periods.push((start, end));
        }
        Ok(Self { periods })
    }

    pub fn start(&self) -> usize {
        self.periods[0].0
    }

    pub fn end(&self) -> usize {
        self.periods[self.periods.len() - 1].1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Simulation {
    pub index: usize,
    /// Holdings for each holding period.
    pub selections: Vec<Selection>,
    pub nav: NavSeries,
    pub report: MetricsReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub master_seed: u64,
    pub config_hash: String,
    pub holding: HoldingMode,
    pub num_sims: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulatedCohort {
    pub schedule: HoldingSchedule,
    pub simulations: Vec<Simulation>,
    pub summary: CohortSummary,
    pub provenance: Provenance,
}

impl SimulatedCohort {
    pub fn max_mdd(&self) -> f64 {
        self.simulations.iter().map(|s| s.report.mdd).fold(0.0, f64::max)
    }

    pub fn navs(&self) -> Vec<NavSeries> {
        self.simulations.iter().map(|s| s.nav.clone()).collect()
    }

    /// How often each asset was drawn in holding period `period`.
    pub fn inclusion_counts(&self, period: usize, universe_size: usize) -> Vec<usize> {
        let mut counts = vec![0; universe_size];
        for s in &self.simulations {
            for &id in &s.selections[period].ids {
                counts[id] += 1;
            }
        }
        counts
    }
}

fn rng_for(master_seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index as u64);
    rng
}

struct Prepared<'a> {
    cfg: &'a SimulationConfig,
    schedule: HoldingSchedule,
    calendar: TradingCalendar,
}

fn prepare(cfg: &SimulationConfig) -> Result<Prepared<'_>> {
    cfg.annualization.validate()?;
    if cfg.num_sims == 0 {
        return Err(Error::InvalidParameter("number of simulations must be positive".into()));
    }
    let Some(first) = cfg.universe.first() else {
        return Err(Error::Empty("asset universe".into()));
    };
    if cfg.portfolio_size > cfg.universe.len() {
        return Err(Error::PortfolioTooLarge {
            k: cfg.portfolio_size,
            universe: cfg.universe.len(),
        });
    }
    if cfg.portfolio_size == 0 {
        return Err(Error::InvalidParameter("portfolio size must be positive".into()));
    }
    let full = first.calendar();
    if let Some(bad) = cfg.universe.iter().find(|s| s.calendar() != full) {
        return Err(Error::CalendarMismatch(format!(
            "universe member {} does not share the calendar of {}",
            bad.name, first.name
        )));
    }
    let schedule = HoldingSchedule::new(full, &cfg.rebalance_dates)?;
    let calendar = full.slice(schedule.start(), schedule.end());
    Ok(Prepared {
        cfg,
        schedule,
        calendar,
    })
}

fn simulate_one(p: &Prepared<'_>, index: usize) -> Result<Simulation> {
    let cfg = p.cfg;
    let mut rng = rng_for(cfg.master_seed, index);
    let mut selections = Vec::with_capacity(p.schedule.periods.len());
    let mut navs = Vec::with_capacity(p.calendar.len());
    let mut nav = cfg.initial_capital;
    for &(start, end) in &p.schedule.periods {
        let sel = sample_portfolio(&mut rng, cfg.universe.len(), cfg.portfolio_size)?;
        let assets: Vec<&[f64]> = sel.ids.iter().map(|&i| cfg.universe[i].returns()).collect();
        match cfg.holding {
            HoldingMode::BuyAndHold => {
                let mut values = vec![sel.weight; assets.len()];
                for t in start..end {
                    let before: f64 = values.iter().sum();
                    for (v, a) in values.iter_mut().zip(&assets) {
                        *v *= 1.0 + a[t];
                    }
                    let after: f64 = values.iter().sum();
                    nav *= after / before;
                    navs.push(nav);
                }
            }
            HoldingMode::DailyRebalance => {
                for t in start..end {
                    let r: f64 = assets.iter().map(|a| sel.weight * a[t]).sum();
                    nav *= 1.0 + r;
                    navs.push(nav);
                }
            }
        }
        selections.push(sel);
    }
    let nav = NavSeries::new(format!("sim_{index:05}"), cfg.initial_capital, p.calendar.clone(), navs)?;
    let report = metrics_report(&nav.to_returns(), cfg.initial_capital, &cfg.annualization)?;
    Ok(Simulation {
        index,
        selections,
        nav,
        report,
    })
}

/// Regenerates a single simulation of a cohort.
pub fn simulate_one_path(cfg: &SimulationConfig, index: usize) -> Result<Simulation> {
    simulate_one(&prepare(cfg)?, index)
}

pub fn simulate_cohort(cfg: &SimulationConfig, par: Parallelism) -> Result<SimulatedCohort> {
    let prepared = prepare(cfg)?;
    let simulations = par
        .map_range(cfg.num_sims, |i| simulate_one(&prepared, i))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let reports: Vec<MetricsReport> = simulations.iter().map(|s| s.report.clone()).collect();
    let summary = cohort_summary(&reports)?;
    Ok(SimulatedCohort {
        schedule: prepared.schedule,
        simulations,
        summary,
        provenance: Provenance {
            master_seed: cfg.master_seed,
            config_hash: cfg.config_hash(),
            holding: cfg.holding,
            num_sims: cfg.num_sims,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::nav_from_returns;
    use crate::series::tests::weekdays;
    use crate::special::chi_square_sf;
    use proptest::prelude::*;
    use rand::Rng;

    fn universe(size: usize, n: usize, seed: u64) -> Vec<ReturnSeries> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cal = weekdays(n);
        (0..size)
            .map(|i| {
                let r = (0..n).map(|_| rng.random_range(-0.03..0.031)).collect();
                ReturnSeries::new(format!("a{i:03}"), cal.clone(), r).unwrap()
            })
            .collect()
    }

    fn small_config(u: Vec<ReturnSeries>, seed: u64, sims: usize) -> SimulationConfig {
        SimulationConfig {
            num_sims: sims,
            ..SimulationConfig::new(u, seed)
        }
    }

    #[test]
    fn sampling_contract() {
        let mut a = rng_for(42, 0);
        let mut b = rng_for(42, 0);
        let s1 = sample_portfolio(&mut a, 100, 10).unwrap();
        let s2 = sample_portfolio(&mut b, 100, 10).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.ids.len(), 10);
        assert!(s1.ids.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(s1.weight, 0.1);

        let all = sample_portfolio(&mut a, 7, 7).unwrap();
        assert_eq!(all.ids, (0..7).collect::<Vec<_>>());
        assert_eq!(all.weight, 1.0 / 7.0);

        assert_eq!(
            sample_portfolio(&mut a, 5, 10),
            Err(Error::PortfolioTooLarge { k: 10, universe: 5 })
        );
    }

    #[test]
    fn schedule_from_competition_dates() {
        let cal = weekdays(238);
        let s = HoldingSchedule::new(&cal, &competition_rebalance_dates()).unwrap();
        assert_eq!(s.periods.len(), 12);
        assert_eq!(s.start(), 0);
        assert_eq!(s.end(), 238);
        // Sunday 2022-04-03: holdings change from Monday 2022-04-04.
        assert_eq!(
            cal.dates()[s.periods[1].0],
            NaiveDate::from_ymd_opt(2022, 4, 4).unwrap()
        );
        for w in s.periods.windows(2) {
            assert_eq!(w[0].1, w[1].0);
        }
        let d = NaiveDate::from_ymd_opt(2022, 3, 12).unwrap();
        let e = NaiveDate::from_ymd_opt(2022, 3, 13).unwrap();
        assert_eq!(HoldingSchedule::new(&cal, &[d, e]), Err(Error::EmptyHoldingPeriod(d)));
    }

    #[test]
    fn single_simulation_matches_hand_compounding() {
        let u = universe(20, 238, 9);
        let cfg = SimulationConfig {
            portfolio_size: 4,
            ..small_config(u.clone(), 77, 1)
        };
        let cohort = simulate_cohort(&cfg, Parallelism::Sequential).unwrap();
        let sim = &cohort.simulations[0];
        // Independent route: per-period buy-and-hold growth of each asset.
        let mut nav = 100.0;
        let mut expected = Vec::new();
        for (sel, &(start, end)) in sim.selections.iter().zip(&cohort.schedule.periods) {
            let base = nav;
            for t in start..end {
                let value: f64 = sel
                    .ids
                    .iter()
                    .map(|&i| 0.25 * u[i].returns()[start..=t].iter().map(|r| 1.0 + r).product::<f64>())
                    .sum();
                nav = base * value;
                expected.push(nav);
            }
        }
        for (a, b) in sim.nav.navs().iter().zip(&expected) {
            assert!((a - b).abs() <= 1e-12 * b, "{a} vs {b}");
        }
    }

    #[test]
    fn identical_universe_gives_identical_paths() {
        let base = universe(1, 238, 3).remove(0);
        let u: Vec<ReturnSeries> = (0..30).map(|i| base.clone().with_name(format!("c{i}"))).collect();
        let cohort = simulate_cohort(&small_config(u, 5, 50), Parallelism::Parallel).unwrap();
        let single = nav_from_returns(&base, 100.0).unwrap();
        let first = cohort.simulations[0].nav.navs().to_vec();
        for s in &cohort.simulations {
            assert_eq!(s.nav.navs(), &first[..]);
        }
        for (a, b) in first.iter().zip(single.navs()) {
            assert!((a - b).abs() <= 1e-12 * b);
        }
    }

    #[test]
    fn daily_rebalance_mode_uses_equal_weights() {
        let u = universe(10, 238, 4);
        let cfg = SimulationConfig {
            holding: HoldingMode::DailyRebalance,
            portfolio_size: 10,
            ..small_config(u.clone(), 1, 1)
        };
        let sim = simulate_one_path(&cfg, 0).unwrap();
        let mean_r: Vec<f64> = (0..238)
            .map(|t| u.iter().map(|a| a.returns()[t]).sum::<f64>() / 10.0)
            .collect();
        let oracle = mean_r.iter().fold(100.0, |acc, r| acc * (1.0 + r));
        assert!((sim.nav.ending_nav() - oracle).abs() < 1e-10);
    }

    #[test]
    fn deterministic_under_any_scheduling() {
        let u = universe(30, 238, 11);
        let cfg = small_config(u, 2024, 64);
        let seq = simulate_cohort(&cfg, Parallelism::Sequential).unwrap();
        let par = simulate_cohort(&cfg, Parallelism::Parallel).unwrap();
        assert_eq!(seq, par);
        assert_eq!(simulate_one_path(&cfg, 17).unwrap(), seq.simulations[17]);
        // Growing the cohort leaves earlier simulations untouched.
        let more = simulate_cohort(
            &SimulationConfig {
                num_sims: 80,
                ..cfg.clone()
            },
            Parallelism::Parallel,
        )
        .unwrap();
        assert_eq!(&more.simulations[..64], &seq.simulations[..]);
        assert_ne!(more.provenance.config_hash, seq.provenance.config_hash);
    }

    #[test]
    fn inclusion_frequency_is_uniform() {
        let u = universe(40, 238, 12);
        let cohort = simulate_cohort(&small_config(u, 99, 2000), Parallelism::Parallel).unwrap();
        let expected = 2000.0 * 10.0 / 40.0;
        for p in 0..12 {
            let counts = cohort.inclusion_counts(p, 40);
            assert_eq!(counts.iter().sum::<usize>(), 2000 * 10);
            let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
            assert!(chi_square_sf(chi2, 39.0) > 0.01, "period {p}: chi2 {chi2}");
        }
    }

    #[test]
    fn rejects_bad_configs() {
        let u = universe(5, 238, 1);
        assert!(matches!(
            simulate_cohort(&small_config(u.clone(), 1, 1), Parallelism::Sequential),
            Err(Error::PortfolioTooLarge { .. })
        ));
        let mut mixed = universe(12, 238, 1);
        mixed.push(universe(1, 200, 2).remove(0));
        assert!(matches!(
            simulate_cohort(&small_config(mixed, 1, 1), Parallelism::Sequential),
            Err(Error::CalendarMismatch(_))
        ));
        assert!(simulate_cohort(&small_config(universe(12, 238, 1), 1, 0), Parallelism::Sequential).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn holdings_are_k_distinct_convex_weights(seed in any::<u64>(), k in 1usize..12) {
            let u = universe(12, 238, 5);
            let cfg = SimulationConfig { portfolio_size: k, ..small_config(u.clone(), seed, 4) };
            let cohort = simulate_cohort(&cfg, Parallelism::Sequential).unwrap();
            for s in &cohort.simulations {
                for (sel, &(start, end)) in s.selections.iter().zip(&cohort.schedule.periods) {
                    prop_assert_eq!(sel.ids.len(), k);
                    prop_assert!(sel.ids.windows(2).all(|w| w[0] < w[1]));
                    let total: f64 = std::iter::repeat_n(sel.weight, k).sum();
                    prop_assert!((total - 1.0).abs() <= 1e-15 * k as f64);
                    // Daily portfolio return lies between the held assets' returns.
                    for t in start..end {
                        let r = s.nav.navs()[t] / if t == 0 { 100.0 } else { s.nav.navs()[t - 1] } - 1.0;
                        let lo = sel.ids.iter().map(|&i| u[i].returns()[t]).fold(f64::INFINITY, f64::min);
                        let hi = sel.ids.iter().map(|&i| u[i].returns()[t]).fold(f64::NEG_INFINITY, f64::max);
                        prop_assert!(r >= lo - 1e-12 && r <= hi + 1e-12);
                    }
                }
            }
        }
    }
}
