//! Seeded synthetic dataset used by the golden end-to-end run.

use std::fmt::Write as _;
use std::path::Path;

use chrono::{Datelike, NaiveDate, Weekday};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::Result;
use crate::format::write_file;

pub const FIXTURE_SEED: u64 = 20220307;
pub const FIXTURE_DAYS: usize = 238;
pub const FIXTURE_COMPETITORS: usize = 5;
pub const FIXTURE_UNIVERSE: usize = 20;

pub const BENCHMARK_NAMES: [&str; 7] = ["eq_weight", "equity", "rates", "gold", "crypto", "tech", "commodity"];

/// `n` consecutive weekdays starting at `start`.
pub fn weekdays_from(start: NaiveDate, n: usize) -> Vec<NaiveDate> {
    start
        .iter_days()
        .filter(|d| !matches!(d.weekday(), Weekday::Sat | Weekday::Sun))
        .take(n)
        .collect()
}

pub struct Fixture {
    pub dates: Vec<NaiveDate>,
    /// Prices on the day before `dates[0]` followed by one per date.
    pub universe_prices: Vec<Vec<f64>>,
    pub benchmarks: Vec<Vec<f64>>,
    pub competitors: Vec<Vec<f64>>,
    pub risk_free: Vec<f64>,
}

pub fn generate(seed: u64) -> Fixture {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = NaiveDate::from_ymd_opt(2022, 3, 7).expect("valid date");
    let dates = weekdays_from(start, FIXTURE_DAYS);
    let z = Normal::new(0.0, 1.0).expect("unit normal");
    let mut draw = |n: usize, mu: f64, sd: f64| -> Vec<f64> { (0..n).map(|_| mu + sd * z.sample(&mut rng)).collect() };

    let market = draw(FIXTURE_DAYS, 0.0, 0.011);
    let universe_returns: Vec<Vec<f64>> = (0..FIXTURE_UNIVERSE)
        .map(|i| {
            let beta = 0.5 + 0.05 * i as f64;
            let idio = draw(FIXTURE_DAYS, -0.0002, 0.012);
            market.iter().zip(idio).map(|(m, e)| beta * m + e).collect()
        })
        .collect();
    let universe_prices = universe_returns
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut p = 20.0 + 5.0 * i as f64;
            let mut out = vec![p];
            for x in r {
                p *= 1.0 + x;
                out.push(p);
            }
            out
        })
        .collect();

    let eq_weight: Vec<f64> = (0..FIXTURE_DAYS)
        .map(|t| universe_returns.iter().map(|r| r[t]).sum::<f64>() / FIXTURE_UNIVERSE as f64)
        .collect();
    let mut benchmarks = vec![eq_weight];
    for (mu, sd, beta) in [
        (-0.0003, 0.006, 1.0),
        (-0.0004, 0.005, -0.2),
        (0.0001, 0.009, 0.1),
        (-0.002, 0.035, 1.5),
        (-0.0008, 0.010, 1.4),
        (0.0005, 0.014, 0.3),
    ] {
        let e = draw(FIXTURE_DAYS, mu, sd);
        benchmarks.push(market.iter().zip(e).map(|(m, x)| beta * m + x).collect());
    }

    let competitors = (0..FIXTURE_COMPETITORS)
        .map(|c| {
            let noise = draw(FIXTURE_DAYS, 0.0001 * c as f64 - 0.0002, 0.004 + 0.003 * c as f64);
            let loads: Vec<f64> = (0..BENCHMARK_NAMES.len())
                .map(|j| {
                    if (j + c) % 3 == 0 {
                        0.4
                    } else {
                        0.1 * (c as f64 - 2.0) / 2.0
                    }
                })
                .collect();
            (0..FIXTURE_DAYS)
                .map(|t| {
                    let f: f64 = loads.iter().zip(&benchmarks).map(|(l, b)| l * b[t]).sum();
                    (f + noise[t]).max(-0.5)
                })
                .collect()
        })
        .collect();
    let risk_free = (0..FIXTURE_DAYS).map(|t| 0.00002 + 0.0000001 * t as f64).collect();

    Fixture {
        dates,
        universe_prices,
        benchmarks,
        competitors,
        risk_free,
    }
}

fn csv_text(dates: &[NaiveDate], names: &[String], columns: &[Vec<f64>], decimals: usize) -> String {
    let mut s = String::from("date");
    for n in names {
        s.push(',');
        s.push_str(n);
    }
    s.push('\n');
    for (t, d) in dates.iter().enumerate() {
        let _ = write!(s, "{d}");
        for c in columns {
            let _ = write!(s, ",{:.*}", decimals, c[t]);
        }
        s.push('\n');
    }
    s
}

/// Writes `competitors.csv`, `benchmarks.csv`, `universe.csv` (prices) and
/// `risk_free.csv` into `dir`.
pub fn write_fixture(dir: &Path, seed: u64) -> Result<()> {
    let fx = generate(seed);
    std::fs::create_dir_all(dir).map_err(|e| crate::error::CliError::io(dir, e))?;

    let comp_names: Vec<String> = (1..=FIXTURE_COMPETITORS).map(|i| format!("team_{i:02}")).collect();
    write_file(
        &dir.join("competitors.csv"),
        &csv_text(&fx.dates, &comp_names, &fx.competitors, 8),
    )?;

    let bench_names: Vec<String> = BENCHMARK_NAMES.iter().map(|s| s.to_string()).collect();
    write_file(
        &dir.join("benchmarks.csv"),
        &csv_text(&fx.dates, &bench_names, &fx.benchmarks, 8),
    )?;

    let friday_before = NaiveDate::from_ymd_opt(2022, 3, 4).expect("valid date");
    let price_dates: Vec<NaiveDate> = std::iter::once(friday_before).chain(fx.dates.iter().copied()).collect();
    let asset_names: Vec<String> = (1..=FIXTURE_UNIVERSE).map(|i| format!("asset_{i:02}")).collect();
    write_file(
        &dir.join("universe.csv"),
        &csv_text(&price_dates, &asset_names, &fx.universe_prices, 6),
    )?;

    write_file(
        &dir.join("risk_free.csv"),
        &csv_text(&fx.dates, &["rf".to_string()], std::slice::from_ref(&fx.risk_free), 8),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_and_determinism() {
        let a = generate(FIXTURE_SEED);
        let b = generate(FIXTURE_SEED);
        assert_eq!(a.dates.len(), FIXTURE_DAYS);
        assert_eq!(a.dates[0].weekday(), Weekday::Mon);
        assert_eq!(a.competitors.len(), FIXTURE_COMPETITORS);
        assert_eq!(a.benchmarks.len(), BENCHMARK_NAMES.len());
        assert_eq!(a.universe_prices[0].len(), FIXTURE_DAYS + 1);
        assert_eq!(a.competitors, b.competitors);
        assert!(a.universe_prices.iter().flatten().all(|&p| p > 0.0));
    }
}
