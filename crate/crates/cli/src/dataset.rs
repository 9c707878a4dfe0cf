use navstat_core::series::align_series;
use navstat_core::{ReturnSeries, TradingCalendar};
use sha2::{Digest, Sha256};

use crate::config::{hex, RunConfig};
use crate::error::{CliError, Result};
use crate::ingest::ingest_csv;

/// All inputs of one run, aligned onto a common calendar.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub competitors: Vec<ReturnSeries>,
    pub benchmarks: Vec<ReturnSeries>,
    pub universe: Vec<ReturnSeries>,
    pub risk_free: Option<ReturnSeries>,
    pub calendar: TradingCalendar,
}

impl Dataset {
    pub fn load(cfg: &RunConfig) -> Result<Self> {
        let i = &cfg.inputs;
        let load = |p: &Option<std::path::PathBuf>, kind| match p {
            Some(p) => ingest_csv(p, kind),
            None => Ok(Vec::new()),
        };
        let competitors = load(&i.competitors, i.competitors_kind)?;
        let benchmarks = load(&i.benchmarks, i.benchmarks_kind)?;
        let universe = load(&i.universe, i.universe_kind)?;
        let mut rf = load(&i.risk_free, i.risk_free_kind)?;
        if rf.len() > 1 {
            return Err(CliError::Input(format!(
                "risk-free file must hold one series, found {}",
                rf.len()
            )));
        }
        Self::from_series(competitors, benchmarks, universe, rf.pop())
    }

    pub fn from_series(
        competitors: Vec<ReturnSeries>,
        benchmarks: Vec<ReturnSeries>,
        universe: Vec<ReturnSeries>,
        risk_free: Option<ReturnSeries>,
    ) -> Result<Self> {
        let counts = [competitors.len(), benchmarks.len(), universe.len()];
        let mut all: Vec<ReturnSeries> = competitors
            .into_iter()
            .chain(benchmarks)
            .chain(universe)
            .chain(risk_free.clone())
            .collect();
        if all.is_empty() {
            return Err(CliError::Insufficient {
                command: "any".into(),
                missing: vec!["input series".into()],
            });
        }
        all = align_series(&all).map_err(|e| CliError::Input(format!("aligning inputs: {e}")))?;
        let calendar = all[0].calendar().clone();
        let risk_free = risk_free.map(|_| all.pop().expect("risk-free series present"));
        let universe = all.split_off(counts[0] + counts[1]);
        let benchmarks = all.split_off(counts[0]);
        Ok(Self {
            competitors: all,
            benchmarks,
            universe,
            risk_free,
            calendar,
        })
    }

    /// SHA-256 over every aligned series: group, name, dates and return bits.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        let groups: [(&str, &[ReturnSeries]); 4] = [
            ("competitors", &self.competitors),
            ("benchmarks", &self.benchmarks),
            ("universe", &self.universe),
            ("risk_free", self.risk_free.as_slice()),
        ];
        for d in self.calendar.dates() {
            h.update(d.to_string().as_bytes());
        }
        for (group, series) in groups {
            h.update(group.as_bytes());
            h.update((series.len() as u64).to_le_bytes());
            for s in series {
                h.update(s.name.as_bytes());
                h.update([0]);
                for r in s.returns() {
                    h.update(r.to_bits().to_le_bytes());
                }
            }
        }
        hex(&h.finalize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::NaiveDate;

    fn series(name: &str, days: &[u32], r: &[f64]) -> ReturnSeries {
        let dates = days
            .iter()
            .map(|&d| NaiveDate::from_ymd_opt(2022, 3, d).unwrap())
            .collect();
        ReturnSeries::new(name, TradingCalendar::new(dates).unwrap(), r.to_vec()).unwrap()
    }

    #[test]
    fn aligns_and_splits_groups() {
        let c = series("c", &[7, 8, 9, 10], &[0.01, 0.02, 0.03, 0.04]);
        let b = series("b", &[8, 9, 10], &[0.1, 0.2, 0.3]);
        let u = series("u", &[7, 9, 10], &[0.5, 0.6, 0.7]);
        let rf = series("rf", &[7, 8, 9, 10], &[0.0; 4]);
        let ds = Dataset::from_series(vec![c], vec![b], vec![u], Some(rf)).unwrap();
        assert_eq!(ds.calendar.len(), 2);
        assert_eq!(ds.competitors[0].returns(), &[0.03, 0.04]);
        assert_eq!(ds.benchmarks[0].returns(), &[0.2, 0.3]);
        assert_eq!(ds.universe[0].returns(), &[0.6, 0.7]);
        assert_eq!(ds.risk_free.as_ref().unwrap().name, "rf");
        assert_eq!(ds.digest(), ds.clone().digest());
    }
}
