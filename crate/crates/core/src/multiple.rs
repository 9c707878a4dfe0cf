//! Benjamini-Hochberg false-discovery-rate adjustment.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BhMode {
    /// `min_{r' >= r} p(r') * m / r'`, capped at 1.
    #[default]
    StepUp,
    /// `p(r) * m / r` capped at 1, without the running minimum. Adjusted
    /// values may then be non-monotone in rank; the significance verdict is
    /// still the step-up one.
    MultiplyOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BhEntry {
    pub raw_p: f64,
    /// 1-based rank of `raw_p` in ascending order (ties by input position).
    pub rank: usize,
    pub adjusted_p: f64,
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BhResult {
    pub level: f64,
    pub m: usize,
    pub mode: BhMode,
    /// One entry per input p-value, in input order.
    pub entries: Vec<BhEntry>,
}

impl BhResult {
    /// Critical line `r * q / m` for ranks `1..=m`.
    pub fn cutoff_line(&self) -> Vec<f64> {
        (1..=self.m).map(|r| self.level * (r as f64 / self.m as f64)).collect()
    }

    pub fn significant_count(&self) -> usize {
        self.entries.iter().filter(|e| e.significant).count()
    }

    /// Entries sorted by rank.
    pub fn by_rank(&self) -> Vec<BhEntry> {
        let mut v = self.entries.clone();
        v.sort_by_key(|e| e.rank);
        v
    }
}

pub fn bh_adjust(pvalues: &[f64], level: f64, mode: BhMode) -> Result<BhResult> {
    if pvalues.is_empty() {
        return Err(Error::Empty("no p-values to adjust".into()));
    }
    if let Some(p) = pvalues.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::InvalidParameter(format!("p-value {p} outside [0, 1]")));
    }
    if !(level > 0.0 && level <= 1.0) {
        return Err(Error::InvalidParameter(format!("BH level {level} outside (0, 1]")));
    }
    let m = pvalues.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| pvalues[a].total_cmp(&pvalues[b]).then(a.cmp(&b)));

    let scaled: Vec<f64> = order
        .iter()
        .enumerate()
        .map(|(i, &idx)| {
            let p = pvalues[idx];
            if i + 1 == m {
                p
            } else {
                (p * m as f64 / (i + 1) as f64).min(1.0)
            }
        })
        .collect();
    let mut step_up = scaled.clone();
    for i in (0..m.saturating_sub(1)).rev() {
        step_up[i] = step_up[i].min(step_up[i + 1]);
    }

    let mut entries = vec![
        BhEntry {
            raw_p: 0.0,
            rank: 0,
            adjusted_p: 0.0,
            significant: false,
        };
        m
    ];
    for (i, &idx) in order.iter().enumerate() {
        let adjusted_p = match mode {
            BhMode::StepUp => step_up[i],
            BhMode::MultiplyOnly => scaled[i],
        };
        entries[idx] = BhEntry {
            raw_p: pvalues[idx],
            rank: i + 1,
            adjusted_p,
            significant: step_up[i] <= level,
        };
    }
    Ok(BhResult {
        level,
        m,
        mode,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Textbook step-up: reject ranks 1..=k for the largest k with
    /// p(k) <= k q / m.
    fn step_up_verdicts(p: &[f64], q: f64) -> Vec<bool> {
        let m = p.len();
        let mut sorted: Vec<(f64, usize)> = p.iter().copied().zip(0..).collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let k = (1..=m)
            .filter(|&k| sorted[k - 1].0 <= k as f64 * q / m as f64)
            .max()
            .unwrap_or(0);
        let mut out = vec![false; m];
        for (_, idx) in &sorted[..k] {
            out[*idx] = true;
        }
        out
    }

    #[test]
    fn single_hypothesis_is_unchanged() {
        let r = bh_adjust(&[0.03], 0.05, BhMode::StepUp).unwrap();
        assert_eq!(r.entries[0].adjusted_p, 0.03);
        assert!(r.entries[0].significant);
    }

    #[test]
    fn hand_applied_example() {
        let r = bh_adjust(&[0.001, 0.02, 0.04], 0.05, BhMode::StepUp).unwrap();
        let adj: Vec<f64> = r.entries.iter().map(|e| e.adjusted_p).collect();
        for (a, b) in adj.iter().zip([0.003, 0.03, 0.04]) {
            assert!((a - b).abs() < 1e-15);
        }
        assert_eq!(r.significant_count(), 3);
        assert_eq!(r.cutoff_line(), vec![0.05 / 3.0, 0.1 / 3.0, 0.05]);
    }

    #[test]
    fn multiply_only_can_be_non_monotone() {
        // Scaled values 0.04 * 3 / 2 = 0.06 > 0.045 * 3 / 3 = 0.045.
        let p = [0.01, 0.04, 0.045];
        let lit = bh_adjust(&p, 0.05, BhMode::MultiplyOnly).unwrap();
        let su = bh_adjust(&p, 0.05, BhMode::StepUp).unwrap();
        assert!((lit.entries[1].adjusted_p - 0.06).abs() < 1e-15);
        assert!((su.entries[1].adjusted_p - 0.045).abs() < 1e-15);
        for (a, b) in lit.entries.iter().zip(&su.entries) {
            assert_eq!(a.significant, b.significant);
        }
    }

    #[test]
    fn rejects_invalid_input() {
        assert!(bh_adjust(&[1.2], 0.05, BhMode::StepUp).is_err());
        assert!(bh_adjust(&[-0.1], 0.05, BhMode::StepUp).is_err());
        assert!(bh_adjust(&[], 0.05, BhMode::StepUp).is_err());
    }

    proptest! {
        #[test]
        fn adjustment_properties(p in prop::collection::vec(0.0f64..=1.0, 1..200), q in 0.001f64..0.5) {
            let r = bh_adjust(&p, q, BhMode::StepUp).unwrap();
            let ranked = r.by_rank();
            for w in ranked.windows(2) {
                prop_assert!(w[0].adjusted_p <= w[1].adjusted_p);
            }
            let last = ranked.last().unwrap();
            prop_assert_eq!(last.adjusted_p, last.raw_p);
            for e in &r.entries {
                prop_assert!((0.0..=1.0).contains(&e.adjusted_p));
                prop_assert!(e.adjusted_p >= e.raw_p);
            }
            let verdicts: Vec<bool> = r.entries.iter().map(|e| e.significant).collect();
            prop_assert_eq!(verdicts, step_up_verdicts(&p, q));
            let lit = bh_adjust(&p, q, BhMode::MultiplyOnly).unwrap();
            for (a, b) in lit.entries.iter().zip(&r.entries) {
                prop_assert_eq!(a.significant, b.significant);
            }
        }
    }
}
