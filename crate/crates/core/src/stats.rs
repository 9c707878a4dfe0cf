//! Small descriptive-statistics helpers shared by the analytics modules.

use serde::Serialize;

use crate::error::{Error, Result};

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Standard deviation; `ddof` is 1 for the sample estimator, 0 for population.
pub fn std_dev(xs: &[f64], ddof: usize) -> f64 {
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m).powi(2)).sum();
    (ss / (xs.len() - ddof) as f64).sqrt()
}

/// Empirical quantile of sorted data, linear interpolation between order
/// statistics at position `q * (n - 1)`.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    let h = q * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        return sorted[lo];
    }
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn quantile(xs: &[f64], q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParameter(format!("quantile level {q} outside [0, 1]")));
    }
    if xs.is_empty() {
        return Err(Error::Empty("quantile of empty sample".into()));
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(quantile_sorted(&v, q))
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let mx = mean(xs);
    let my = mean(ys);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
    }
    sxy / (sxx * syy).sqrt()
}

/// Six-number summary in the style of R's `summary()`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub mean: f64,
    pub q75: f64,
    pub max: f64,
    /// Values that entered the summary.
    pub count: usize,
    /// Values skipped because they were absent.
    pub ignored: usize,
}

impl Summary {
    /// Summarizes the present values; `None` entries are counted as ignored.
    pub fn from_options<I>(values: I) -> Option<Summary>
    where
        I: IntoIterator<Item = Option<f64>>,
    {
        let mut present = Vec::new();
        let mut ignored = 0;
        for v in values {
            match v {
                Some(x) if x.is_finite() => present.push(x),
                _ => ignored += 1,
            }
        }
        if present.is_empty() {
            return None;
        }
        present.sort_by(f64::total_cmp);
        Some(Summary {
            min: present[0],
            q25: quantile_sorted(&present, 0.25),
            median: quantile_sorted(&present, 0.5),
            mean: mean(&present),
            q75: quantile_sorted(&present, 0.75),
            max: present[present.len() - 1],
            count: present.len(),
            ignored,
        })
    }

    pub fn from_values(values: &[f64]) -> Option<Summary> {
        Self::from_options(values.iter().map(|&v| Some(v)))
    }
}
