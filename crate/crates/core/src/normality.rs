//! Anderson-Darling test for normality with mean and variance estimated from
//! the sample.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::ln_normal_cdf;
use crate::stats::{mean, std_dev};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AndersonDarling {
    pub n: usize,
    /// Uncorrected statistic A².
    pub a2: f64,
    /// Small-sample corrected statistic `A² (1 + 0.75/n + 2.25/n²)`.
    pub a2_star: f64,
    pub p_value: f64,
}

pub const MIN_SAMPLE: usize = 8;

pub fn anderson_darling(values: &[f64]) -> Result<AndersonDarling> {
    let n = values.len();
    if n < MIN_SAMPLE {
        return Err(Error::InsufficientData {
            needed: MIN_SAMPLE,
            got: n,
        });
    }
    let mu = mean(values);
    let sd = std_dev(values, 1);
    if !(sd > 0.0) {
        return Err(Error::Undefined {
            metric: "Anderson-Darling statistic",
            reason: "constant sample",
        });
    }
    let mut z: Vec<f64> = values.iter().map(|v| (v - mu) / sd).collect();
    z.sort_by(f64::total_cmp);
    let nf = n as f64;
    let s: f64 = (0..n)
        .map(|i| {
            let w = (2 * i + 1) as f64;
            // ln(1 - F(z)) = ln F(-z).
            w * (ln_normal_cdf(z[i]) + ln_normal_cdf(-z[n - 1 - i]))
        })
        .sum();
    let a2 = -nf - s / nf;
    let a2_star = a2 * (1.0 + 0.75 / nf + 2.25 / (nf * nf));
    Ok(AndersonDarling {
        n,
        a2,
        a2_star,
        p_value: p_value(a2_star),
    })
}

/// Piecewise exponential approximation for the estimated-parameters case.
fn p_value(a: f64) -> f64 {
    let p = if a >= 153.467 {
        0.0
    } else if a >= 0.6 {
        (1.2937 - 5.709 * a + 0.0186 * a * a).exp()
    } else if a >= 0.34 {
        (0.9177 - 4.279 * a - 1.38 * a * a).exp()
    } else if a >= 0.2 {
        1.0 - (-8.318 + 42.796 * a - 59.938 * a * a).exp()
    } else {
        1.0 - (-13.436 + 101.14 * a - 223.73 * a * a).exp()
    };
    p.clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    // Reference values from statsmodels' `normal_ad`, which implements the
    // same estimated-parameters statistic and p-value approximation.
    #[test]
    fn matches_reference_implementation() {
        let x: Vec<f64> = (0..50)
            .map(|i| ((i * 37) % 101) as f64 / 10.0 + (i as f64).sqrt())
            .collect();
        let ad = anderson_darling(&x).unwrap();
        assert!((ad.a2 - 0.187_683_353_547_100_75).abs() < 1e-12, "{}", ad.a2);
        assert!((ad.p_value - 0.898_265_678_015_936_8).abs() < 1e-12, "{}", ad.p_value);

        let bimodal: Vec<f64> = (0..100)
            .map(|i| if i < 50 { -1.0 } else { 1.0 } + 0.01 * (i as f64).sin())
            .collect();
        let ad = anderson_darling(&bimodal).unwrap();
        assert!((ad.a2 - 17.436_011_220_713_68).abs() < 1e-10, "{}", ad.a2);
        assert!(ad.p_value < 0.01);

        let quantiles: Vec<f64> = (0..30)
            .map(|i| statrs::function::erf::erfc_inv(2.0 * (1.0 - (i as f64 + 0.5) / 30.0)) * -std::f64::consts::SQRT_2)
            .collect();
        let ad = anderson_darling(&quantiles).unwrap();
        assert!((ad.a2 - 0.031_771_987_465_411_655).abs() < 1e-9, "{}", ad.a2);
        assert!((ad.p_value - 0.999_968_723_727_576_1).abs() < 1e-9);
    }

    #[test]
    fn rejects_degenerate_samples() {
        assert!(anderson_darling(&[1.0; 10]).is_err());
        assert!(anderson_darling(&[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn rejection_rate_is_calibrated_under_the_null() {
        let trials = 200;
        let rejections = (0..trials)
            .filter(|&seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let x: Vec<f64> = (0..1000).map(|_| StandardNormal.sample(&mut rng)).collect();
                anderson_darling(&x).unwrap().p_value < 0.05
            })
            .count();
        let rate = rejections as f64 / trials as f64;
        // Binomial(200, 0.05) has sd ~0.015; allow three of them.
        assert!((0.005..=0.095).contains(&rate), "rejection rate {rate}");
    }
}
