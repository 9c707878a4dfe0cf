//! Excess-return factor regressions, alpha inference and cohort tables.
//!
//! The model is `r_t - rf_t = alpha + sum_j beta_j (f_jt - rf_t) + e_t`,
//! solved by Householder QR. The appraisal ratio is `alpha / sd(e)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Parallelism;
use crate::multiple::{bh_adjust, BhMode, BhResult};
use crate::normality::{anderson_darling, AndersonDarling};
use crate::series::{ReturnSeries, TradingCalendar};
use crate::special::student_t_two_sided_p;
use crate::stats::{std_dev, Summary};

/// A column whose QR pivot falls below this fraction of its own norm is
/// treated as collinear with the preceding columns. Roughly, panels with a
/// condition number beyond 1e10 are rejected.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Fits whose residual norm is below this fraction of the response norm are
/// exact and carry no inference.
pub const DEGENERATE_TOLERANCE: f64 = 1e-12;

pub const COMPETITION_TRADING_DAYS: u32 = 238;

#[derive(Debug, Clone, PartialEq)]
pub struct FactorPanel {
    calendar: TradingCalendar,
    names: Vec<String>,
    factors: Vec<Vec<f64>>,
    risk_free: Vec<f64>,
}

impl FactorPanel {
    /// Builds a panel from factor series sharing one calendar; a missing
    /// risk-free series means a zero rate.
    pub fn new(factors: &[ReturnSeries], risk_free: Option<&ReturnSeries>) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::Empty("factor panel needs at least one factor".into()));
        };
        let calendar = first.calendar().clone();
        for f in factors.iter().chain(risk_free) {
            if f.calendar() != &calendar {
                return Err(Error::CalendarMismatch(format!(
                    "{} does not share the factor calendar",
                    f.name
                )));
            }
        }
        Ok(Self {
            names: factors.iter().map(|f| f.name.clone()).collect(),
            factors: factors.iter().map(|f| f.returns().to_vec()).collect(),
            risk_free: risk_free.map_or_else(|| vec![0.0; calendar.len()], |r| r.returns().to_vec()),
            calendar,
        })
    }

    pub fn calendar(&self) -> &TradingCalendar {
        &self.calendar
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// Design matrix columns: intercept, then excess factor returns.
    fn design(&self) -> Vec<Vec<f64>> {
        let n = self.calendar.len();
        let mut cols = Vec::with_capacity(self.factors.len() + 1);
        cols.push(vec![1.0; n]);
        for f in &self.factors {
            cols.push(f.iter().zip(&self.risk_free).map(|(x, rf)| x - rf).collect());
        }
        cols
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaInference {
    pub t_stat: f64,
    pub p_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorModelFit {
    pub name: String,
    pub n: usize,
    pub dof: usize,
    /// Daily intercept.
    pub alpha: f64,
    pub betas: Vec<f64>,
    pub factor_names: Vec<String>,
    /// Residual standard deviation with `n - J - 1` degrees of freedom.
    pub resid_sd: f64,
    pub alpha_se: f64,
    /// Standard errors of `[alpha, beta_1, ..]`.
    pub coef_se: Vec<f64>,
    /// Sample standard deviation of the excess returns themselves.
    pub excess_return_sd: f64,
    pub residuals: Vec<f64>,
    /// Absent for exact fits.
    pub ar_daily: Option<f64>,
    pub inference: Option<AlphaInference>,
}

impl FactorModelFit {
    pub fn is_degenerate(&self) -> bool {
        self.inference.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnualizedAlpha {
    pub trading_days: u32,
    pub alpha_annualized: f64,
    /// `alpha_annualized / (resid_sd * sqrt(days))`; absent for exact fits.
    pub ar_annualized: Option<f64>,
    /// Same numerator over the annualized sd of excess returns.
    pub ar_annualized_return_sd: Option<f64>,
}

/// In-place Householder QR of the column-major matrix `a`, applying the same
/// reflections to `y`. Returns the indices of columns found collinear.
fn householder_qr(a: &mut [Vec<f64>], y: &mut [f64]) -> Vec<usize> {
    let n = y.len();
    let p = a.len();
    let norms: Vec<f64> = a.iter().map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt()).collect();
    let mut collinear = Vec::new();
    for j in 0..p {
        let alpha_norm = a[j][j..].iter().map(|x| x * x).sum::<f64>().sqrt();
        if alpha_norm <= RANK_TOLERANCE * norms[j] || norms[j] == 0.0 {
            collinear.push(j);
            continue;
        }
        let sign = if a[j][j] >= 0.0 { 1.0 } else { -1.0 };
        let mut v: Vec<f64> = a[j][j..].to_vec();
        v[0] += sign * alpha_norm;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        let reflect = |col: &mut [f64]| {
            let dot: f64 = v.iter().zip(&col[j..]).map(|(a, b)| a * b).sum();
            let s = 2.0 * dot / vnorm2;
            for (c, vi) in col[j..].iter_mut().zip(&v) {
                *c -= s * vi;
            }
        };
        for col in a.iter_mut().skip(j) {
            reflect(col);
        }
        reflect(y);
        a[j][j] = -sign * alpha_norm;
        for x in a[j][j + 1..n].iter_mut() {
            *x = 0.0;
        }
    }
    collinear
}

/// Fits the excess-return factor model for one portfolio.
pub fn ols_fit(portfolio: &ReturnSeries, panel: &FactorPanel) -> Result<FactorModelFit> {
    if portfolio.calendar() != panel.calendar() {
        return Err(Error::CalendarMismatch(format!(
            "{} does not share the factor calendar",
            portfolio.name
        )));
    }
    let n = portfolio.len();
    let p = panel.num_factors() + 1;
    if n <= p {
        return Err(Error::InsufficientData { needed: p + 1, got: n });
    }
    let x = panel.design();
    let y: Vec<f64> = portfolio
        .returns()
        .iter()
        .zip(&panel.risk_free)
        .map(|(r, rf)| r - rf)
        .collect();

    let mut r = x.clone();
    let mut qty = y.clone();
    let collinear = householder_qr(&mut r, &mut qty);
    if !collinear.is_empty() {
        let names = collinear
            .into_iter()
            .map(|j| {
                if j == 0 {
                    "intercept".to_string()
                } else {
                    panel.names[j - 1].clone()
                }
            })
            .collect();
        return Err(Error::RankDeficient(names));
    }

    // Back substitution for R b = Q'y, and R^-1 for the coefficient covariance.
    let mut coef = vec![0.0; p];
    for i in (0..p).rev() {
        let s: f64 = (i + 1..p).map(|k| r[k][i] * coef[k]).sum();
        coef[i] = (qty[i] - s) / r[i][i];
    }
    let mut rinv = vec![vec![0.0; p]; p]; // rinv[row][col]
    for c in 0..p {
        rinv[c][c] = 1.0 / r[c][c];
        for i in (0..c).rev() {
            let s: f64 = (i + 1..=c).map(|k| r[k][i] * rinv[k][c]).sum();
            rinv[i][c] = -s / r[i][i];
        }
    }

    let residuals: Vec<f64> = (0..n)
        .map(|t| y[t] - (0..p).map(|j| x[j][t] * coef[j]).sum::<f64>())
        .collect();
    let dof = n - p;
    let rss: f64 = residuals.iter().map(|e| e * e).sum();
    let resid_sd = (rss / dof as f64).sqrt();
    let coef_se: Vec<f64> = rinv
        .iter()
        .map(|row| resid_sd * row.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    let alpha = coef[0];
    let alpha_se = coef_se[0];

    let tss: f64 = y.iter().map(|v| v * v).sum();
    let degenerate = rss.sqrt() <= DEGENERATE_TOLERANCE * tss.sqrt();
    let (ar_daily, inference) = if degenerate {
        (None, None)
    } else {
        let t_stat = alpha / alpha_se;
        (
            Some(alpha / resid_sd),
            Some(AlphaInference {
                t_stat,
                p_value: student_t_two_sided_p(t_stat, dof as f64),
            }),
        )
    };

    Ok(FactorModelFit {
        name: portfolio.name.clone(),
        n,
        dof,
        alpha,
        betas: coef[1..].to_vec(),
        factor_names: panel.names.clone(),
        resid_sd,
        alpha_se,
        coef_se,
        excess_return_sd: std_dev(&y, 1),
        residuals,
        ar_daily,
        inference,
    })
}

/// t statistic `alpha / SE(alpha)` and its two-sided Student-t p-value.
pub fn alpha_inference(fit: &FactorModelFit) -> Result<AlphaInference> {
    fit.inference.ok_or(Error::DegenerateFit)
}

pub fn annualize(fit: &FactorModelFit, trading_days: u32) -> Result<AnnualizedAlpha> {
    if trading_days == 0 {
        return Err(Error::InvalidParameter("trading days must be positive".into()));
    }
    let days = trading_days as f64;
    let alpha_annualized = fit.alpha * days;
    let ratio = |sd: f64| {
        if fit.is_degenerate() || sd == 0.0 {
            None
        } else {
            Some(alpha_annualized / (sd * days.sqrt()))
        }
    };
    Ok(AnnualizedAlpha {
        trading_days,
        alpha_annualized,
        ar_annualized: ratio(fit.resid_sd),
        ar_annualized_return_sd: ratio(fit.excess_return_sd),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CohortFitConfig {
    pub trading_days: u32,
    pub level: f64,
    pub bh_mode: BhMode,
}

impl Default for CohortFitConfig {
    fn default() -> Self {
        Self {
            trading_days: COMPETITION_TRADING_DAYS,
            level: 0.05,
            bh_mode: BhMode::StepUp,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MemberFit {
    pub fit: FactorModelFit,
    pub annualized: AnnualizedAlpha,
    /// Index into [`BhResult::entries`] when the member has a p-value.
    pub bh_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitFailure {
    pub name: String,
    pub error: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct AlphaCounts {
    pub cohort: usize,
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
    pub failed: usize,
    pub degenerate: usize,
    pub significant_positive: usize,
    pub significant_negative: usize,
    pub bh_significant_positive: usize,
    pub bh_significant_negative: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnSummary {
    pub column: String,
    pub summary: Option<Summary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CohortFit {
    pub config: CohortFitConfig,
    pub members: Vec<MemberFit>,
    pub failures: Vec<FitFailure>,
    pub bh: Option<BhResult>,
    pub counts: AlphaCounts,
    /// Annualized alpha, annualized AR, then one column per factor beta.
    pub summary: Vec<ColumnSummary>,
    pub alpha_normality: Option<AndersonDarling>,
}

/// Fits every portfolio against one panel and summarizes the cohort.
/// Per-portfolio failures are collected rather than aborting the cohort.
pub fn cohort_fit(
    portfolios: &[ReturnSeries],
    panel: &FactorPanel,
    cfg: &CohortFitConfig,
    par: Parallelism,
) -> Result<CohortFit> {
    if portfolios.is_empty() {
        return Err(Error::Empty("no portfolios to fit".into()));
    }
    let results = par.map_slice(portfolios, |p| ols_fit(p, panel));

    let mut members = Vec::new();
    let mut failures = Vec::new();
    for (p, res) in portfolios.iter().zip(results) {
        match res {
            Ok(fit) => {
                let annualized = annualize(&fit, cfg.trading_days)?;
                members.push(MemberFit {
                    fit,
                    annualized,
                    bh_index: None,
                });
            }
            Err(e) => failures.push(FitFailure {
                name: p.name.clone(),
                error: e.to_string(),
            }),
        }
    }

    let mut pvalues = Vec::new();
    for m in members.iter_mut() {
        if let Some(inf) = m.fit.inference {
            m.bh_index = Some(pvalues.len());
            pvalues.push(inf.p_value);
        }
    }
    let bh = if pvalues.is_empty() {
        None
    } else {
        Some(bh_adjust(&pvalues, cfg.level, cfg.bh_mode)?)
    };

    let mut counts = AlphaCounts {
        cohort: portfolios.len(),
        failed: failures.len(),
        ..AlphaCounts::default()
    };
    for m in &members {
        let a = m.fit.alpha;
        match a.partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Greater) => counts.positive += 1,
            Some(std::cmp::Ordering::Less) => counts.negative += 1,
            _ => counts.zero += 1,
        }
        let Some(inf) = m.fit.inference else {
            counts.degenerate += 1;
            continue;
        };
        let raw_sig = inf.p_value <= cfg.level;
        let bh_sig = match (&bh, m.bh_index) {
            (Some(b), Some(i)) => b.entries[i].significant,
            _ => false,
        };
        if a > 0.0 {
            counts.significant_positive += raw_sig as usize;
            counts.bh_significant_positive += bh_sig as usize;
        } else if a < 0.0 {
            counts.significant_negative += raw_sig as usize;
            counts.bh_significant_negative += bh_sig as usize;
        }
    }

    let mut summary = vec![
        ColumnSummary {
            column: "alpha_annualized".into(),
            summary: Summary::from_options(members.iter().map(|m| Some(m.annualized.alpha_annualized))),
        },
        ColumnSummary {
            column: "ar_annualized".into(),
            summary: Summary::from_options(members.iter().map(|m| m.annualized.ar_annualized)),
        },
    ];
    for (j, name) in panel.names.iter().enumerate() {
        summary.push(ColumnSummary {
            column: format!("beta_{name}"),
            summary: Summary::from_options(members.iter().map(|m| Some(m.fit.betas[j]))),
        });
    }

    let alphas: Vec<f64> = members.iter().map(|m| m.annualized.alpha_annualized).collect();
    let alpha_normality = anderson_darling(&alphas).ok();

    Ok(CohortFit {
        config: *cfg,
        members,
        failures,
        bh,
        counts,
        summary,
        alpha_normality,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::tests::weekdays;
    use crate::stats::pearson;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_series(rng: &mut ChaCha8Rng, name: &str, n: usize) -> ReturnSeries {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-0.03..0.03)).collect();
        ReturnSeries::new(name, weekdays(n), v).unwrap()
    }

    #[test]
    fn exact_single_factor_fit_is_degenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_series(&mut rng, "f", 40);
        let panel = FactorPanel::new(std::slice::from_ref(&f), None).unwrap();
        let fit = ols_fit(&f.clone().with_name("p"), &panel).unwrap();
        assert!(fit.alpha.abs() < 1e-15);
        assert!((fit.betas[0] - 1.0).abs() < 1e-12);
        assert!(fit.residuals.iter().all(|e| e.abs() < 1e-15));
        assert_eq!(alpha_inference(&fit), Err(Error::DegenerateFit));
    }

    #[test]
    fn exact_recovery_with_independent_second_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f1 = random_series(&mut rng, "f1", 60);
        let f2 = random_series(&mut rng, "f2", 60);
        let y: Vec<f64> = f1.returns().iter().map(|x| 0.0005 + 0.8 * x).collect();
        let y = ReturnSeries::new("y", weekdays(60), y).unwrap();
        let fit = ols_fit(&y, &FactorPanel::new(&[f1, f2], None).unwrap()).unwrap();
        assert!((fit.alpha - 0.0005).abs() < 1e-10);
        assert!((fit.betas[0] - 0.8).abs() < 1e-10);
        assert!(fit.betas[1].abs() < 1e-10);
    }

    #[test]
    fn rank_deficiency_names_the_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f1 = random_series(&mut rng, "spx", 30);
        let doubled: Vec<f64> = f1.returns().iter().map(|x| 2.0 * x).collect();
        let f2 = ReturnSeries::new("lev", weekdays(30), doubled).unwrap();
        let y = random_series(&mut rng, "y", 30);
        let err = ols_fit(&y, &FactorPanel::new(&[f1, f2], None).unwrap()).unwrap_err();
        assert_eq!(err, Error::RankDeficient(vec!["lev".into()]));

        let flat = ReturnSeries::new("cash", weekdays(30), vec![0.001; 30]).unwrap();
        let err = ols_fit(&y, &FactorPanel::new(&[flat], None).unwrap()).unwrap_err();
        assert_eq!(err, Error::RankDeficient(vec!["cash".into()]));
    }

    #[test]
    fn too_few_observations() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = random_series(&mut rng, "f", 2);
        let y = random_series(&mut rng, "y", 2);
        assert!(matches!(
            ols_fit(&y, &FactorPanel::new(&[f], None).unwrap()),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn zero_alpha_gives_unit_p_value() {
        let fit = FactorModelFit {
            name: "x".into(),
            n: 10,
            dof: 8,
            alpha: 0.0,
            betas: vec![0.5],
            factor_names: vec!["f".into()],
            resid_sd: 0.01,
            alpha_se: 0.002,
            coef_se: vec![0.002, 0.1],
            excess_return_sd: 0.02,
            residuals: vec![],
            ar_daily: Some(0.0),
            inference: Some(AlphaInference {
                t_stat: 0.0,
                p_value: student_t_two_sided_p(0.0, 8.0),
            }),
        };
        let inf = alpha_inference(&fit).unwrap();
        assert_eq!((inf.t_stat, inf.p_value), (0.0, 1.0));
        let a = annualize(&fit, 238).unwrap();
        assert_eq!(a.alpha_annualized, 0.0);
        assert_eq!(a.ar_annualized, Some(0.0));
    }

    #[test]
    fn annualization_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_series(&mut rng, "f", 30);
        let y = random_series(&mut rng, "y", 30);
        let mut fit = ols_fit(&y, &FactorPanel::new(&[f], None).unwrap()).unwrap();
        fit.alpha = 0.0001;
        fit.resid_sd = 0.001;
        let a = annualize(&fit, 238).unwrap();
        assert!((a.alpha_annualized - 0.0238).abs() < 1e-15);
        let oracle = 0.0238 / (0.001 * 238f64.sqrt());
        assert!((a.ar_annualized.unwrap() - oracle).abs() < 1e-12);
        assert!((a.ar_annualized.unwrap() - 1.543).abs() < 5e-4);
        assert!(annualize(&fit, 0).is_err());
    }

    #[test]
    fn risk_free_is_subtracted_from_both_sides() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let f = random_series(&mut rng, "f", 50);
        let y = random_series(&mut rng, "y", 50);
        let rf = ReturnSeries::new("rf", weekdays(50), vec![0.0001; 50]).unwrap();
        let with = ols_fit(&y, &FactorPanel::new(std::slice::from_ref(&f), Some(&rf)).unwrap()).unwrap();
        let without = ols_fit(&y, &FactorPanel::new(&[f], None).unwrap()).unwrap();
        // Constant rf shifts alpha by -rf (1 - beta).
        let expected = without.alpha - 0.0001 * (1.0 - without.betas[0]);
        assert!((with.alpha - expected).abs() < 1e-14);
        assert!((with.betas[0] - without.betas[0]).abs() < 1e-12);
    }

    #[test]
    fn cohort_ar_and_t_are_perfectly_correlated() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let factors: Vec<ReturnSeries> = (0..3).map(|j| random_series(&mut rng, &format!("f{j}"), 120)).collect();
        let panel = FactorPanel::new(&factors, None).unwrap();
        let cohort: Vec<ReturnSeries> = (0..20)
            .map(|i| random_series(&mut rng, &format!("p{i}"), 120))
            .collect();
        let c = cohort_fit(&cohort, &panel, &CohortFitConfig::default(), Parallelism::Parallel).unwrap();
        let ar: Vec<f64> = c.members.iter().map(|m| m.fit.ar_daily.unwrap()).collect();
        let t: Vec<f64> = c.members.iter().map(|m| m.fit.inference.unwrap().t_stat).collect();
        assert!((pearson(&ar, &t) - 1.0).abs() < 1e-12);
        let counts = c.counts;
        assert_eq!(counts.positive + counts.negative + counts.zero + counts.failed, 20);
        assert!(counts.bh_significant_positive <= counts.significant_positive);
        assert!(counts.bh_significant_negative <= counts.significant_negative);
        assert_eq!(c.summary.len(), 2 + 3);
    }

    #[test]
    fn cohort_edge_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = random_series(&mut rng, "f", 30);
        let panel = FactorPanel::new(std::slice::from_ref(&f), None).unwrap();
        let c = cohort_fit(
            std::slice::from_ref(&f),
            &panel,
            &CohortFitConfig::default(),
            Parallelism::Sequential,
        )
        .unwrap();
        assert_eq!(c.counts.degenerate, 1);
        assert!(c.bh.is_none());

        let y = random_series(&mut rng, "y", 30);
        let neg: Vec<f64> = y.returns().iter().map(|v| -v).collect();
        let neg = ReturnSeries::new("neg", weekdays(30), neg).unwrap();
        let c = cohort_fit(&[y, neg], &panel, &CohortFitConfig::default(), Parallelism::Sequential).unwrap();
        assert!((c.members[0].fit.alpha + c.members[1].fit.alpha).abs() < 1e-15);
        assert!(c.summary[0].summary.unwrap().median.abs() < 1e-15);

        let short = ReturnSeries::new("short", weekdays(5), vec![0.0; 5]).unwrap();
        let c = cohort_fit(&[short], &panel, &CohortFitConfig::default(), Parallelism::Sequential).unwrap();
        assert_eq!(c.counts.failed, 1);
        assert!(cohort_fit(&[], &panel, &CohortFitConfig::default(), Parallelism::Sequential).is_err());
    }

    proptest! {
        #[test]
        fn residual_orthogonality_and_shift(seed in any::<u64>(), c in -0.01f64..0.01) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let factors: Vec<ReturnSeries> = (0..3).map(|j| random_series(&mut rng, &format!("f{j}"), 40)).collect();
            let panel = FactorPanel::new(&factors, None).unwrap();
            let y = random_series(&mut rng, "y", 40);
            let fit = ols_fit(&y, &panel).unwrap();
            prop_assert!(fit.residuals.iter().sum::<f64>().abs() < 1e-8);
            for f in &factors {
                let dot: f64 = fit.residuals.iter().zip(f.returns()).map(|(e, x)| e * x).sum();
                prop_assert!(dot.abs() < 1e-8);
            }
            let shifted: Vec<f64> = y.returns().iter().map(|v| v + c).collect();
            let shifted = ReturnSeries::new("s", weekdays(40), shifted).unwrap();
            let sfit = ols_fit(&shifted, &panel).unwrap();
            prop_assert!((sfit.alpha - fit.alpha - c).abs() < 1e-10);
            for (a, b) in sfit.betas.iter().zip(&fit.betas) {
                prop_assert!((a - b).abs() < 1e-10);
            }
            prop_assert_eq!(fit.ar_daily.unwrap(), fit.alpha / fit.resid_sd);
        }
    }
}
