//! Command dispatch: each command reads the dataset, calls into the core and
//! writes its tables and plot-data files.

use std::path::PathBuf;
use std::str::FromStr;

use navstat_core::factor::{cohort_fit, CohortFitConfig, FactorPanel};
use navstat_core::fees::apply_fees;
use navstat_core::fof::{fof_backtest, member_curves, FofBacktest, PeriodGrid, Selector};
use navstat_core::metrics::{cohort_summary, metrics_reports, Metric, MetricsReport, REPORT_COLUMNS};
use navstat_core::montecarlo::{simulate_cohort, HoldingMode, SimulationConfig};
use navstat_core::normality::MIN_SAMPLE;
use navstat_core::series::{nav_from_returns, quantile_band};
use navstat_core::stats::{quantile, Summary};
use navstat_core::{NavSeries, Parallelism, ReturnSeries};

use crate::config::RunConfig;
use crate::dataset::Dataset;
use crate::error::{CliError, Result};
use crate::format::{Cell, Provenance, Table};
use crate::plot::{density, emit_plot_data, histogram, PlotPayload};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Metrics,
    Fees,
    Alpha,
    Simulate,
    Fof,
    Navs,
}

impl Command {
    pub const ALL: [Command; 6] = [
        Command::Metrics,
        Command::Navs,
        Command::Fees,
        Command::Alpha,
        Command::Simulate,
        Command::Fof,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Metrics => "metrics",
            Command::Fees => "fees",
            Command::Alpha => "alpha",
            Command::Simulate => "simulate",
            Command::Fof => "fof",
            Command::Navs => "navs",
        }
    }

    /// Inputs the command cannot run without that are absent from `ds`.
    pub fn missing_inputs(self, ds: &Dataset) -> Vec<String> {
        let mut missing = Vec::new();
        let need = |present: bool, what: &str, missing: &mut Vec<String>| {
            if !present {
                missing.push(what.to_string());
            }
        };
        match self {
            Command::Metrics => need(
                !ds.competitors.is_empty() || !ds.benchmarks.is_empty(),
                "competitors or benchmarks",
                &mut missing,
            ),
            Command::Navs | Command::Fees | Command::Fof => {
                need(!ds.competitors.is_empty(), "competitors", &mut missing)
            }
            Command::Alpha => {
                need(!ds.competitors.is_empty(), "competitors", &mut missing);
                need(!ds.benchmarks.is_empty(), "benchmarks (factors)", &mut missing);
            }
            Command::Simulate => need(!ds.universe.is_empty(), "universe", &mut missing),
        }
        missing
    }
}

impl FromStr for Command {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Input(format!("unknown command `{s}`")))
    }
}

struct Ctx<'a> {
    ds: &'a Dataset,
    cfg: &'a RunConfig,
    par: Parallelism,
    prov: Provenance,
    files: Vec<PathBuf>,
}

impl Ctx<'_> {
    fn table(&mut self, t: &Table) -> Result<()> {
        let p = t.write(&self.cfg.out_dir, self.cfg.format, &self.prov)?;
        self.files.push(p);
        Ok(())
    }

    fn plot(&mut self, id: &str, payload: &PlotPayload) -> Result<()> {
        let p = emit_plot_data(&self.cfg.out_dir, id, payload, &self.prov)?;
        self.files.push(p.clone());
        self.files.push(p.with_extension("legend"));
        Ok(())
    }

    fn reports(&self, series: &[ReturnSeries]) -> Result<Vec<MetricsReport>> {
        metrics_reports(series, self.cfg.capital, &self.cfg.annualization(), self.par)
            .into_iter()
            .collect::<navstat_core::Result<_>>()
            .map_err(CliError::from)
    }

    fn navs(&self, series: &[ReturnSeries]) -> Result<Vec<NavSeries>> {
        series
            .iter()
            .map(|r| nav_from_returns(r, self.cfg.capital).map_err(CliError::from))
            .collect()
    }
}

/// Runs `command` and returns the files written, in write order.
pub fn run_report(ds: &Dataset, cfg: &RunConfig, command: Command, par: Parallelism) -> Result<Vec<PathBuf>> {
    let missing = command.missing_inputs(ds);
    if !missing.is_empty() {
        return Err(CliError::Insufficient {
            command: command.name().into(),
            missing,
        });
    }
    std::fs::create_dir_all(&cfg.out_dir).map_err(|e| CliError::io(&cfg.out_dir, e))?;
    let mut ctx = Ctx {
        ds,
        cfg,
        par,
        prov: Provenance {
            command: command.name().into(),
            config_hash: cfg.config_hash(&ds.digest()),
            seed: cfg.seed,
        },
        files: Vec::new(),
    };
    match command {
        Command::Metrics => run_metrics(&mut ctx)?,
        Command::Navs => run_navs(&mut ctx)?,
        Command::Fees => run_fees(&mut ctx)?,
        Command::Alpha => run_alpha(&mut ctx)?,
        Command::Simulate => run_simulate(&mut ctx)?,
        Command::Fof => run_fof(&mut ctx)?,
    }
    Ok(ctx.files)
}

fn absences(r: &MetricsReport) -> String {
    let named = [
        ("sr", r.sr),
        ("cr", r.cr),
        ("upi", r.upi),
        ("vol_up", r.vol_up),
        ("vol_down", r.vol_down),
        ("autocorr", r.autocorr),
        ("ann_sd", r.ann_sd),
    ];
    named
        .iter()
        .filter_map(|(n, m)| match m {
            Metric::Absent(a) => Some(format!("{n}:{}", a.code())),
            Metric::Value(_) => None,
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn metrics_table(name: &str, reports: &[MetricsReport]) -> Table {
    let mut cols = vec!["name", "n"];
    cols.extend(REPORT_COLUMNS);
    cols.extend(["autocorr_lag", "absent"]);
    let mut t = Table::new(name, &cols);
    for r in reports {
        let mut row = vec![Cell::text(&r.name), Cell::int(r.n)];
        row.extend(r.columns().into_iter().map(Cell::Num));
        row.extend([Cell::int(r.autocorr_lag), Cell::text(absences(r))]);
        t.push(row);
    }
    t
}

const SUMMARY_COLUMNS: [&str; 10] = [
    "cohort", "metric", "min", "q25", "median", "mean", "q75", "max", "count", "ignored",
];

fn summary_row(cohort: &str, metric: &str, s: Option<&Summary>) -> Vec<Cell> {
    let mut row = vec![Cell::text(cohort), Cell::text(metric)];
    match s {
        Some(s) => {
            row.extend([s.min, s.q25, s.median, s.mean, s.q75, s.max].map(Cell::num));
            row.extend([Cell::int(s.count), Cell::int(s.ignored)]);
        }
        None => {
            row.extend(std::iter::repeat_n(Cell::Num(None), 6));
            row.extend([Cell::int(0), Cell::Num(None)]);
        }
    }
    row
}

fn push_cohort_summary(t: &mut Table, cohort: &str, reports: &[MetricsReport]) -> Result<()> {
    let summary = cohort_summary(reports)?;
    for c in &summary.columns {
        t.push(summary_row(cohort, c.metric, c.summary.as_ref()));
    }
    Ok(())
}

fn sort_by_sr(reports: &mut [MetricsReport]) {
    // Absent ratios sort last; ties keep input order.
    reports.sort_by(|a, b| match (a.sr.value(), b.sr.value()) {
        (Some(x), Some(y)) => x.total_cmp(&y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
}

fn run_metrics(ctx: &mut Ctx<'_>) -> Result<()> {
    let mut summary = Table::new("metrics_summary", &SUMMARY_COLUMNS);
    if !ctx.ds.benchmarks.is_empty() {
        let mut reports = ctx.reports(&ctx.ds.benchmarks)?;
        sort_by_sr(&mut reports);
        ctx.table(&metrics_table("metrics_benchmarks", &reports))?;
        push_cohort_summary(&mut summary, "benchmarks", &reports)?;
    }
    if !ctx.ds.competitors.is_empty() {
        let reports = ctx.reports(&ctx.ds.competitors)?;
        ctx.table(&metrics_table("metrics_competitors", &reports))?;
        push_cohort_summary(&mut summary, "competitors", &reports)?;
    }
    ctx.table(&summary)
}

fn dates_of(nav: &NavSeries) -> Vec<String> {
    nav.calendar().dates().iter().map(|d| d.to_string()).collect()
}

fn bands(navs: &[NavSeries], prefix: &str) -> Result<Vec<(String, Vec<f64>)>> {
    [("q05", 0.05), ("q50", 0.50), ("q95", 0.95)]
        .into_iter()
        .map(|(label, q)| Ok((format!("{prefix}{label}"), quantile_band(navs, q)?.values)))
        .collect()
}

fn run_navs(ctx: &mut Ctx<'_>) -> Result<()> {
    let comp = ctx.navs(&ctx.ds.competitors)?;
    let bench = ctx.navs(&ctx.ds.benchmarks)?;
    let capital = ctx.cfg.capital;
    let ending: Vec<f64> = comp.iter().map(NavSeries::ending_nav).collect();

    let (edges, counts) = histogram(&ending, ctx.cfg.hist_bin_width);
    ctx.plot(
        "fig1",
        &PlotPayload::Histogram {
            bin_width: ctx.cfg.hist_bin_width,
            edges,
            counts,
        },
    )?;

    let band = bands(&comp, "")?;
    let lo = *band[0].1.last().expect("non-empty band");
    let hi = *band[2].1.last().expect("non-empty band");
    let mut series: Vec<(String, Vec<f64>)> = comp
        .iter()
        .chain(&bench)
        .map(|n| (n.name.clone(), n.navs().to_vec()))
        .collect();
    series.extend(band);
    ctx.plot(
        "fig2",
        &PlotPayload::Curves {
            x_label: "date".into(),
            x: dates_of(&comp[0]),
            series,
        },
    )?;

    let mut members = Table::new("navs_ending", &["group", "name", "ending_nav", "outside_band"]);
    for (group, navs) in [("competitor", &comp), ("benchmark", &bench)] {
        for n in navs.iter() {
            let e = n.ending_nav();
            members.push(vec![
                Cell::text(group),
                Cell::text(&n.name),
                Cell::num(e),
                Cell::Bool(e < lo || e > hi),
            ]);
        }
    }
    ctx.table(&members)?;

    let count = |f: &dyn Fn(f64) -> bool| ending.iter().filter(|&&e| f(e)).count();
    let mut t = Table::new("navs_counts", &["statistic", "value"]);
    let rows = [
        ("competitors", comp.len()),
        ("ending_below_80pct_capital", count(&|e| e < 0.8 * capital)),
        ("ending_above_120pct_capital", count(&|e| e > 1.2 * capital)),
        ("ending_above_capital", count(&|e| e > capital)),
        ("ending_outside_q05_q95", count(&|e| e < lo || e > hi)),
    ];
    for (k, v) in rows {
        t.push(vec![Cell::text(k), Cell::int(v)]);
    }
    ctx.table(&t)
}

fn run_fees(ctx: &mut Ctx<'_>) -> Result<()> {
    let schedule = ctx.cfg.fee_schedule();
    schedule.validate()?;
    let gross = ctx.navs(&ctx.ds.competitors)?;
    let ledgers = gross
        .iter()
        .map(|g| apply_fees(g, &schedule))
        .collect::<navstat_core::Result<Vec<_>>>()?;
    let net: Vec<NavSeries> = ledgers.iter().map(|l| l.net.clone()).collect();

    let mut series = bands(&gross, "gross_")?;
    series.extend(bands(&net, "net_")?);
    ctx.plot(
        "fig3",
        &PlotPayload::Curves {
            x_label: "date".into(),
            x: dates_of(&gross[0]),
            series,
        },
    )?;

    let gross_reports = ctx.reports(&gross.iter().map(NavSeries::to_returns).collect::<Vec<_>>())?;
    let net_reports = ctx.reports(&net.iter().map(NavSeries::to_returns).collect::<Vec<_>>())?;

    let mut members = Table::new(
        "fees_members",
        &[
            "name",
            "gross_ending_nav",
            "net_ending_nav",
            "mgmt_fees",
            "perf_fees",
            "final_hwm",
            "gross_sr",
            "net_sr",
            "gross_mdd",
            "net_mdd",
        ],
    );
    for (i, l) in ledgers.iter().enumerate() {
        let (g, n) = (&gross_reports[i], &net_reports[i]);
        members.push(vec![
            Cell::text(&gross[i].name),
            Cell::num(gross[i].ending_nav()),
            Cell::num(l.net.ending_nav()),
            Cell::num(l.total_mgmt_fees()),
            Cell::num(l.total_perf_fees()),
            Cell::Num(l.high_water_mark.last().copied()),
            Cell::Num(g.sr.value()),
            Cell::Num(n.sr.value()),
            Cell::num(g.mdd),
            Cell::num(n.mdd),
        ]);
    }
    ctx.table(&members)?;

    type Column = fn(&MetricsReport) -> Option<f64>;
    let med = |rs: &[MetricsReport], f: Column| {
        let v: Vec<f64> = rs.iter().filter_map(f).collect();
        quantile(&v, 0.5).ok()
    };
    let mut t = Table::new("fees_summary", &["statistic", "gross", "net"]);
    let stats: [(&str, Column); 3] = [
        ("median_sr", |r| r.sr.value()),
        ("median_mdd", |r| Some(r.mdd)),
        ("median_ending_nav", |r| Some(r.ending_nav)),
    ];
    for (name, f) in stats {
        t.push(vec![
            Cell::text(name),
            Cell::Num(med(&gross_reports, f)),
            Cell::Num(med(&net_reports, f)),
        ]);
    }
    ctx.table(&t)
}

fn run_alpha(ctx: &mut Ctx<'_>) -> Result<()> {
    let panel = FactorPanel::new(&ctx.ds.benchmarks, ctx.ds.risk_free.as_ref())?;
    let cfg = CohortFitConfig {
        trading_days: ctx.cfg.alpha_days,
        level: ctx.cfg.bh_level,
        bh_mode: ctx.cfg.bh_mode,
    };
    let fit = cohort_fit(&ctx.ds.competitors, &panel, &cfg, ctx.par)?;
    if fit.members.is_empty() {
        let first = &fit.failures[0];
        return Err(CliError::Numerical(format!(
            "no competitor could be fitted ({}: {})",
            first.name, first.error
        )));
    }

    let mut cols: Vec<String> = [
        "name",
        "n",
        "dof",
        "alpha_daily",
        "alpha_annualized",
        "ar_annualized",
        "ar_annualized_return_sd",
        "resid_sd",
        "alpha_se",
        "t_stat",
        "p_value",
        "raw_significant",
        "bh_rank",
        "bh_adjusted_p",
        "bh_significant",
    ]
    .map(String::from)
    .to_vec();
    cols.extend(panel.names().iter().map(|n| format!("beta_{n}")));
    let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut fits = Table::new("alpha_fits", &col_refs);
    for m in &fit.members {
        let f = &m.fit;
        let entry = match (&fit.bh, m.bh_index) {
            (Some(b), Some(i)) => Some(b.entries[i]),
            _ => None,
        };
        let mut row = vec![
            Cell::text(&f.name),
            Cell::int(f.n),
            Cell::int(f.dof),
            Cell::num(f.alpha),
            Cell::num(m.annualized.alpha_annualized),
            Cell::Num(m.annualized.ar_annualized),
            Cell::Num(m.annualized.ar_annualized_return_sd),
            Cell::num(f.resid_sd),
            Cell::num(f.alpha_se),
            Cell::Num(f.inference.map(|i| i.t_stat)),
            Cell::Num(f.inference.map(|i| i.p_value)),
            f.inference
                .map_or(Cell::text("NA"), |i| Cell::Bool(i.p_value <= cfg.level)),
            entry.map_or(Cell::text("NA"), |e| Cell::int(e.rank)),
            Cell::Num(entry.map(|e| e.adjusted_p)),
            entry.map_or(Cell::text("NA"), |e| Cell::Bool(e.significant)),
        ];
        row.extend(f.betas.iter().map(|&b| Cell::num(b)));
        fits.push(row);
    }
    ctx.table(&fits)?;

    let mut failures = Table::new("alpha_failures", &["name", "error"]);
    for f in &fit.failures {
        failures.push(vec![Cell::text(&f.name), Cell::text(&f.error)]);
    }
    ctx.table(&failures)?;

    let mut summary = Table::new("alpha_summary", &SUMMARY_COLUMNS);
    for c in &fit.summary {
        summary.push(summary_row("competitors", &c.column, c.summary.as_ref()));
    }
    ctx.table(&summary)?;

    let c = &fit.counts;
    let m = fit.bh.as_ref().map_or(0, |b| b.m);
    let mut counts = Table::new("alpha_counts", &["statistic", "value"]);
    for (k, v) in [
        ("cohort", c.cohort),
        ("positive", c.positive),
        ("negative", c.negative),
        ("zero", c.zero),
        ("failed", c.failed),
        ("degenerate", c.degenerate),
        ("tested", m),
        ("raw_significant_positive", c.significant_positive),
        ("raw_significant_negative", c.significant_negative),
        ("bh_significant_positive", c.bh_significant_positive),
        ("bh_significant_negative", c.bh_significant_negative),
    ] {
        counts.push(vec![Cell::text(k), Cell::int(v)]);
    }
    counts.push(vec![Cell::text("bh_level"), Cell::num(cfg.level)]);
    counts.push(vec![
        Cell::text("bonferroni_cutoff"),
        Cell::Num((m > 0).then(|| cfg.level / m as f64)),
    ]);
    ctx.table(&counts)?;

    let mut tests = Table::new(
        "alpha_tests",
        &["test", "n", "statistic", "adjusted_statistic", "p_value", "note"],
    );
    match &fit.alpha_normality {
        Some(ad) => tests.push(vec![
            Cell::text("anderson_darling_alpha_annualized"),
            Cell::int(ad.n),
            Cell::num(ad.a2),
            Cell::num(ad.a2_star),
            Cell::num(ad.p_value),
            Cell::text(""),
        ]),
        None => tests.push(vec![
            Cell::text("anderson_darling_alpha_annualized"),
            Cell::int(fit.members.len()),
            Cell::Num(None),
            Cell::Num(None),
            Cell::Num(None),
            Cell::text(format!("needs at least {MIN_SAMPLE} fitted alphas")),
        ]),
    }
    ctx.table(&tests)?;

    if let Some(bh) = &fit.bh {
        let ranked = bh.by_rank();
        ctx.plot(
            "fig4",
            &PlotPayload::Curves {
                x_label: "rank".into(),
                x: (1..=bh.m).map(|r| r.to_string()).collect(),
                series: vec![
                    ("raw_p".into(), ranked.iter().map(|e| e.raw_p).collect()),
                    ("adjusted_p".into(), ranked.iter().map(|e| e.adjusted_p).collect()),
                    ("cutoff".into(), bh.cutoff_line()),
                ],
            },
        )?;
    }
    Ok(())
}

/// Restricts `r` to calendar indices `[s, e)`.
fn window(r: &ReturnSeries, s: usize, e: usize) -> Result<ReturnSeries> {
    Ok(ReturnSeries::new(
        r.name.clone(),
        r.calendar().slice(s, e),
        r.returns()[s..e].to_vec(),
    )?)
}

const DENSITY_METRICS: [&str; 8] = ["sr", "mdd", "cr", "ui", "upi", "vol_up", "vol_down", "ann_return"];

fn run_simulate(ctx: &mut Ctx<'_>) -> Result<()> {
    let cfg = ctx.cfg;
    let sim_cfg = SimulationConfig {
        universe: ctx.ds.universe.clone(),
        portfolio_size: cfg.portfolio_size,
        rebalance_dates: cfg.rebalance_dates.clone(),
        num_sims: cfg.sims,
        master_seed: cfg.seed,
        holding: cfg.holding,
        initial_capital: cfg.capital,
        annualization: cfg.annualization(),
    };
    let cohort = simulate_cohort(&sim_cfg, ctx.par)?;
    let (s, e) = (cohort.schedule.start(), cohort.schedule.end());
    let sim_reports: Vec<MetricsReport> = cohort.simulations.iter().map(|s| s.report.clone()).collect();

    let comp_window = ctx
        .ds
        .competitors
        .iter()
        .map(|r| window(r, s, e))
        .collect::<Result<Vec<_>>>()?;
    let bench_window = ctx
        .ds
        .benchmarks
        .iter()
        .map(|r| window(r, s, e))
        .collect::<Result<Vec<_>>>()?;
    let comp_reports = ctx.reports(&comp_window)?;

    let mut summary = Table::new("simulate_summary", &SUMMARY_COLUMNS);
    for c in &cohort.summary.columns {
        summary.push(summary_row("random", c.metric, c.summary.as_ref()));
    }
    if !comp_reports.is_empty() {
        push_cohort_summary(&mut summary, "competitors", &comp_reports)?;
    }
    ctx.table(&summary)?;

    let mut t = Table::new("simulate_counts", &["statistic", "value"]);
    t.push(vec![Cell::text("num_sims"), Cell::int(cohort.provenance.num_sims)]);
    t.push(vec![Cell::text("portfolio_size"), Cell::int(cfg.portfolio_size)]);
    let holding = match cohort.provenance.holding {
        HoldingMode::BuyAndHold => "buy_and_hold",
        HoldingMode::DailyRebalance => "daily_rebalance",
    };
    t.push(vec![Cell::text("holding"), Cell::text(holding)]);
    t.push(vec![
        Cell::text("holding_periods"),
        Cell::int(cohort.schedule.periods.len()),
    ]);
    t.push(vec![
        Cell::text("window_start"),
        Cell::text(ctx.ds.calendar.dates()[s].to_string()),
    ]);
    t.push(vec![
        Cell::text("window_end"),
        Cell::text(ctx.ds.calendar.dates()[e - 1].to_string()),
    ]);
    t.push(vec![Cell::text("max_mdd"), Cell::num(cohort.max_mdd())]);
    t.push(vec![
        Cell::text("master_seed"),
        Cell::text(cohort.provenance.master_seed.to_string()),
    ]);
    t.push(vec![
        Cell::text("simulation_hash"),
        Cell::text(&cohort.provenance.config_hash),
    ]);
    ctx.table(&t)?;

    let mut rows = Vec::new();
    for (j, metric) in REPORT_COLUMNS.iter().enumerate() {
        if !DENSITY_METRICS.contains(metric) {
            continue;
        }
        let groups: Vec<(&str, Vec<f64>)> = [("random", &sim_reports), ("competitors", &comp_reports)]
            .into_iter()
            .map(|(g, rs)| (g, rs.iter().filter_map(|r| r.columns()[j]).collect::<Vec<f64>>()))
            .filter(|(_, v)| !v.is_empty())
            .collect();
        let all = groups.iter().flat_map(|(_, v)| v.iter().copied());
        let lo = all.clone().fold(f64::INFINITY, f64::min);
        let hi = all.fold(f64::NEG_INFINITY, f64::max);
        for (g, v) in &groups {
            for (x, d) in density(v, lo, hi, cfg.density_bins) {
                rows.push((metric.to_string(), g.to_string(), x, d));
            }
        }
    }
    ctx.plot("fig5", &PlotPayload::Density { rows })?;

    let points = comp_reports
        .iter()
        .chain(&sim_reports)
        .map(|r| (r.name.clone(), r.sr.value(), Some(r.mdd)))
        .collect();
    ctx.plot(
        "fig6",
        &PlotPayload::Scatter {
            x_label: "sr".into(),
            y_label: "mdd".into(),
            points,
        },
    )?;

    let sim_navs = cohort.navs();
    let mut series = vec![("random_min".to_string(), quantile_band(&sim_navs, 0.0)?.values)];
    series.extend(bands(&sim_navs, "random_")?);
    series.push(("random_max".into(), quantile_band(&sim_navs, 1.0)?.values));
    for b in ctx.navs(&bench_window)? {
        series.push((b.name.clone(), b.navs().to_vec()));
    }
    let comp_navs = ctx.navs(&comp_window)?;
    if !comp_navs.is_empty() {
        series.extend(bands(&comp_navs, "competitor_")?);
    }
    ctx.plot(
        "fig7",
        &PlotPayload::Curves {
            x_label: "date".into(),
            x: dates_of(&sim_navs[0]),
            series,
        },
    )
}

fn fof_curves(ds: &Dataset, grid: &PeriodGrid, bt: &FofBacktest, capital: f64) -> PlotPayload {
    let dates = grid.calendar.dates();
    let mut rows = Vec::new();
    for (period, idx, navs) in member_curves(&ds.competitors, grid, bt, capital) {
        let (s, _) = grid.ranges[period - 1];
        for (t, v) in navs.into_iter().enumerate() {
            rows.push((
                format!("period_{period:02}"),
                ds.competitors[idx].name.clone(),
                dates[s + t].to_string(),
                v,
            ));
        }
    }
    let name = bt.daily_nav.name.clone();
    for (d, v) in bt.daily_nav.calendar().dates().iter().zip(bt.daily_nav.navs()) {
        rows.push(("strategy".into(), name.clone(), d.to_string(), *v));
    }
    PlotPayload::LongCurves { rows }
}

fn run_fof(ctx: &mut Ctx<'_>) -> Result<()> {
    let ds = ctx.ds;
    let grid = PeriodGrid::new(ds.calendar.clone(), ctx.cfg.rebalance_dates.clone())?;
    let mut periods = Table::new(
        "fof_periods",
        &[
            "strategy",
            "period",
            "start_date",
            "end_date",
            "team",
            "strategy_return",
        ],
    );
    let mut totals = Table::new(
        "fof_totals",
        &["strategy", "k", "periods", "total_return", "ending_nav"],
    );
    for (selector, fig) in [(Selector::Top, "fig8"), (Selector::Bottom, "fig9")] {
        let bt = fof_backtest(&ds.competitors, &grid, selector, ctx.cfg.k)?;
        for tp in &bt.periods {
            let (s, _) = grid.ranges[tp.period - 1];
            let team: Vec<&str> = tp.team.iter().map(|&i| ds.competitors[i].name.as_str()).collect();
            periods.push(vec![
                Cell::text(&bt.nav.name),
                Cell::int(tp.period),
                Cell::text(grid.calendar.dates()[s].to_string()),
                Cell::text(grid.period_end_date(tp.period).to_string()),
                Cell::text(team.join(";")),
                Cell::num(tp.strategy_return),
            ]);
        }
        totals.push(vec![
            Cell::text(&bt.nav.name),
            Cell::int(bt.k),
            Cell::int(bt.periods.len()),
            Cell::num(bt.total_return),
            Cell::num(bt.nav.ending_nav()),
        ]);
        ctx.plot(fig, &fof_curves(ds, &grid, &bt, ctx.cfg.capital))?;
    }
    ctx.table(&periods)?;
    ctx.table(&totals)
}
