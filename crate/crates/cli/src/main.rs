use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use navstat_cli::{run_report, CliError, Command, Dataset, RunConfig};
use navstat_core::Parallelism;

#[derive(Parser, Debug)]
#[command(
    name = "navstat",
    version,
    about = "Portfolio NAV analytics: metrics, fees, factor alphas, random portfolios and fund-of-funds backtests"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Flat `key = value` config file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Competitor portfolios CSV.
    #[arg(long, global = true)]
    competitors: Option<String>,
    /// Benchmark (factor) CSV.
    #[arg(long, global = true)]
    benchmarks: Option<String>,
    /// Asset universe CSV for random portfolios.
    #[arg(long, global = true)]
    universe: Option<String>,
    /// Single-column risk-free CSV.
    #[arg(long, global = true)]
    risk_free: Option<String>,
    /// `returns` or `prices` for the competitors file.
    #[arg(long, global = true)]
    competitors_kind: Option<String>,
    #[arg(long, global = true)]
    benchmarks_kind: Option<String>,
    #[arg(long, global = true)]
    universe_kind: Option<String>,

    /// Annualization periods per year.
    #[arg(long, global = true)]
    n_star: Option<String>,
    /// Trading days used to annualize alpha: 238 or 252.
    #[arg(long, global = true)]
    alpha_days: Option<String>,
    /// Annual management fee rate.
    #[arg(long, global = true)]
    mgmt: Option<String>,
    /// Performance fee rate.
    #[arg(long, global = true)]
    perf: Option<String>,
    /// Number of random portfolios.
    #[arg(long, global = true)]
    sims: Option<String>,
    /// Master seed.
    #[arg(long, global = true)]
    seed: Option<String>,
    /// Fund-of-funds team size.
    #[arg(long, global = true)]
    k: Option<String>,
    /// False-discovery level for the step-up procedure.
    #[arg(long, global = true)]
    bh_level: Option<String>,
    /// `csv` or `json` tables.
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true)]
    out_dir: Option<String>,

    /// Run without the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Per-series metrics and cohort summaries.
    Metrics,
    /// Ending-NAV histogram and NAV curves with quantile bands.
    Navs,
    /// NAVs and metrics before and after fees.
    Fees,
    /// Factor-model alphas with multiple-testing adjustment.
    Alpha,
    /// Random equal-weight portfolios drawn from the universe.
    Simulate,
    /// Prior-period winners and losers backtests.
    Fof,
    /// Every command above, in order.
    All,
}

impl Cli {
    fn overrides(&self) -> Vec<(&'static str, &String)> {
        let pairs = [
            ("competitors", &self.competitors),
            ("benchmarks", &self.benchmarks),
            ("universe", &self.universe),
            ("risk_free", &self.risk_free),
            ("competitors_kind", &self.competitors_kind),
            ("benchmarks_kind", &self.benchmarks_kind),
            ("universe_kind", &self.universe_kind),
            ("n_star", &self.n_star),
            ("alpha_days", &self.alpha_days),
            ("mgmt", &self.mgmt),
            ("perf", &self.perf),
            ("sims", &self.sims),
            ("seed", &self.seed),
            ("k", &self.k),
            ("bh_level", &self.bh_level),
            ("format", &self.format),
            ("out_dir", &self.out_dir),
        ];
        pairs
            .into_iter()
            .filter_map(|(k, v)| v.as_ref().map(|v| (k, v)))
            .collect()
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::from_file(p)?,
        None => RunConfig::default(),
    };
    for (key, value) in cli.overrides() {
        cfg.set(key, value, Path::new(""))?;
    }
    let ds = Dataset::load(&cfg)?;
    let par = if cli.sequential {
        Parallelism::Sequential
    } else {
        Parallelism::default()
    };
    let commands: Vec<Command> = match cli.command {
        Cmd::Metrics => vec![Command::Metrics],
        Cmd::Navs => vec![Command::Navs],
        Cmd::Fees => vec![Command::Fees],
        Cmd::Alpha => vec![Command::Alpha],
        Cmd::Simulate => vec![Command::Simulate],
        Cmd::Fof => vec![Command::Fof],
        Cmd::All => Command::ALL.to_vec(),
    };
    for c in commands {
        for f in run_report(&ds, &cfg, c, par)? {
            println!("{}", f.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("navstat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
