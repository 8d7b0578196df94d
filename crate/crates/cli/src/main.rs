use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use ccb_core::harness::{self, ExperimentConfig, GridCell};
use ccb_core::offline::DEFAULT_MAX_K;
use ccb_core::{brute_force_optimal, bound_report, ucr_t1, CostDist, Error};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "ccb", version, about = "Cost-aware cascading bandit experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the optimal list, its length and its expected net reward.
    Offline {
        #[arg(long)]
        config: PathBuf,
    },
    /// Certify the optimal list by exhaustive search.
    Bruteforce {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_K)]
        max_k: usize,
    },
    /// Run replicated CC-UCB simulations and write the regret trace as CSV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Give the learner the true mean costs.
        #[arg(long)]
        known_cost: bool,
        /// Trace CSV destination (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Summary CSV destination (stderr if omitted).
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Run the K x L x gap regret grid, known and unknown costs.
    Table2 {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        runs: u64,
        #[arg(long, default_value_t = 100_000)]
        horizon: u64,
        #[arg(long, value_enum, default_value_t = GridCost::Bernoulli)]
        cost_dist: GridCost,
        /// Summary CSV destination (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the log-T coefficients of the regret upper and lower bounds.
    Bounds {
        #[arg(long)]
        config: PathBuf,
    },
    /// Build a known-cost simulation config from a click log.
    Ingest {
        #[arg(long)]
        log: PathBuf,
        #[arg(long)]
        cost: f64,
        #[arg(long, default_value_t = 100_000)]
        horizon: u64,
        #[arg(long, default_value_t = 20)]
        runs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Config JSON destination (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GridCost {
    Constant,
    Bernoulli,
}

impl From<GridCost> for CostDist {
    fn from(c: GridCost) -> Self {
        match c {
            GridCost::Constant => CostDist::Constant,
            GridCost::Bernoulli => CostDist::Bernoulli,
        }
    }
}

fn output(path: Option<&Path>, fallback: Box<dyn Write>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => fallback,
    })
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Offline { config } => {
            let cfg = ExperimentConfig::load(config)?;
            let sol = ucr_t1(&cfg.instance);
            println!("list: {}", sol.list);
            println!("L: {}", sol.len());
            println!("expected_net_reward: {}", sol.value);
        }
        Command::Bruteforce { config, max_k } => {
            let cfg = ExperimentConfig::load(config)?;
            let brute = brute_force_optimal(&cfg.instance, max_k)?;
            let sol = ucr_t1(&cfg.instance);
            let agrees = (brute.value - sol.value).abs() <= 1e-12;
            println!("bruteforce list: {}", brute.list);
            println!("bruteforce value: {}", brute.value);
            println!("ucr_t1 list: {}", sol.list);
            println!("ucr_t1 value: {}", sol.value);
            println!("certified: {agrees}");
        }
        Command::Simulate {
            config,
            known_cost,
            out,
            summary,
        } => {
            let mut cfg = ExperimentConfig::load(config)?;
            cfg.known_cost |= known_cost;
            let result = harness::run_experiment(&cfg)?;
            let mut trace = output(out.as_deref(), Box::new(io::stdout().lock()))?;
            harness::write_trace_csv(&result, &mut trace)?;
            trace.flush()?;
            let label = if cfg.known_cost { "known" } else { "unknown" };
            let mut sum = output(summary.as_deref(), Box::new(io::stderr().lock()))?;
            harness::write_summary_csv([(label, &result)], &mut sum)?;
            sum.flush()?;
        }
        Command::Table2 {
            seed,
            runs,
            horizon,
            cost_dist,
            out,
        } => {
            let cells = harness::table2_grid_with(seed, runs, horizon, cost_dist.into())?;
            let labels: Vec<String> = cells.iter().map(GridCell::label).collect();
            let mut sink = output(out.as_deref(), Box::new(io::stdout().lock()))?;
            harness::write_summary_csv(
                labels.iter().map(String::as_str).zip(cells.iter().map(|c| &c.result)),
                &mut sink,
            )?;
            sink.flush()?;
        }
        Command::Bounds { config } => {
            let cfg = ExperimentConfig::load(config)?;
            let report = bound_report(&cfg.instance, cfg.alpha)?;
            println!("upper_coeff: {}", report.upper_coeff);
            println!("lower_coeff: {}", report.lower_coeff);
            for g in &report.gaps {
                println!("gap arm {}: {}", g.arm, g.gap);
            }
            println!("upper_bound_at_horizon: {}", report.upper_at(cfg.horizon));
            println!("lower_bound_at_horizon: {}", report.lower_at(cfg.horizon));
        }
        Command::Ingest {
            log,
            cost,
            horizon,
            runs,
            seed,
            out,
        } => {
            let ingested = harness::ingest_clicklog(log, cost)?;
            let cfg = ingested.to_config(horizon, runs, seed);
            cfg.validate()?;
            for item in &ingested.clamped {
                eprintln!("warning: click rate of item {item:?} clamped away from 0/1");
            }
            let mut sink = output(out.as_deref(), Box::new(io::stdout().lock()))?;
            writeln!(sink, "{}", cfg.to_json())?;
            sink.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
