use std::path::{Path, PathBuf};
use std::process::ExitCode;

use axial_lab::analytic::{constant_report, fit_power_law};
use axial_lab::harness::{column_means, gg_samples, small_m_experiment, write_campaign};
use axial_lab::io::read_instance;
use axial_lab::{run_campaign, solve, Algo, ConfigPatch, CostModel, Emit, Error, ExactMethod, MRule};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

/// Greedy and exact solvers for random axial assignment instances.
#[derive(Parser, Debug)]
#[command(name = "axial", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a Monte Carlo campaign and write one CSV.
    Simulate(SimulateArgs),
    /// Solve an instance file exactly and print the result as JSON.
    Exact {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "hybrid")]
        method: ExactMethod,
    },
    /// Print c_d and its quadrature check as JSON.
    Constants {
        /// Dimensions, comma separated; one JSON line each.
        #[arg(long, value_delimiter = ',', required = true)]
        d: Vec<u32>,
    },
    /// Least-squares power law through per-x means of a CSV column.
    Fit {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Ignore rows with x below this value.
        #[arg(long)]
        min_x: Option<f64>,
    },
    /// Compare row greedy and global greedy on the same exp1 instances.
    GgCompare {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        /// Also write the paired samples as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Row greedy on uniform integer costs in {1..round(n^alpha)}, d = 3.
    SmallM {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// JSON configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    model: Option<CostModel>,
    #[arg(long)]
    d: Option<usize>,
    /// Side lengths, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    /// Greedy rounds: an integer, `default` or `full`.
    #[arg(long)]
    m: Option<MRule>,
    /// Uniform-int scale exponent, M = round(n^alpha).
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    algo: Option<Algo>,
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed; required here or in the config file.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    emit: Option<Emit>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    /// Skip the per-trial plane-minimum lower bound.
    #[arg(long)]
    no_lower_bound: bool,
    /// Leave runtime_ms empty so output files are byte-reproducible.
    #[arg(long)]
    no_timing: bool,
}

impl SimulateArgs {
    fn patch(&self) -> ConfigPatch {
        ConfigPatch {
            model: self.model,
            d: self.d,
            n_values: self.n.clone(),
            m_rule: self.m,
            alpha: self.alpha,
            algo: self.algo,
            trials: self.trials,
            master_seed: self.seed,
            emit: self.emit,
            out_path: self.out.clone(),
            threads: self.threads,
            lower_bound: self.no_lower_bound.then_some(false),
            timing: self.no_timing.then_some(false),
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Domain(_) | Error::Config(_) | Error::Parse(_) => 2,
        Error::Capacity(_) => 3,
        Error::Io(_) => 4,
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Error> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn simulate(args: &SimulateArgs) -> Result<(), Error> {
    let base = match &args.config {
        Some(path) => ConfigPatch::from_json_str(&std::fs::read_to_string(path)?)?,
        None => ConfigPatch::default(),
    };
    let config = base.overlay(args.patch()).resolve()?;
    if config.out_path.is_none() {
        return Err(Error::Config("missing output path (--out)".into()));
    }
    let campaign = run_campaign(&config)?;
    let path = write_campaign(&config, &campaign, None)?;
    print_json(&json!({
        "out": path,
        "records": campaign.records.len(),
        "steps": campaign.steps.len(),
    }))
}

fn fit(path: &Path, x: &str, y: &str, min_x: Option<f64>) -> Result<(), Error> {
    let points = column_means(std::fs::File::open(path)?, x, y, min_x)?;
    print_json(&fit_power_law(&points)?)
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Simulate(args) => simulate(&args),
        Command::Exact { input, method } => {
            let instance = read_instance(&input)?;
            let result = solve(&instance, method)?;
            print_json(&json!({
                "value": result.value,
                "argmin": result.argmin.one_based_perms(),
                "method": result.method,
                "nodes_explored": result.nodes_explored,
            }))
        }
        Command::Constants { d } => d.into_iter().try_for_each(|d| print_json(&constant_report(d)?)),
        Command::Fit { input, x, y, min_x } => fit(&input, &x, &y, min_x),
        Command::GgCompare {
            d,
            n,
            samples,
            seed,
            threads,
            out,
        } => {
            let drawn = gg_samples(d, n, samples, seed, threads)?;
            if let Some(path) = out {
                drawn.write_csv(std::io::BufWriter::new(std::fs::File::create(path)?))?;
            }
            print_json(&drawn.report(d, n)?)
        }
        Command::SmallM { n, alpha, seed } => print_json(&small_m_experiment(n, alpha, seed)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
