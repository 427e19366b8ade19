//! `critpoint`: run one experiment from a JSON config, or compute the
//! critical points of a root list.
//!
//! Exit codes: 0 when every verdict passes, 1 when one fails or is
//! inconclusive, 2 on a config, I/O or numerical error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use critpoint_core::experiments::{Comparison, Status};
use critpoint_core::{critical_points, run, Complex64, Error, ExperimentConfig, Report, RootSet};

const DEFAULT_OUT: &str = "out";

#[derive(Parser)]
#[command(name = "critpoint", version, about = "Critical points of random polynomials")]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run(RunArgs),
    /// Critical points of the polynomial with the roots in `--roots`, or the
    /// structural experiment when given `--config`.
    Critical {
        /// JSON array of `[re, im]` pairs.
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        roots: Option<PathBuf>,
        /// Solver tolerance for `--roots`.
        #[arg(long, default_value_t = 1e-12, requires = "roots")]
        tol: f64,
        #[command(flatten)]
        run: OptionalRunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct OptionalRunArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CommonArgs {
    /// Replaces the master seed of the config.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory; overrides `out_dir` in the config.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: cannot start {t} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Run(a) => run_experiment(&a.config, &a.common),
        Command::Critical { roots: Some(path), tol, .. } => one_shot(&path, tol),
        Command::Critical { run: OptionalRunArgs { config: Some(c), common }, .. } => run_experiment(&c, &common),
        Command::Critical { .. } => unreachable!("clap requires --roots or --config"),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn run_experiment(config_path: &Path, args: &CommonArgs) -> Result<ExitCode, String> {
    let text = read(config_path)?;
    let mut cfg = ExperimentConfig::from_json(&text).map_err(|e| format!("{}: {e}", config_path.display()))?;
    if let Some(s) = args.seed {
        cfg.seed.master_seed = s;
    }
    let out = args
        .out
        .clone()
        .or_else(|| cfg.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    cfg.out_dir = Some(out.clone());
    let report = run(&cfg).map_err(|e| e.to_string())?;
    report.write_to_dir(&out).map_err(|e| format!("{}: {e}", out.display()))?;
    if !args.quiet {
        summarize(&report, &out);
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn summarize(report: &Report, out: &Path) {
    for v in &report.verdicts {
        let status = match v.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        let cmp = match v.comparison {
            Comparison::AtMost => "<=",
            Comparison::AtLeast => ">=",
        };
        eprintln!("{status:<12} {}: {} {cmp} {}", v.name, v.observed, v.threshold);
    }
    for n in &report.notes {
        eprintln!("note: {n}");
    }
    eprintln!("wrote {}", out.display());
}

fn one_shot(path: &Path, tol: f64) -> Result<ExitCode, String> {
    let text = read(path)?;
    let roots: Vec<Complex64> =
        serde_json::from_str(&text).map_err(|e| format!("{}: expected an array of [re, im] pairs: {e}", path.display()))?;
    let rs = RootSet::new(roots).map_err(|e| e.to_string())?;
    let cs = critical_points(&rs, tol).map_err(|e: Error| e.to_string())?;
    let json = serde_json::to_string(&cs.points).map_err(|e| e.to_string())?;
    println!("{json}");
    Ok(ExitCode::SUCCESS)
}
