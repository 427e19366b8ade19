//! The verification experiments. Each takes an [`ExperimentConfig`] and
//! returns a [`Report`] of per-`n` rows and verdicts.
//!
//! Convergence, growth and LLN follow one trajectory `Z_1, Z_2, …` through
//! the whole `n_schedule`. Jensen, anti-concentration and the structural
//! checks draw fresh roots for every `(n, trial)` pair. Trials run in
//! parallel and are always aggregated in trial order.

mod anticoncentration;
pub mod config;
mod convergence;
mod growth;
mod jensen;
mod lln;
pub mod report;
mod structural;

pub use anticoncentration::{check_nondegenerate, run_anticoncentration};
pub use config::{Centering, CircleSpec, ExperimentConfig, ExperimentKind, Options, Tolerances};
pub use convergence::run_convergence;
pub use growth::run_growth;
pub use jensen::run_jensen;
pub use lln::run_lln_logminus;
pub use report::{Comparison, Report, Row, Stat, Status, Verdict};
pub use structural::run_critical;

use crate::error::Result;
use crate::sampler::SeedSpec;

const TAG_ROOTS: u64 = 1;
const TAG_TRANSFORM: u64 = 2;
const TAG_REFERENCE: u64 = 3;
const TAG_CIRCLE: u64 = 4;

/// Validates `config` and runs the experiment it names.
pub fn run(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    match config.experiment {
        ExperimentKind::Convergence => run_convergence(config),
        ExperimentKind::Jensen => run_jensen(config),
        ExperimentKind::Anticoncentration => run_anticoncentration(config),
        ExperimentKind::Growth => run_growth(config),
        ExperimentKind::Lln => run_lln_logminus(config),
        ExperimentKind::Critical => run_critical(config),
    }
}

fn trial_seed(seed: SeedSpec, tag: u64, n: usize, trial: usize) -> SeedSpec {
    seed.derive(tag, n as u64).derive(tag, trial as u64)
}

/// Least-squares slope of `log y` against `log n`.
pub fn loglog_slope(points: &[(usize, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(n, y)| *n > 0 && *y > 0.0 && y.is_finite())
        .map(|&(n, y)| ((n as f64).ln(), y.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// `a / b`, reading `0/0` and `x/0` as an unbounded improvement.
fn improvement(first: f64, last: f64) -> f64 {
    if last == 0.0 {
        f64::INFINITY
    } else {
        first / last
    }
}
