use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::config::{default_probes, Centering, ExperimentConfig, DEFAULT_PROJECTION_ANGLE};
use super::report::{Comparison, Report, Verdict};
use super::{loglog_slope, trial_seed, TAG_ROOTS};
use crate::error::{Error, Result};
use crate::sampler::{sample, BaseMeasure};
use crate::sum::pairwise;

/// Relative singular-value cutoff for the non-degeneracy rank test.
const RANK_TOL: f64 = 1e-9;
/// Allowed rise of `p̂_n` between consecutive `n`, in standard errors.
const MONOTONE_SIGMAS: f64 = 3.0;

fn projection(probe: Complex64, z: Complex64, rot: Complex64) -> f64 {
    (rot / (probe - z)).re
}

/// Rejects probe sets for which the projected vector
/// `(Re(e^{−iφ}/(z_j − Z)))_j` is degenerate under `measure`.
///
/// For a finite-support measure the vector is non-degenerate iff the rows
/// `(V(a_k), 1)` over the atoms `a_k` span `ℝ^{d+1}`. Continuous measures
/// are accepted.
pub fn check_nondegenerate(measure: &BaseMeasure, probes: &[Complex64], angle: f64) -> Result<()> {
    let BaseMeasure::FiniteSupport { atoms, .. } = measure else {
        return Ok(());
    };
    if let Some(p) = probes.iter().find(|p| atoms.contains(p)) {
        return Err(Error::Parameter(format!("probe {p} is an atom of the base measure")));
    }
    let rot = Complex64::from_polar(1.0, -angle);
    let d = probes.len();
    let m = DMatrix::<f64>::from_fn(atoms.len(), d + 1, |k, j| {
        if j < d {
            projection(probes[j], atoms[k], rot)
        } else {
            1.0
        }
    });
    let scale = m.amax();
    let rank = m.rank(RANK_TOL * scale);
    if rank < d + 1 {
        return Err(Error::Degenerate(format!(
            "{} atoms give rank {rank} < {} for {d} probes; some combination of the coordinates is almost surely constant",
            atoms.len(),
            d + 1
        )));
    }
    Ok(())
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        0.5 * (v[k / 2 - 1] + v[k / 2])
    }
}

struct TrialSums {
    projected: Vec<f64>,
    complex_norm: f64,
}

/// Small-ball frequencies of `(S_n(z_1), …, S_n(z_d))` over fresh trials,
/// and the log-log slope of their decay in `n`.
///
/// Each coordinate is projected to `Re(e^{−iφ} S_n(z_j))` and the ball of
/// radius `r_ball` is centred at the coordinate-wise median over trials
/// (or at the origin). The frequency of the uncentred complex event
/// `‖(S_n(z_j))_j‖ ≤ r_ball` is reported alongside.
pub fn run_anticoncentration(config: &ExperimentConfig) -> Result<Report> {
    let cfg = config.resolved();
    let tol = cfg.tolerances.clone();
    let probes = cfg.options.probes.clone().unwrap_or_else(default_probes);
    let angle = cfg.options.projection_angle.unwrap_or(DEFAULT_PROJECTION_ANGLE);
    let centering = cfg.options.centering.unwrap_or_default();
    let d = probes.len();
    let r_ball = tol.r_ball.unwrap_or((d as f64).sqrt());
    let max_slope = tol.max_slope.unwrap_or(-0.4 * d as f64);
    check_nondegenerate(&cfg.measure, &probes, angle)?;
    let rot = Complex64::from_polar(1.0, -angle);

    let mut report = Report::new(cfg.clone());
    let mut fit_points = Vec::new();
    let mut p_hats: Vec<(usize, f64, f64)> = Vec::new();
    for &n in &cfg.n_schedule {
        let t0 = Instant::now();
        let sums: Vec<TrialSums> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let z = sample(&cfg.measure, trial_seed(cfg.seed, TAG_ROOTS, n, t), n)?.samples;
                let s: Vec<Complex64> = probes
                    .iter()
                    .map(|&p| pairwise(z.len(), |k| (p - z[k]).inv()))
                    .collect();
                Ok(TrialSums {
                    projected: s.iter().map(|v| (rot * v).re).collect(),
                    complex_norm: s.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt(),
                })
            })
            .collect::<Result<_>>()?;

        let center: Vec<f64> = match centering {
            Centering::Median => (0..d).map(|j| median(sums.iter().map(|s| s.projected[j]).collect())).collect(),
            Centering::Origin => vec![0.0; d],
        };
        let hits = sums
            .iter()
            .filter(|s| {
                let r2: f64 = s.projected.iter().zip(&center).map(|(x, c)| (x - c).powi(2)).sum();
                r2.sqrt() <= r_ball
            })
            .count();
        let origin_hits = sums.iter().filter(|s| s.complex_norm <= r_ball).count();
        let trials = cfg.trials as f64;
        let p = hits as f64 / trials;
        let se = (p * (1.0 - p) / trials).sqrt();
        report.row(n, "p_hat", p);
        report.row(n, "hits", hits as f64);
        report.row(n, "std_error", se);
        report.row(n, "p_hat_origin_complex", origin_hits as f64 / trials);
        for (j, c) in center.iter().enumerate() {
            report.row(n, &format!("center_{j}"), *c);
        }
        if hits >= tol.min_hits {
            fit_points.push((n, p));
        }
        p_hats.push((n, p, se));
        report.add_timing(&format!("n={n}"), t0);
    }

    match loglog_slope(&fit_points) {
        Some(s) => {
            report.stat("slope", s);
            report.stat("fit_rows", fit_points.len() as f64);
            report.verdict(Verdict::at_most("slope", s, max_slope));
        }
        None => {
            report.note(format!(
                "fewer than two rows reach {} hits; raise trials to resolve p_hat",
                tol.min_hits
            ));
            report.verdict(Verdict::inconclusive("slope", Comparison::AtMost, max_slope));
        }
    }
    if p_hats.len() >= 2 {
        let worst_rise = p_hats
            .windows(2)
            .map(|w| {
                let se = (w[0].2.powi(2) + w[1].2.powi(2)).sqrt();
                let rise = w[1].1 - w[0].1;
                if rise <= 0.0 {
                    0.0
                } else if se > 0.0 {
                    rise / se
                } else {
                    f64::INFINITY
                }
            })
            .fold(0.0, f64::max);
        report.stat("max_rise_in_std_errors", worst_rise);
        report.verdict(Verdict::at_most("p_hat_nonincreasing", worst_rise, MONOTONE_SIGMAS));
    }
    Ok(report)
}
