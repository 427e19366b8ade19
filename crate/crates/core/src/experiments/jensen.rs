use std::time::Instant;

use rayon::prelude::*;

use super::config::ExperimentConfig;
use super::report::{Report, Verdict};
use super::{trial_seed, TAG_ROOTS, TAG_TRANSFORM};
use crate::critical::{critical_points, CriticalSet};
use crate::error::{Error, Result};
use crate::logderiv::{
    circle_sup_norm, circle_sup_norm_anchored, circle_sup_norm_refined, eval_s, log_minus_unchecked, pole_tolerance, Circle, RootSet,
};
use crate::mobius::{sample_mobius, GeneralizedCircle, MobiusTransform};
use crate::sampler::sample;
use crate::sum::pairwise;

/// Redraws of `u` allowed per trial before the trial is skipped.
pub const MAX_RESAMPLES: usize = 100;

#[derive(Debug, Clone, Copy)]
struct Trial {
    lhs: f64,
    rhs: f64,
    /// RHS with the sup-norm grid anchored at the roots.
    rhs_anchored: f64,
    /// Relative change of the sup-norm from `m` to `2m` points.
    refinement_delta: f64,
    resamples: usize,
}

enum Outcome {
    Done(Trial),
    Skipped { reason: String },
}

/// `Σ_ρ log⁻|u(ρ)| − Σ_ζ log⁻|u(ζ)|` over critical points `ρ` and roots `ζ`.
pub fn jensen_lhs(roots: &RootSet, crit: &CriticalSet, u: &MobiusTransform) -> f64 {
    let side = |pts: &[num_complex::Complex64]| pairwise(pts.len(), |i| log_minus_unchecked(u.modulus_at(pts[i])));
    side(&crit.points) - side(roots.roots())
}

/// `log‖S‖_{C'} − log|S(a)|` with the sup-norm taken over `m` circle points.
/// `None` when `u` is not admissible for these roots.
pub fn jensen_rhs(roots: &RootSet, crit: &CriticalSet, u: &MobiusTransform, m: usize) -> Result<Option<f64>> {
    rhs_with(roots, crit, u, |c| circle_sup_norm(roots, c, m))
}

fn rhs_with(
    roots: &RootSet,
    crit: &CriticalSet,
    u: &MobiusTransform,
    sup_norm: impl Fn(&Circle) -> Result<f64>,
) -> Result<Option<f64>> {
    let Some(a) = u.zero_preimage().finite() else {
        return Ok(None);
    };
    let GeneralizedCircle::Circle(contour) = u.preimage_unit_circle() else {
        return Ok(None);
    };
    let tau = pole_tolerance(a);
    if roots.nearest(a).1 <= tau || crit.points.iter().any(|p| (p - a).norm() <= tau) {
        return Ok(None);
    }
    let sup = match sup_norm(&contour) {
        Ok(v) => v,
        Err(Error::PoleOnContour { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    Ok(Some(sup.ln() - eval_s(roots, a).modulus().ln()))
}

fn run_trial(cfg: &ExperimentConfig, n: usize, t: usize) -> Result<Outcome> {
    let traj = sample(&cfg.measure, trial_seed(cfg.seed, TAG_ROOTS, n, t), n)?;
    let roots = RootSet::new(traj.samples)?;
    let crit = match critical_points(&roots, cfg.tolerances.tol_solver) {
        Ok(c) => c,
        Err(e) => return Ok(Outcome::Skipped { reason: e.to_string() }),
    };
    let base = trial_seed(cfg.seed, TAG_TRANSFORM, n, t);
    for attempt in 0..=MAX_RESAMPLES {
        let u = sample_mobius(base.derive(TAG_TRANSFORM, attempt as u64));
        let m = cfg.tolerances.m_circle;
        if let Some(rhs) = jensen_rhs(&roots, &crit, &u, m)? {
            let rhs_anchored = rhs_with(&roots, &crit, &u, |c| circle_sup_norm_anchored(&roots, c, m))?
                .expect("admissible for the plain grid");
            let GeneralizedCircle::Circle(contour) = u.preimage_unit_circle() else {
                unreachable!("admissible transforms have a circle preimage")
            };
            let refinement_delta = circle_sup_norm_refined(&roots, &contour, m, 0.0, 2 * m)?.last_delta;
            return Ok(Outcome::Done(Trial {
                lhs: jensen_lhs(&roots, &crit, &u),
                rhs,
                rhs_anchored,
                refinement_delta,
                resamples: attempt,
            }));
        }
    }
    Ok(Outcome::Skipped {
        reason: format!("no admissible transform after {MAX_RESAMPLES} redraws"),
    })
}

/// Per trial: fresh roots, a random Möbius map `u`, and both sides of the
/// Jensen-type inequality on `C' = u⁻¹(C)`.
///
/// `violations_anchored` recounts violations with the sup-norm grid
/// supplemented by the contour points nearest to the roots; it carries no
/// verdict.
pub fn run_jensen(config: &ExperimentConfig) -> Result<Report> {
    let cfg = config.resolved();
    let tol = cfg.tolerances.clone();
    let mut report = Report::new(cfg.clone());
    for &n in &cfg.n_schedule {
        let t0 = Instant::now();
        let outcomes: Vec<Outcome> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| run_trial(&cfg, n, t))
            .collect::<Result<_>>()?;
        let mut passed = 0usize;
        let mut passed_anchored = 0usize;
        let mut valid = 0usize;
        let mut skipped = 0usize;
        let mut resamples = 0usize;
        let mut max_excess = f64::NEG_INFINITY;
        let mut max_delta: f64 = 0.0;
        for (t, o) in outcomes.iter().enumerate() {
            match o {
                Outcome::Done(tr) => {
                    valid += 1;
                    resamples += tr.resamples;
                    if tr.lhs <= tr.rhs + tol.eps_disc {
                        passed += 1;
                    }
                    if tr.lhs <= tr.rhs_anchored + tol.eps_disc {
                        passed_anchored += 1;
                    }
                    max_excess = max_excess.max(tr.lhs - tr.rhs);
                    max_delta = max_delta.max(tr.refinement_delta);
                    report.row(n, "trial_lhs", tr.lhs);
                    report.row(n, "trial_rhs", tr.rhs);
                    report.row(n, "trial_normalized_gap", (tr.rhs - tr.lhs) / n as f64);
                }
                Outcome::Skipped { reason } => {
                    skipped += 1;
                    report.note(format!("n = {n}, trial {t} skipped: {reason}"));
                }
            }
        }
        let rate = if valid > 0 { passed as f64 / valid as f64 } else { f64::NAN };
        report.row(n, "pass_rate", rate);
        report.row(n, "violations", (valid - passed) as f64);
        report.row(n, "violations_anchored", (valid - passed_anchored) as f64);
        report.row(n, "valid_trials", valid as f64);
        report.row(n, "skipped", skipped as f64);
        report.row(n, "resamples", resamples as f64);
        report.row(n, "max_excess", max_excess);
        report.row(n, "max_refinement_delta", max_delta);
        report.verdict(Verdict::at_least(format!("pass_rate_n{n}"), rate, tol.min_pass_rate));
        report.add_timing(&format!("n={n}"), t0);
    }
    Ok(report)
}
