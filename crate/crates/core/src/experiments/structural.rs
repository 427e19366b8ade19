use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use super::config::ExperimentConfig;
use super::report::{Report, Verdict};
use super::{trial_seed, TAG_ROOTS};
use crate::critical::geometry::{convex_hull, diameter, hull_distance};
use crate::critical::{critical_points, critical_points_oracle, CriticalSet, ORACLE_MAX_DEGREE};
use crate::error::Result;
use crate::logderiv::RootSet;
use crate::matching::match_multisets;
use crate::sampler::sample;
use crate::sum::pairwise;

/// Structural checks on one root set and its critical points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Structure {
    pub count_ok: bool,
    /// `|Σ w − (n−1)/n · Σ z|` relative to the size of both sums.
    pub vieta_rel: f64,
    /// Largest distance of a critical point to the root hull, relative to
    /// the hull diameter.
    pub hull_rel: f64,
    /// Largest matched distance to the matrix oracle, when `n` allows it.
    pub oracle_distance: Option<f64>,
}

pub fn check_structure(roots: &RootSet, crit: &CriticalSet) -> Result<Structure> {
    let n = roots.len();
    let z = roots.roots();
    let w = &crit.points;
    let factor = (n - 1) as f64 / n as f64;
    let sum_w: Complex64 = pairwise(w.len(), |i| w[i]);
    let sum_z: Complex64 = pairwise(n, |k| z[k]);
    let scale = pairwise(w.len(), |i| w[i].norm()).max(factor * pairwise(n, |k| z[k].norm()));
    let vieta_abs = (sum_w - sum_z * factor).norm();
    let vieta_rel = if scale > 0.0 { vieta_abs / scale } else { vieta_abs };

    let hull = convex_hull(z);
    let diam = diameter(&hull);
    let dist = w.iter().map(|&p| hull_distance(&hull, p)).fold(0.0, f64::max);
    let hull_rel = if diam > 0.0 { dist / diam } else { dist };

    let oracle_distance = if n <= ORACLE_MAX_DEGREE {
        let oracle = critical_points_oracle(roots)?;
        Some(match_multisets(w, &oracle.points).max_distance)
    } else {
        None
    };
    Ok(Structure {
        count_ok: w.len() == n - 1,
        vieta_rel,
        hull_rel,
        oracle_distance,
    })
}

/// Critical-point count, the sum identity, Gauss–Lucas containment and
/// oracle agreement over fresh root sets.
pub fn run_critical(config: &ExperimentConfig) -> Result<Report> {
    let cfg = config.resolved();
    let tol = cfg.tolerances.clone();
    let mut report = Report::new(cfg.clone());
    let mut totals = (0usize, 0usize, 0.0f64, 0.0f64, None::<f64>);
    for &n in &cfg.n_schedule {
        let t0 = Instant::now();
        let results: Vec<Option<(Structure, f64)>> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let traj = sample(&cfg.measure, trial_seed(cfg.seed, TAG_ROOTS, n, t), n)?;
                let rs = RootSet::new(traj.samples)?;
                match critical_points(&rs, tol.tol_solver) {
                    Ok(cs) => Ok(Some((check_structure(&rs, &cs)?, cs.worst_residual()))),
                    Err(_) => Ok(None),
                }
            })
            .collect::<Result<_>>()?;
        let failures = results.iter().filter(|r| r.is_none()).count();
        let ok: Vec<&(Structure, f64)> = results.iter().flatten().collect();
        let mismatches = ok.iter().filter(|(s, _)| !s.count_ok).count();
        let vieta = ok.iter().map(|(s, _)| s.vieta_rel).fold(0.0, f64::max);
        let hull = ok.iter().map(|(s, _)| s.hull_rel).fold(0.0, f64::max);
        let residual = ok.iter().map(|(_, r)| *r).fold(0.0, f64::max);
        let oracle = ok
            .iter()
            .filter_map(|(s, _)| s.oracle_distance)
            .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |a| a.max(d))));
        report.row(n, "solver_failures", failures as f64);
        report.row(n, "count_mismatches", mismatches as f64);
        report.row(n, "vieta_max_rel", vieta);
        report.row(n, "hull_max_rel", hull);
        report.row(n, "worst_residual", residual);
        if let Some(d) = oracle {
            report.row(n, "oracle_max_distance", d);
        }
        totals.0 += failures;
        totals.1 += mismatches;
        totals.2 = totals.2.max(vieta);
        totals.3 = totals.3.max(hull);
        if let Some(d) = oracle {
            totals.4 = Some(totals.4.map_or(d, |a| a.max(d)));
        }
        report.add_timing(&format!("n={n}"), t0);
    }
    report.verdict(Verdict::at_most("solver_failures", totals.0 as f64, 0.0));
    report.verdict(Verdict::at_most("count_mismatches", totals.1 as f64, 0.0));
    report.verdict(Verdict::at_most("vieta_max_rel", totals.2, tol.vieta_rel));
    report.verdict(Verdict::at_most("hull_max_rel", totals.3, tol.hull_rel));
    if let Some(d) = totals.4 {
        report.verdict(Verdict::at_most("oracle_max_distance", d, tol.oracle_tol));
    }
    Ok(report)
}
