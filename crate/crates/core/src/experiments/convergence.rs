use std::time::Instant;

use super::config::ExperimentConfig;
use super::report::{Comparison, Report, Verdict};
use super::{improvement, loglog_slope, TAG_REFERENCE, TAG_ROOTS};
use crate::critical::{critical_points, finite_support_critical, FiniteSupportInstance};
use crate::error::Result;
use crate::logderiv::RootSet;
use crate::matching::match_multisets;
use crate::measures::{quadrant_discrepancy, reference_quantization, sliced_w1, EmpiricalMeasure};
use crate::sampler::{sample, BaseMeasure};

/// Largest `n` at which finite-support output is matched against the
/// general solver (the matching is cubic).
const CROSS_CHECK_MAX_N: usize = 256;

struct Distances {
    n: usize,
    to_mu_n: f64,
    to_reference: f64,
    quadrant: f64,
}

/// Distances between `ν_n` and `μ_n` (and a large-sample proxy of `μ`)
/// along one trajectory.
pub fn run_convergence(config: &ExperimentConfig) -> Result<Report> {
    let cfg = config.resolved();
    let tol = cfg.tolerances.clone();
    let mut report = Report::new(cfg.clone());

    let t0 = Instant::now();
    let ref_size = cfg.options.reference_size.unwrap_or(100_000);
    let reference = reference_quantization(&cfg.measure, ref_size, cfg.seed.derive(TAG_REFERENCE, 0))?;
    report.add_timing("reference", t0);

    let mut traj = sample(&cfg.measure, cfg.seed.derive(TAG_ROOTS, 0), cfg.n_schedule[0])?;
    let mut done: Vec<Distances> = Vec::new();
    let mut failed_last = false;
    for &n in &cfg.n_schedule {
        let t0 = Instant::now();
        traj = traj.extend(n)?;
        let roots = traj.prefix(n);
        let rs = RootSet::from_slice(roots)?;
        let cs = match critical_points(&rs, tol.tol_solver) {
            Ok(cs) => cs,
            Err(e) => {
                report.row(n, "solver_failed", 1.0);
                report.note(format!("n = {n}: {e}"));
                failed_last = true;
                continue;
            }
        };
        failed_last = false;
        let nu = EmpiricalMeasure::from_points(&cs.points)?;
        let mu_n = EmpiricalMeasure::from_points(roots)?;
        let d = Distances {
            n,
            to_mu_n: sliced_w1(&nu, &mu_n, tol.directions)?,
            to_reference: sliced_w1(&nu, &reference, tol.directions)?,
            quadrant: quadrant_discrepancy(&nu, &mu_n),
        };
        report.row(n, "sliced_w1_nu_mu_n", d.to_mu_n);
        report.row(n, "sliced_w1_nu_reference", d.to_reference);
        report.row(n, "quadrant_nu_mu_n", d.quadrant);
        report.row(n, "sliced_w1_mu_n_reference", sliced_w1(&mu_n, &reference, tol.directions)?);
        report.row(n, "escaped_mass_nu", nu.escaped_mass(tol.r_infty));
        report.row(n, "escaped_mass_mu_n", mu_n.escaped_mass(tol.r_infty));
        report.row(n, "worst_residual", cs.worst_residual());
        report.row(n, "sweeps", cs.sweeps as f64);
        report.row(n, "near_duplicates_merged", cs.near_duplicates_merged as f64);
        if let BaseMeasure::FiniteSupport { atoms, .. } = &cfg.measure {
            if n <= CROSS_CHECK_MAX_N {
                let counts: Vec<usize> = atoms
                    .iter()
                    .map(|a| roots.iter().filter(|z| *z == a).count())
                    .collect();
                let inst = FiniteSupportInstance::from_counts(atoms, &counts)?;
                let closed = finite_support_critical(&inst)?;
                let m = match_multisets(&closed.points, &cs.points);
                report.row(n, "finite_support_agreement", m.max_distance);
            }
        }
        report.add_timing(&format!("n={n}"), t0);
        done.push(d);
    }

    if let Some(rate) = loglog_slope(&done.iter().map(|d| (d.n, d.to_mu_n)).collect::<Vec<_>>()) {
        report.stat("empirical_rate_sliced_w1_nu_mu_n", rate);
    }

    let last_n = *cfg.n_schedule.last().expect("validated nonempty");
    match (done.first(), done.last()) {
        (Some(first), Some(last)) if !failed_last && last.n == last_n => {
            if first.n < last.n {
                report.verdict(Verdict::at_least(
                    "improvement_sliced_w1_nu_mu_n",
                    improvement(first.to_mu_n, last.to_mu_n),
                    tol.min_improvement,
                ));
                if cfg.measure.has_first_moment() {
                    report.verdict(Verdict::at_least(
                        "improvement_sliced_w1_nu_reference",
                        improvement(first.to_reference, last.to_reference),
                        tol.min_improvement,
                    ));
                } else {
                    report.note(
                        "base measure has no first moment: the distance to the reference sample is reported without a verdict",
                    );
                }
            }
            report.verdict(Verdict::at_most("quadrant_at_last_n", last.quadrant, tol.max_quadrant));
        }
        _ => {
            report.note(format!("no critical points at n = {last_n}; verdicts are inconclusive"));
            report.verdict(Verdict::inconclusive(
                "improvement_sliced_w1_nu_mu_n",
                Comparison::AtLeast,
                tol.min_improvement,
            ));
            report.verdict(Verdict::inconclusive("quadrant_at_last_n", Comparison::AtMost, tol.max_quadrant));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::config::ExperimentKind;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dirac_distances_vanish() {
        let cfg = ExperimentConfig::new(ExperimentKind::Convergence, BaseMeasure::dirac(c(0.3, -1.0)), vec![4, 16, 64]);
        let mut cfg = cfg;
        cfg.options.reference_size = Some(1000);
        let r = run_convergence(&cfg).unwrap();
        for stat in ["sliced_w1_nu_mu_n", "sliced_w1_nu_reference", "quadrant_nu_mu_n"] {
            for (_, v) in r.series(stat) {
                assert_eq!(v, 0.0, "{stat}");
            }
        }
        assert!(r.passed());
    }

    #[test]
    fn finite_support_agrees_with_general_solver() {
        let mu = BaseMeasure::uniform_atoms(vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let mut cfg = ExperimentConfig::new(ExperimentKind::Convergence, mu, vec![2, 4]);
        cfg.options.reference_size = Some(1000);
        let r = run_convergence(&cfg).unwrap();
        let agree = r.series("finite_support_agreement");
        assert_eq!(agree.len(), 2);
        for (_, v) in agree {
            assert!(v < 1e-10, "{v}");
        }
    }

    #[test]
    fn circle_distance_decreases() {
        let mu = BaseMeasure::uniform_circle(c(0.0, 0.0), 1.0).unwrap();
        let mut cfg = ExperimentConfig::new(ExperimentKind::Convergence, mu, vec![64, 1024]);
        cfg.options.reference_size = Some(10_000);
        let r = run_convergence(&cfg).unwrap();
        assert!(r.value(1024, "sliced_w1_nu_mu_n").unwrap() < r.value(64, "sliced_w1_nu_mu_n").unwrap());
    }
}
