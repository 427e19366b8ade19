use std::time::Instant;

use super::config::{CircleSpec, ExperimentConfig};
use super::report::{Comparison, Report, Verdict};
use super::{TAG_CIRCLE, TAG_ROOTS};
use crate::error::{Error, Result};
use crate::logderiv::{circle_sup_norm, log_plus, Circle, RootSet};
use crate::sampler::{sample, standard_complex_gaussian, SeedSpec};

/// Draws a generic circle: centre `N(0, 1/4)` complex Gaussian, radius
/// uniform on `(0.5, 2)`.
pub fn draw_circle(seed: SeedSpec) -> CircleSpec {
    let mut stream = seed.stream();
    stream.seek(0);
    let (u1, u2) = stream.uniform_pair();
    let (u3, _) = stream.uniform_pair();
    CircleSpec {
        center: standard_complex_gaussian(u1, u2) * 0.5,
        radius: 0.5 + 1.5 * u3,
    }
}

/// `log⁺‖S_n‖_{C(a,r)} / log n` along one trajectory, for a circle fixed
/// once. The sup-norm is taken at `m` and `2m` points; the finer value
/// carries the verdict.
pub fn run_growth(config: &ExperimentConfig) -> Result<Report> {
    let mut cfg = config.resolved();
    let spec = *cfg
        .options
        .circle
        .get_or_insert_with(|| draw_circle(config.seed.derive(TAG_CIRCLE, 0)));
    let circle = Circle::new(spec.center, spec.radius)?;
    let m = cfg.tolerances.m_circle;
    let mut report = Report::new(cfg.clone());

    let mut traj = sample(&cfg.measure, cfg.seed.derive(TAG_ROOTS, 0), cfg.n_schedule[0])?;
    let mut worst: Option<f64> = None;
    for &n in &cfg.n_schedule {
        let t0 = Instant::now();
        traj = traj.extend(n)?;
        let rs = RootSet::from_slice(traj.prefix(n))?;
        let (coarse, fine) = match (circle_sup_norm(&rs, &circle, m), circle_sup_norm(&rs, &circle, 2 * m)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e @ Error::PoleOnContour { .. }), _) | (_, Err(e @ Error::PoleOnContour { .. })) => {
                report.row(n, "pole_on_contour", 1.0);
                report.note(format!("n = {n} skipped: {e}"));
                continue;
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        let log_n = (n as f64).ln();
        let ratio = log_plus(coarse)? / log_n;
        let ratio_fine = log_plus(fine)? / log_n;
        report.row(n, "sup_norm", coarse);
        report.row(n, "sup_norm_2m", fine);
        report.row(n, "ratio", ratio);
        report.row(n, "ratio_2m", ratio_fine);
        report.row(n, "refinement_delta", (ratio_fine - ratio).abs());
        worst = Some(worst.map_or(ratio_fine, |w: f64| w.max(ratio_fine)));
        report.add_timing(&format!("n={n}"), t0);
    }
    let threshold = cfg.tolerances.max_growth_ratio;
    match worst {
        Some(w) => report.verdict(Verdict::at_most("max_ratio", w, threshold)),
        None => report.verdict(Verdict::inconclusive("max_ratio", Comparison::AtMost, threshold)),
    }
    Ok(report)
}
