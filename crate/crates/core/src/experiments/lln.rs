use std::time::Instant;

use num_complex::Complex64;

use super::config::ExperimentConfig;
use super::report::{Comparison, Report, Verdict};
use super::{TAG_REFERENCE, TAG_ROOTS, TAG_TRANSFORM};
use crate::error::{Error, Result};
use crate::logderiv::log_minus_unchecked;
use crate::measures::{log_minus_integral, reference_quantization, EmpiricalMeasure};
use crate::mobius::{sample_mobius, MobiusTransform};
use crate::sampler::sample;
use crate::sum::pairwise;

/// Redraws of `u` allowed when an atom lands on its zero.
const MAX_RESAMPLES: usize = 100;
/// Both sides sum the same terms in different orders.
const ROUNDOFF_FLOOR: f64 = 1e-12;

/// Mean and standard error of `values`.
fn mean_and_error(values: &[f64]) -> (f64, f64) {
    let k = values.len() as f64;
    let mean = pairwise(values.len(), |i| values[i]) / k;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = pairwise(values.len(), |i| (values[i] - mean).powi(2)) / (k - 1.0);
    (mean, (var / k).sqrt())
}

fn log_minus_values(points: &[Complex64], u: &MobiusTransform) -> Vec<f64> {
    points.iter().map(|&z| log_minus_unchecked(u.modulus_at(z))).collect()
}

/// `∫ log⁻|u| dμ_n` along one trajectory against a large-sample reference
/// for `∫ log⁻|u| dμ`.
pub fn run_lln_logminus(config: &ExperimentConfig) -> Result<Report> {
    let mut cfg = config.resolved();
    let n_max = *cfg.n_schedule.last().expect("validated nonempty");
    let traj = sample(&cfg.measure, cfg.seed.derive(TAG_ROOTS, 0), n_max)?;

    let mut resamples = 0usize;
    let u = match cfg.options.transform {
        Some(u) => {
            if log_minus_values(&traj.samples, &u).iter().any(|v| v.is_infinite()) {
                return Err(Error::Parameter(
                    "the given transform vanishes at a sampled root; the integral is infinite".into(),
                ));
            }
            u
        }
        None => {
            let mut chosen = None;
            for attempt in 0..=MAX_RESAMPLES {
                let u = sample_mobius(cfg.seed.derive(TAG_TRANSFORM, attempt as u64));
                if log_minus_values(&traj.samples, &u).iter().all(|v| v.is_finite()) {
                    chosen = Some(u);
                    break;
                }
                resamples += 1;
            }
            let u = chosen.ok_or_else(|| {
                Error::Degenerate(format!("every transform drawn in {MAX_RESAMPLES} attempts vanishes at a root"))
            })?;
            cfg.options.transform = Some(u);
            u
        }
    };
    let mut report = Report::new(cfg.clone());
    report.stat("transform_resamples", resamples as f64);

    let t0 = Instant::now();
    let ref_size = cfg.options.reference_size.unwrap_or(1_000_000);
    let reference = reference_quantization(&cfg.measure, ref_size, cfg.seed.derive(TAG_REFERENCE, 0))?;
    let ref_values = log_minus_values(reference.atoms(), &u);
    let (ref_mean, ref_error) = mean_and_error(&ref_values);
    report.stat("reference", ref_mean);
    report.stat("reference_std_error", ref_error);
    report.add_timing("reference", t0);
    if ref_mean.is_infinite() {
        report.note("a reference point lies on the zero of u; no verdict");
    }

    let values = log_minus_values(&traj.samples, &u);
    let mut last = None;
    for &n in &cfg.n_schedule {
        let mu_n = EmpiricalMeasure::from_points(traj.prefix(n))?;
        let value = log_minus_integral(&mu_n, &u);
        let (_, err) = mean_and_error(&values[..n]);
        report.row(n, "log_minus_mu_n", value);
        report.row(n, "reference", ref_mean);
        report.row(n, "difference", value - ref_mean);
        report.row(n, "std_error_mu_n", err);
        last = Some((value - ref_mean, err));
    }

    let sigmas = cfg.tolerances.lln_sigmas;
    match last {
        Some((diff, err)) if ref_mean.is_finite() => {
            let combined = (err * err + ref_error * ref_error).sqrt();
            let threshold = sigmas * combined + ROUNDOFF_FLOOR * (1.0 + ref_mean.abs());
            report.stat("final_threshold", threshold);
            report.verdict(Verdict::at_most("final_difference", diff.abs(), threshold));
        }
        _ => report.verdict(Verdict::inconclusive("final_difference", Comparison::AtMost, sigmas)),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiments::config::ExperimentKind;
    use crate::sampler::BaseMeasure;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dirac_gives_log_two_everywhere() {
        let mut cfg = ExperimentConfig::new(ExperimentKind::Lln, BaseMeasure::dirac(c(0.5, 0.0)), vec![1, 10, 100]);
        cfg.options.transform = Some(MobiusTransform::identity());
        cfg.options.reference_size = Some(1000);
        let r = run_lln_logminus(&cfg).unwrap();
        for (_, v) in r.series("log_minus_mu_n") {
            assert!((v - 2f64.ln()).abs() < 1e-15);
        }
        assert!((r.summary_value("reference").unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!(r.passed());
    }

    #[test]
    fn support_outside_the_disk_gives_zero() {
        let mu = BaseMeasure::uniform_circle(c(0.0, 0.0), 3.0).unwrap();
        let mut cfg = ExperimentConfig::new(ExperimentKind::Lln, mu, vec![10, 100]);
        cfg.options.transform = Some(MobiusTransform::identity());
        cfg.options.reference_size = Some(1000);
        let r = run_lln_logminus(&cfg).unwrap();
        assert!(r.series("log_minus_mu_n").iter().all(|&(_, v)| v == 0.0));
        assert_eq!(r.summary_value("reference"), Some(0.0));
    }

    #[test]
    fn drawn_transform_is_echoed() {
        let mu = BaseMeasure::uniform_disk(c(0.0, 0.0), 1.0).unwrap();
        let mut cfg = ExperimentConfig::new(ExperimentKind::Lln, mu, vec![100, 1000]);
        cfg.options.reference_size = Some(10_000);
        let r = run_lln_logminus(&cfg).unwrap();
        assert_eq!(r.config.options.transform, Some(sample_mobius(cfg.seed.derive(TAG_TRANSFORM, 0))));
    }

    #[test]
    fn error_estimate() {
        let (m, e) = mean_and_error(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        // sample variance 5/3, so the error is √(5/12)
        assert!((e - (5.0f64 / 12.0).sqrt()).abs() < 1e-15);
    }
}
