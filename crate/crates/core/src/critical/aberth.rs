//! Aberth–Ehrlich iteration for the `r − 1` zeros of
//! `Q = S · ∏_k (X − z_k)` where `S(w) = Σ_k m_k/(w − z_k)` runs over the
//! distinct roots `z_k` with multiplicities `m_k`.
//!
//! With `T(w) = Σ_k 1/(w − z_k)` we have `Q'/Q = S'/S + T`, so the Aberth
//! correction for iterate `i` is
//!
//! ```text
//! Δ_i = 1 / (S'/S (w_i) + T(w_i) − Σ_{l≠i} 1/(w_i − w_l))
//! ```
//!
//! Sweeps are Jacobi-style: all corrections of a sweep are computed from the
//! same snapshot, in parallel, and applied together.

use num_complex::Complex64;
use rayon::prelude::*;

use super::{AberthOptions, Weighted};
use crate::error::{Error, Result};
use crate::sum::pairwise;

/// An iterate whose `|S|` is below this multiple of the rounding bound
/// `ε · (Σ m_k/|w − z_k| + |S'(w)|·|w|)` cannot be improved further.
const ROUNDOFF_FACTOR: f64 = 8.0;

#[derive(Clone, Copy)]
enum Step {
    Done(f64),
    Move(Complex64),
}

/// Returns the zeros of `Q`, their residual certificates, and the number of
/// sweeps used.
pub(super) fn solve(w: &Weighted, opts: &AberthOptions) -> Result<(Vec<Complex64>, Vec<f64>, usize)> {
    let r = w.roots.len();
    match r {
        0 | 1 => return Ok((Vec::new(), Vec::new(), 0)),
        2 => {
            let (m1, m2) = (w.mult[0] as f64, w.mult[1] as f64);
            let z = (w.roots[1] * m1 + w.roots[0] * m2) / (m1 + m2);
            return Ok((vec![z], vec![w.residual(z)], 0));
        }
        _ => {}
    }

    let mut iterates = initial_points(w);
    let p = iterates.len();
    let mut last_step = vec![f64::INFINITY; p];
    let mut done: Vec<Option<f64>> = vec![None; p];

    for sweep in 1..=opts.max_sweeps {
        let snapshot = &iterates;
        let steps: Vec<Option<Step>> = (0..p)
            .into_par_iter()
            .map(|i| {
                if done[i].is_some() {
                    return None;
                }
                Some(step(w, snapshot, i, last_step[i], opts.tol))
            })
            .collect();

        let mut active = 0;
        for (i, s) in steps.into_iter().enumerate() {
            match s {
                None => {}
                Some(Step::Done(res)) => done[i] = Some(res),
                Some(Step::Move(delta)) => {
                    active += 1;
                    last_step[i] = delta.norm() / (1.0 + iterates[i].norm());
                    iterates[i] -= delta;
                }
            }
        }
        if active == 0 {
            let residuals = done.into_iter().map(|d| d.unwrap_or(0.0)).collect();
            return Ok((iterates, residuals, sweep));
        }
    }

    let worst_residual = iterates
        .iter()
        .zip(&done)
        .filter(|(_, d)| d.is_none())
        .map(|(&z, _)| w.residual(z))
        .fold(0.0, f64::max);
    Err(Error::Convergence {
        sweeps: opts.max_sweeps,
        worst_residual,
    })
}

/// One start per distinct root, `w_k = z_k − m_k/S_{−k}(z_k)`, where
/// `S_{−k}` omits root `k`: the first-order location of a zero of `S` next
/// to an isolated root. The root with the smallest `|S_{−k}(z_k)|` gets no
/// start, leaving `r − 1` points.
fn initial_points(w: &Weighted) -> Vec<Complex64> {
    let r = w.roots.len();
    let starts: Vec<(Complex64, f64)> = (0..r)
        .into_par_iter()
        .map(|k| {
            let z = w.roots[k];
            let rest = pairwise(r, |j| {
                if j == k {
                    Complex64::new(0.0, 0.0)
                } else {
                    (z - w.roots[j]).inv() * w.mult[j] as f64
                }
            });
            let offset = Complex64::new(w.mult[k] as f64, 0.0) / rest;
            (z - offset, rest.norm())
        })
        .collect();
    let skip = (0..r)
        .min_by(|&a, &b| starts[a].1.total_cmp(&starts[b].1))
        .unwrap_or(0);
    starts
        .into_iter()
        .enumerate()
        .filter(|&(k, _)| k != skip)
        .map(|(_, (p, _))| p)
        .collect()
}

fn step(w: &Weighted, iterates: &[Complex64], i: usize, last_step: f64, tol: f64) -> Step {
    let z = iterates[i];
    let roots = &w.roots;

    let dmin = roots.iter().map(|r| (z - r).norm()).fold(f64::INFINITY, f64::min);
    let scale = 1.0 + z.norm();
    if dmin <= 1e-14 * scale {
        // Sitting on a pole of S; step off it before evaluating.
        let nudge = Complex64::from_polar(1e-8 * scale, 1.0 + i as f64);
        return Step::Move(-nudge);
    }

    let ((s, sp), (t, mag)) = pairwise(roots.len(), |k| {
        let inv = (z - roots[k]).inv();
        let weighted = inv * w.mult[k] as f64;
        ((weighted, -weighted * inv), (inv, weighted.norm()))
    });

    let residual = s.norm() * dmin;
    // Rounding in the sum, plus the change in S across one ulp of w.
    let at_roundoff = s.norm() <= ROUNDOFF_FACTOR * f64::EPSILON * (mag + sp.norm() * z.norm());
    if at_roundoff || (residual <= tol && last_step < tol) {
        return Step::Done(residual);
    }

    let repulsion: Complex64 = pairwise(iterates.len(), |l| {
        if l == i {
            Complex64::new(0.0, 0.0)
        } else {
            (z - iterates[l]).inv()
        }
    });
    let denom = sp / s + t - repulsion;
    let delta = denom.inv();
    if !(delta.re.is_finite() && delta.im.is_finite()) {
        return Step::Move(-Complex64::from_polar(1e-8 * scale, 2.0 + i as f64));
    }
    Step::Move(delta)
}
