//! Finitely supported probability measures (`μ_n`, `ν_n`), `log⁻`
//! integrals against Möbius maps, and two weak-convergence diagnostics.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logderiv::log_minus_unchecked;
use crate::mobius::MobiusTransform;
use crate::sampler::{sample, BaseMeasure, SeedSpec};
use crate::sum::pairwise;

pub const DEFAULT_DIRECTIONS: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalMeasure {
    atoms: Vec<Complex64>,
    weights: Vec<f64>,
}

impl EmpiricalMeasure {
    /// Uniform weights `1/|points|`; repeated points are atoms with multiplicity.
    pub fn from_points(points: &[Complex64]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Parameter("an empirical measure needs at least one point".into()));
        }
        let w = 1.0 / points.len() as f64;
        Ok(Self {
            atoms: points.to_vec(),
            weights: vec![w; points.len()],
        })
    }

    pub fn new(atoms: Vec<Complex64>, weights: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() || atoms.len() != weights.len() {
            return Err(Error::Parameter(format!(
                "need matching nonempty atoms and weights, got {} and {}",
                atoms.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::Parameter("weights must be positive".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Parameter(format!("weights sum to {total}, expected 1")));
        }
        Ok(Self { atoms, weights })
    }

    pub fn atoms(&self) -> &[Complex64] {
        &self.atoms
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        pairwise(self.weights.len(), |i| self.weights[i])
    }

    /// Pushforward under `z ↦ αz + β` (weights unchanged).
    pub fn map_affine(&self, alpha: Complex64, beta: Complex64) -> Self {
        Self {
            atoms: self.atoms.iter().map(|z| alpha * z + beta).collect(),
            weights: self.weights.clone(),
        }
    }

    /// Mass of atoms with `|z| > radius`.
    pub fn escaped_mass(&self, radius: f64) -> f64 {
        pairwise(self.atoms.len(), |i| {
            if self.atoms[i].norm() > radius {
                self.weights[i]
            } else {
                0.0
            }
        })
    }
}

/// `∫ log⁻|u| dm = Σ_i w_i log⁻|u(z_i)|`; `+∞` if some atom is a zero of `u`.
/// Atoms at the pole of `u` contribute 0.
pub fn log_minus_integral(m: &EmpiricalMeasure, u: &MobiusTransform) -> f64 {
    log_minus_integral_capped(m, u, f64::INFINITY)
}

/// Same integral with `log⁻` replaced by `min(log⁻, cap)`.
pub fn log_minus_integral_capped(m: &EmpiricalMeasure, u: &MobiusTransform, cap: f64) -> f64 {
    pairwise(m.atoms.len(), |i| {
        let v = log_minus_unchecked(u.modulus_at(m.atoms[i])).min(cap);
        if v == f64::INFINITY {
            f64::INFINITY
        } else {
            m.weights[i] * v
        }
    })
}

/// Exact 1-D Wasserstein-1 distance `∫₀¹ |F₁⁻¹ − F₂⁻¹|` between two weighted
/// point sets, by merging the breakpoints of both quantile functions.
pub fn w1_1d(x1: &[(f64, f64)], x2: &[(f64, f64)]) -> f64 {
    let sorted = |x: &[(f64, f64)]| {
        let mut v = x.to_vec();
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        let total: f64 = v.iter().map(|p| p.1).sum();
        let mut acc = 0.0;
        let cdf: Vec<f64> = v
            .iter()
            .map(|p| {
                acc += p.1;
                acc / total
            })
            .collect();
        (v, cdf)
    };
    let (a, ca) = sorted(x1);
    let (b, cb) = sorted(x2);
    let (mut i, mut j) = (0, 0);
    let mut prev = 0.0;
    let mut acc = 0.0;
    while i < a.len() && j < b.len() {
        let t = ca[i].min(cb[j]);
        acc += (t - prev) * (a[i].0 - b[j].0).abs();
        prev = t;
        if ca[i] == t {
            i += 1;
        }
        if cb[j] == t {
            j += 1;
        }
    }
    acc
}

/// Average over `θ_j = πj/directions` of the 1-D W1 distance between the
/// projections `z ↦ Re(e^{−iθ_j} z)`.
pub fn sliced_w1(m1: &EmpiricalMeasure, m2: &EmpiricalMeasure, directions: usize) -> Result<f64> {
    if m1.is_empty() || m2.is_empty() {
        return Err(Error::Parameter("sliced W1 needs nonempty measures".into()));
    }
    if directions == 0 {
        return Err(Error::Parameter("need at least one direction".into()));
    }
    let project = |m: &EmpiricalMeasure, theta: f64| -> Vec<(f64, f64)> {
        let (s, c) = theta.sin_cos();
        m.atoms
            .iter()
            .zip(&m.weights)
            .map(|(z, &w)| (z.re * c + z.im * s, w))
            .collect()
    };
    let per_direction: Vec<f64> = (0..directions)
        .into_par_iter()
        .map(|j| {
            let theta = PI * j as f64 / directions as f64;
            w1_1d(&project(m1, theta), &project(m2, theta))
        })
        .collect();
    Ok(pairwise(directions, |j| per_direction[j]) / directions as f64)
}

/// Fenwick tree over `f64` sums.
struct Fenwick(Vec<f64>);

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick(vec![0.0; n + 1])
    }

    fn add(&mut self, pos: usize, v: f64) {
        let mut i = pos + 1;
        while i < self.0.len() {
            self.0[i] += v;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over positions `0..=pos`.
    fn prefix(&self, pos: usize) -> f64 {
        let mut i = pos + 1;
        let mut s = 0.0;
        while i > 0 {
            s += self.0[i];
            i -= i & i.wrapping_neg();
        }
        s
    }
}

/// Per-atom increments and a common scale: uniform weights are counted as
/// integers so that full masses come out exactly 1.
fn unit_weights(m: &EmpiricalMeasure) -> (Vec<f64>, f64) {
    let w0 = m.weights[0];
    if m.weights.iter().all(|&w| w == w0) {
        (vec![1.0; m.len()], 1.0 / m.len() as f64)
    } else {
        (m.weights.clone(), 1.0)
    }
}

/// `max_p |m1(Q_p) − m2(Q_p)|` over `p` in the union of the atoms, where
/// `Q_p = {z : Re z ≤ Re p, Im z ≤ Im p}`. Runs in `O(N log N)`.
pub fn quadrant_discrepancy(m1: &EmpiricalMeasure, m2: &EmpiricalMeasure) -> f64 {
    if m1.is_empty() || m2.is_empty() {
        return 0.0;
    }
    let (w1, s1) = unit_weights(m1);
    let (w2, s2) = unit_weights(m2);
    // (point, increment, which measure)
    let mut pts: Vec<(Complex64, f64, bool)> = m1
        .atoms
        .iter()
        .zip(&w1)
        .map(|(&z, &w)| (z, w, true))
        .chain(m2.atoms.iter().zip(&w2).map(|(&z, &w)| (z, w, false)))
        .collect();
    let mut ims: Vec<f64> = pts.iter().map(|p| p.0.im).collect();
    ims.sort_by(f64::total_cmp);
    ims.dedup();
    let rank = |y: f64| ims.partition_point(|&v| v < y);

    pts.sort_by(|a, b| a.0.re.total_cmp(&b.0.re));
    let mut t1 = Fenwick::new(ims.len());
    let mut t2 = Fenwick::new(ims.len());
    let mut worst: f64 = 0.0;
    let mut start = 0;
    while start < pts.len() {
        let re = pts[start].0.re;
        let end = start + pts[start..].iter().take_while(|p| p.0.re == re).count();
        for p in &pts[start..end] {
            if p.2 {
                t1.add(rank(p.0.im), p.1);
            } else {
                t2.add(rank(p.0.im), p.1);
            }
        }
        for p in &pts[start..end] {
            let r = rank(p.0.im);
            worst = worst.max((t1.prefix(r) * s1 - t2.prefix(r) * s2).abs());
        }
        start = end;
    }
    worst.min(1.0)
}

/// Empirical measure of `k` fresh samples of `measure` on stream `seed`:
/// a finite proxy for `μ` with error of order `k^{-1/2}`.
pub fn reference_quantization(measure: &BaseMeasure, k: usize, seed: SeedSpec) -> Result<EmpiricalMeasure> {
    let t = sample(measure, seed, k)?;
    EmpiricalMeasure::from_points(&t.samples)
}
