//! The logarithmic derivative `S(z) = P'(z)/P(z) = Σ_k 1/(z − Z_k)` of
//! `P = ∏(X − Z_k)`, its derivative, and discretised circle sup-norms.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sum::pairwise;

/// Relative pole tolerance: `z` is treated as a pole when it lies within
/// `POLE_TOL · (1 + |z|)` of a root.
pub const POLE_TOL: f64 = 1e-12;

/// Cap on the number of circle points used by refined sup-norms.
pub const MAX_CIRCLE_POINTS: usize = 1 << 16;

pub fn pole_tolerance(z: Complex64) -> f64 {
    POLE_TOL * (1.0 + z.norm())
}

/// Roots `Z_1, …, Z_n` of `P_n`; repeated roots appear repeatedly.
///
/// Summation runs over a canonical order (lexicographic on `(re, im)`), so
/// every evaluation is bit-identical under permutations of the input.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    roots: Vec<Complex64>,
    canonical: Vec<Complex64>,
    perm: Vec<usize>,
}

pub(crate) fn lex_cmp(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl RootSet {
    pub fn new(roots: Vec<Complex64>) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::Parameter("a root set needs at least one root".into()));
        }
        if roots.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Parameter("roots must be finite".into()));
        }
        let mut perm: Vec<usize> = (0..roots.len()).collect();
        perm.sort_by(|&i, &j| lex_cmp(&roots[i], &roots[j]).then(i.cmp(&j)));
        let canonical = perm.iter().map(|&i| roots[i]).collect();
        Ok(Self {
            roots,
            canonical,
            perm,
        })
    }

    pub fn from_slice(roots: &[Complex64]) -> Result<Self> {
        Self::new(roots.to_vec())
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Roots in input order.
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    /// Roots in canonical (sorted) order.
    pub fn canonical(&self) -> &[Complex64] {
        &self.canonical
    }

    pub fn centroid(&self) -> Complex64 {
        pairwise(self.canonical.len(), |i| self.canonical[i]) / self.len() as f64
    }

    /// Closest root to `z` as `(input index, distance)`; ties go to the lower
    /// input index.
    pub fn nearest(&self, z: Complex64) -> (usize, f64) {
        let mut best = (usize::MAX, f64::INFINITY);
        for (i, r) in self.roots.iter().enumerate() {
            let d = (z - r).norm();
            if d < best.1 {
                best = (i, d);
            }
        }
        best
    }

    fn pole_at(&self, z: Complex64) -> Option<usize> {
        let (i, d) = self.nearest(z);
        (d <= pole_tolerance(z)).then_some(i)
    }

    #[allow(dead_code)]
    pub(crate) fn input_index(&self, canonical_index: usize) -> usize {
        self.perm[canonical_index]
    }
}

/// A circle `C(center, radius)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::Parameter(format!("radius must be positive, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    /// `j`-th of `m` equispaced points; for power-of-two `m` the grid of `m`
    /// is bit-exactly contained in the grid of `2m`.
    pub fn point(&self, j: usize, m: usize) -> Complex64 {
        self.center + Complex64::from_polar(self.radius, TAU * j as f64 / m as f64)
    }
}

/// Value of `S` (or `S'`) at a point, or the index of the root it hit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvalResult {
    Value(Complex64),
    Pole { index: usize },
}

impl EvalResult {
    pub fn value(self) -> Option<Complex64> {
        match self {
            EvalResult::Value(v) => Some(v),
            EvalResult::Pole { .. } => None,
        }
    }

    /// `|S(z)|` with the convention `+∞` at a pole.
    pub fn modulus(self) -> f64 {
        match self {
            EvalResult::Value(v) => v.norm(),
            EvalResult::Pole { .. } => f64::INFINITY,
        }
    }
}

/// `S(z) = Σ 1/(z − Z_k)` without the pole check.
pub(crate) fn s_unchecked(roots: &RootSet, z: Complex64) -> Complex64 {
    let r = &roots.canonical;
    pairwise(r.len(), |i| (z - r[i]).inv())
}

pub fn eval_s(roots: &RootSet, z: Complex64) -> EvalResult {
    match roots.pole_at(z) {
        Some(index) => EvalResult::Pole { index },
        None => EvalResult::Value(s_unchecked(roots, z)),
    }
}

/// `S'(z) = −Σ 1/(z − Z_k)²`.
pub fn eval_s_prime(roots: &RootSet, z: Complex64) -> EvalResult {
    if let Some(index) = roots.pole_at(z) {
        return EvalResult::Pole { index };
    }
    let r = &roots.canonical;
    let s: Complex64 = pairwise(r.len(), |i| {
        let w = (z - r[i]).inv();
        w * w
    });
    EvalResult::Value(-s)
}

fn check_contour(roots: &RootSet, circle: &Circle) -> Result<()> {
    let tol = POLE_TOL * (1.0 + circle.center.norm() + circle.radius);
    for (index, z) in roots.roots().iter().enumerate() {
        let distance = ((z - circle.center).norm() - circle.radius).abs();
        if distance <= tol {
            return Err(Error::PoleOnContour { index, distance });
        }
    }
    Ok(())
}

fn grid_max(roots: &RootSet, circle: &Circle, m: usize, indices: impl IndexedParallelIterator<Item = usize>) -> f64 {
    indices
        .map(|j| s_unchecked(roots, circle.point(j, m)).norm())
        .reduce(|| 0.0, f64::max)
}

/// `max_j |S(a + r e^{2πij/m})|` over `m` equispaced points.
///
/// This is a lower bound for `‖S‖_{C(a,r)}` that converges as `m → ∞`.
pub fn circle_sup_norm(roots: &RootSet, circle: &Circle, m: usize) -> Result<f64> {
    if m == 0 {
        return Err(Error::Parameter("need at least one circle point".into()));
    }
    check_contour(roots, circle)?;
    Ok(grid_max(roots, circle, m, (0..m).into_par_iter()))
}

/// [`circle_sup_norm`] with, in addition, the contour point nearest to each
/// root. Still a lower bound of the true sup; it resolves peaks that fall
/// between grid points when the circle is large next to root distances.
pub fn circle_sup_norm_anchored(roots: &RootSet, circle: &Circle, m: usize) -> Result<f64> {
    let grid = circle_sup_norm(roots, circle, m)?;
    let anchors = roots
        .roots()
        .par_iter()
        .filter_map(|&z| {
            let d = z - circle.center;
            (d.norm() > 0.0).then(|| circle.center + d * (circle.radius / d.norm()))
        })
        .map(|w| s_unchecked(roots, w).norm())
        .reduce(|| 0.0, f64::max);
    Ok(grid.max(anchors))
}

/// Discrete sup-norm together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupNorm {
    pub value: f64,
    /// Number of circle points of the final grid.
    pub points: usize,
    /// Relative change produced by the last doubling (0 if none happened).
    pub last_delta: f64,
}

/// Doubles the grid from `m_start` (rounded up to a power of two) until the
/// relative change of the discrete max is below `rel_tol` or `m_cap` points
/// are reached. Only the new odd-indexed points are evaluated at each step.
pub fn circle_sup_norm_refined(
    roots: &RootSet,
    circle: &Circle,
    m_start: usize,
    rel_tol: f64,
    m_cap: usize,
) -> Result<SupNorm> {
    let mut m = m_start.max(1).next_power_of_two();
    let cap = m_cap.max(m);
    let mut value = circle_sup_norm(roots, circle, m)?;
    let mut last_delta = 0.0;
    while m < cap {
        let m2 = 2 * m;
        let fresh = grid_max(roots, circle, m2, (0..m).into_par_iter().map(|j| 2 * j + 1));
        let next = value.max(fresh);
        last_delta = (next - value) / next;
        value = next;
        m = m2;
        if last_delta < rel_tol {
            break;
        }
    }
    Ok(SupNorm {
        value,
        points: m,
        last_delta,
    })
}

/// `log⁺(x) = log(x)·1_{x>1}` for `x > 0`.
pub fn log_plus(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Parameter(format!("log⁺ needs a positive argument, got {x}")));
    }
    Ok(if x > 1.0 { x.ln() } else { 0.0 })
}

/// `log⁻(x) = −log(x)·1_{x<1}` for `x ≥ 0`, with `log⁻(0) = +∞`.
pub fn log_minus(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Parameter(format!("log⁻ needs a nonnegative argument, got {x}")));
    }
    Ok(log_minus_unchecked(x))
}

pub(crate) fn log_minus_unchecked(x: f64) -> f64 {
    if x < 1.0 {
        -x.ln()
    } else {
        0.0
    }
}
