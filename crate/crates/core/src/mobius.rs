//! Möbius maps `z ↦ (αz + β)/(γz + δ)` on the extended plane, with the
//! affine maps (`γ = 0, δ = 1`) as a subcase.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logderiv::Circle;
use crate::sampler::SeedSpec;

/// Minimum `|αδ − βγ| / max(|α|,|β|,|γ|,|δ|)²`.
pub const DET_GUARD: f64 = 1e-9;
/// Relative tolerance on `|α| = |γ|` for the preimage to be a line.
pub const LINE_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A point of `ℂ ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtComplex {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            ExtComplex::Finite(z) => Some(z),
            ExtComplex::Infinity => None,
        }
    }

    /// `|z|`, with `|∞| = +∞`.
    pub fn norm(self) -> f64 {
        match self {
            ExtComplex::Finite(z) => z.norm(),
            ExtComplex::Infinity => f64::INFINITY,
        }
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        ExtComplex::Finite(z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[Complex64; 4]", into = "[Complex64; 4]")]
pub struct MobiusTransform {
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    delta: Complex64,
}

impl TryFrom<[Complex64; 4]> for MobiusTransform {
    type Error = Error;

    fn try_from(c: [Complex64; 4]) -> Result<Self> {
        MobiusTransform::new(c[0], c[1], c[2], c[3])
    }
}

impl From<MobiusTransform> for [Complex64; 4] {
    fn from(u: MobiusTransform) -> Self {
        u.coefficients()
    }
}

fn passes_guard(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
    let det = (a * d - b * c).norm();
    det.is_finite() && scale > 0.0 && det >= DET_GUARD * scale * scale
}

impl MobiusTransform {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64, delta: Complex64) -> Result<Self> {
        if !passes_guard(alpha, beta, gamma, delta) {
            return Err(Error::Parameter(format!(
                "determinant of ({alpha}, {beta}, {gamma}, {delta}) is too small"
            )));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    pub fn identity() -> Self {
        Self {
            alpha: ONE,
            beta: ZERO,
            gamma: ZERO,
            delta: ONE,
        }
    }

    /// `z ↦ αz + β`.
    pub fn affine(alpha: Complex64, beta: Complex64) -> Result<Self> {
        Self::new(alpha, beta, ZERO, ONE)
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn determinant(&self) -> Complex64 {
        self.alpha * self.delta - self.beta * self.gamma
    }

    pub fn is_affine(&self) -> bool {
        self.gamma == ZERO
    }

    pub fn apply(&self, z: ExtComplex) -> ExtComplex {
        match z {
            ExtComplex::Infinity => {
                if self.gamma == ZERO {
                    ExtComplex::Infinity
                } else {
                    ExtComplex::Finite(self.alpha / self.gamma)
                }
            }
            ExtComplex::Finite(z) => {
                let den = self.gamma * z + self.delta;
                if den == ZERO {
                    ExtComplex::Infinity
                } else {
                    ExtComplex::Finite((self.alpha * z + self.beta) / den)
                }
            }
        }
    }

    /// `|u(z)|` for finite `z` (`+∞` at the pole).
    pub fn modulus_at(&self, z: Complex64) -> f64 {
        let den = self.gamma * z + self.delta;
        if den == ZERO {
            f64::INFINITY
        } else {
            (self.alpha * z + self.beta).norm() / den.norm()
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            alpha: self.delta,
            beta: -self.beta,
            gamma: -self.gamma,
            delta: self.alpha,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            alpha: self.alpha * other.alpha + self.beta * other.gamma,
            beta: self.alpha * other.beta + self.beta * other.delta,
            gamma: self.gamma * other.alpha + self.delta * other.gamma,
            delta: self.gamma * other.beta + self.delta * other.delta,
        }
    }

    /// `u⁻¹(0)`.
    pub fn zero_preimage(&self) -> ExtComplex {
        self.inverse().apply(ExtComplex::Finite(ZERO))
    }

    /// `u⁻¹(C)` for the unit circle `C`: the set `|αz + β| = |γz + δ|`.
    ///
    /// Writing it as `A|z|² + 2 Re(cz) + D = 0` with `A = |α|² − |γ|²`,
    /// `c = αβ̄ − γδ̄`, `D = |β|² − |δ|²`: a circle of center `−c̄/A` and
    /// radius `|αδ − βγ|/|A|` when `A ≠ 0`, otherwise the line
    /// `Re(cz) = −D/2`.
    pub fn preimage_unit_circle(&self) -> GeneralizedCircle {
        let (a, b, g, d) = (self.alpha, self.beta, self.gamma, self.delta);
        let (na, ng) = (a.norm(), g.norm());
        let c = a * b.conj() - g * d.conj();
        let dd = b.norm_sqr() - d.norm_sqr();
        if (na - ng).abs() <= LINE_TOL * na.max(ng) {
            let nc = c.norm();
            let point = -c.conj() * (dd / (2.0 * c.norm_sqr()));
            let direction = Complex64::i() * c.conj() / nc;
            GeneralizedCircle::Line { point, direction }
        } else {
            let big_a = na * na - ng * ng;
            GeneralizedCircle::Circle(Circle {
                center: -c.conj() / big_a,
                radius: self.determinant().norm() / big_a.abs(),
            })
        }
    }
}

/// A circle or a straight line of the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneralizedCircle {
    Circle(Circle),
    Line {
        point: Complex64,
        /// Unit direction.
        direction: Complex64,
    },
}

impl GeneralizedCircle {
    pub fn as_circle(&self) -> Option<Circle> {
        match self {
            GeneralizedCircle::Circle(c) => Some(*c),
            GeneralizedCircle::Line { .. } => None,
        }
    }

    /// `k` sample points: equispaced on a circle, or spread along a line at
    /// parameters `tan(π(j + ½)/k − π/2)`.
    pub fn sample_points(&self, k: usize) -> Vec<Complex64> {
        match self {
            GeneralizedCircle::Circle(c) => (0..k).map(|j| c.point(j, k)).collect(),
            GeneralizedCircle::Line { point, direction } => (0..k)
                .map(|j| {
                    let t = (TAU / 2.0 * (j as f64 + 0.5) / k as f64 - TAU / 4.0).tan();
                    point + direction * t
                })
                .collect(),
        }
    }
}

/// Draws `(α, β, γ, δ)` as i.i.d. standard complex Gaussians, redrawing
/// until the determinant guard passes.
pub fn sample_mobius(seed: SeedSpec) -> MobiusTransform {
    let mut stream = seed.stream();
    for attempt in 0u64.. {
        let base = 4 * attempt;
        let c: Vec<Complex64> = (0..4).map(|k| stream.complex_gaussian_at(base + k)).collect();
        if let Ok(u) = MobiusTransform::new(c[0], c[1], c[2], c[3]) {
            return u;
        }
    }
    unreachable!("the guard fails on a null set")
}

/// Draws `z ↦ αz + β` with `α, β` i.i.d. standard complex Gaussians.
pub fn sample_affine(seed: SeedSpec) -> MobiusTransform {
    let mut stream = seed.stream();
    for attempt in 0u64.. {
        let base = 2 * attempt;
        let alpha = stream.complex_gaussian_at(base);
        let beta = stream.complex_gaussian_at(base + 1);
        if let Ok(u) = MobiusTransform::affine(alpha, beta) {
            return u;
        }
    }
    unreachable!("the guard fails on a null set")
}
