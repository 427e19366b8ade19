//! Random polynomials with i.i.d. roots, their critical points, and the
//! empirical-measure experiments built on top of them.
//!
//! The crate is organised bottom-up:
//!
//! * [`sampler`] – base measures and seed-reproducible, prefix-stable samples.
//! * [`logderiv`] – the logarithmic derivative `S(z) = Σ 1/(z − Z_k)` and
//!   circle sup-norms.
//! * [`critical`] – critical points by Aberth–Ehrlich iteration, a
//!   companion-matrix oracle, and the finite-support closed form.
//! * [`measures`] – empirical measures, `log⁻` integrals, sliced W1 and a
//!   quadrant discrepancy.
//! * [`mobius`] – Möbius/affine maps on the extended plane.
//! * [`experiments`] – the verification experiments and their reports.

pub mod critical;
pub mod error;
pub mod experiments;
pub mod logderiv;
pub mod matching;
pub mod measures;
pub mod mobius;
pub mod sampler;
mod sum;

pub use num_complex::Complex64;

pub use critical::{
    critical_points, critical_points_oracle, critical_points_with, finite_support_critical,
    AberthOptions, CriticalSet, FiniteSupportInstance, Method,
};
pub use error::{Error, Result};
pub use experiments::{run, ExperimentConfig, ExperimentKind, Report, Verdict};
pub use logderiv::{
    circle_sup_norm, circle_sup_norm_anchored, circle_sup_norm_refined, eval_s, eval_s_prime, log_minus, log_plus, Circle,
    EvalResult, RootSet, SupNorm,
};
pub use measures::{
    log_minus_integral, quadrant_discrepancy, reference_quantization, sliced_w1, EmpiricalMeasure,
};
pub use mobius::{ExtComplex, GeneralizedCircle, MobiusTransform};
pub use sampler::{multinomial_counts, sample, BaseMeasure, SeedSpec, Trajectory};
