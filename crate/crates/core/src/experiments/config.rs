//! Experiment configuration: the JSON document accepted by the CLI.

use std::path::PathBuf;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mobius::MobiusTransform;
use crate::sampler::{BaseMeasure, SeedSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Convergence,
    Jensen,
    Anticoncentration,
    Growth,
    Lln,
    Critical,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::Convergence => "convergence",
            ExperimentKind::Jensen => "jensen",
            ExperimentKind::Anticoncentration => "anticoncentration",
            ExperimentKind::Growth => "growth",
            ExperimentKind::Lln => "lln",
            ExperimentKind::Critical => "critical",
        }
    }
}

/// Numerical knobs and verdict thresholds. Every field has a default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Aberth stopping tolerance.
    pub tol_solver: f64,
    /// Points on each circle when taking a discrete sup-norm.
    pub m_circle: usize,
    /// Directions for sliced W1.
    pub directions: usize,
    /// Ball radius for anti-concentration; default `√d`.
    pub r_ball: Option<f64>,
    /// Radius beyond which mass counts as escaped.
    #[serde(alias = "R_infty")]
    pub r_infty: f64,
    /// Slack on the Jensen inequality for the discrete sup-norm.
    pub eps_disc: f64,
    /// Jensen: required fraction of passing trials.
    pub min_pass_rate: f64,
    /// Anti-concentration: largest accepted log-log slope; default `−0.4·d`.
    pub max_slope: Option<f64>,
    /// Anti-concentration: rows with fewer hits are left out of the fit.
    pub min_hits: usize,
    /// Growth: bound on `log⁺‖S_n‖ / log n`.
    pub max_growth_ratio: f64,
    /// Convergence: required ratio between the first and last distance.
    pub min_improvement: f64,
    /// Convergence: bound on the quadrant discrepancy at the last `n`.
    pub max_quadrant: f64,
    /// LLN: allowed deviation in combined standard errors.
    pub lln_sigmas: f64,
    /// Critical: relative error allowed in the sum of critical points.
    pub vieta_rel: f64,
    /// Critical: hull distance allowed, relative to the hull diameter.
    pub hull_rel: f64,
    /// Critical: largest matched distance to the matrix oracle.
    pub oracle_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol_solver: 1e-10,
            m_circle: 4096,
            directions: 64,
            r_ball: None,
            r_infty: 10.0,
            eps_disc: 0.05,
            min_pass_rate: 0.99,
            max_slope: None,
            min_hits: 10,
            max_growth_ratio: 6.0,
            min_improvement: 4.0,
            max_quadrant: 0.05,
            lln_sigmas: 3.0,
            vieta_rel: 1e-9,
            hull_rel: 1e-8,
            oracle_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Centering {
    /// Coordinate-wise median of the projected sums over all trials.
    #[default]
    Median,
    /// No centering: balls around the origin.
    Origin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleSpec {
    pub center: Complex64,
    pub radius: f64,
}

/// Experiment-specific settings.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    /// Anti-concentration probe points; default `[2, 3i, −2−2i]`.
    pub probes: Option<Vec<Complex64>>,
    /// Anti-concentration: sums are projected to `Re(e^{−iφ} S)`.
    pub projection_angle: Option<f64>,
    pub centering: Option<Centering>,
    /// Growth: the fixed circle; drawn from the seed when absent.
    pub circle: Option<CircleSpec>,
    /// LLN: the test map `u`; drawn from the seed when absent.
    pub transform: Option<MobiusTransform>,
    /// Sample size of the reference quantization of `μ`.
    pub reference_size: Option<usize>,
}

pub const DEFAULT_PROJECTION_ANGLE: f64 = 1.0;

pub fn default_probes() -> Vec<Complex64> {
    vec![Complex64::new(2.0, 0.0), Complex64::new(0.0, 3.0), Complex64::new(-2.0, -2.0)]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum SeedRepr {
    Master(u64),
    Full(SeedSpec),
}

mod seed_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(seed: &SeedSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
        seed.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<SeedSpec, D::Error> {
        Ok(match SeedRepr::deserialize(d)? {
            SeedRepr::Master(m) => SeedSpec::new(m, 0),
            SeedRepr::Full(s) => s,
        })
    }
}

fn default_trials() -> usize {
    1
}

fn default_seed() -> SeedSpec {
    SeedSpec::new(0, 0)
}

/// A full experiment description. `seed` may be given as a bare integer
/// (the master seed) or as `{"master_seed": .., "stream_id": ..}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub measure: BaseMeasure,
    pub n_schedule: Vec<usize>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_seed", with = "seed_serde")]
    pub seed: SeedSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub options: Options,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(experiment: ExperimentKind, measure: BaseMeasure, n_schedule: Vec<usize>) -> Self {
        Self {
            experiment,
            measure,
            n_schedule,
            trials: 1,
            seed: default_seed(),
            tolerances: Tolerances::default(),
            options: Options::default(),
            out_dir: None,
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_seed(mut self, seed: SeedSpec) -> Self {
        self.seed = seed;
        self
    }

    /// Parses and validates a JSON document; errors carry line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Parameter(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.measure.validate()?;
        if self.n_schedule.is_empty() {
            return Err(Error::Parameter("n_schedule must not be empty".into()));
        }
        if self.n_schedule.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter(format!(
                "n_schedule must be strictly increasing, got {:?}",
                self.n_schedule
            )));
        }
        let min_n = match self.experiment {
            ExperimentKind::Anticoncentration | ExperimentKind::Lln => 1,
            _ => 2,
        };
        if self.n_schedule[0] < min_n {
            return Err(Error::Parameter(format!(
                "n_schedule entries must be at least {min_n} for {}",
                self.experiment.as_str()
            )));
        }
        if self.trials == 0 {
            return Err(Error::Parameter("trials must be at least 1".into()));
        }
        let t = &self.tolerances;
        let positive = [
            ("tol_solver", t.tol_solver),
            ("r_infty", t.r_infty),
            ("max_growth_ratio", t.max_growth_ratio),
            ("min_improvement", t.min_improvement),
            ("lln_sigmas", t.lln_sigmas),
            ("vieta_rel", t.vieta_rel),
            ("hull_rel", t.hull_rel),
            ("oracle_tol", t.oracle_tol),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parameter(format!("tolerances.{name} must be positive, got {v}")));
            }
        }
        if !(t.eps_disc >= 0.0) {
            return Err(Error::Parameter("tolerances.eps_disc must be nonnegative".into()));
        }
        if !(0.0..=1.0).contains(&t.min_pass_rate) {
            return Err(Error::Parameter("tolerances.min_pass_rate must lie in [0, 1]".into()));
        }
        if !(0.0..=1.0).contains(&t.max_quadrant) {
            return Err(Error::Parameter("tolerances.max_quadrant must lie in [0, 1]".into()));
        }
        if t.m_circle == 0 || t.directions == 0 {
            return Err(Error::Parameter("tolerances.m_circle and directions must be positive".into()));
        }
        if let Some(r) = t.r_ball {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::Parameter(format!("tolerances.r_ball must be positive, got {r}")));
            }
        }
        let o = &self.options;
        if let Some(p) = &o.probes {
            if p.is_empty() {
                return Err(Error::Parameter("options.probes must not be empty".into()));
            }
            for (i, a) in p.iter().enumerate() {
                if p[..i].contains(a) {
                    return Err(Error::Parameter(format!("options.probes repeats {a}")));
                }
            }
        }
        if let Some(c) = &o.circle {
            if !(c.radius > 0.0 && c.radius.is_finite()) {
                return Err(Error::Parameter("options.circle.radius must be positive".into()));
            }
        }
        if o.reference_size == Some(0) {
            return Err(Error::Parameter("options.reference_size must be positive".into()));
        }
        Ok(())
    }

    /// Fills every default that depends only on the config itself, so the
    /// echoed config shows the values actually used.
    pub fn resolved(&self) -> Self {
        let mut c = self.clone();
        match c.experiment {
            ExperimentKind::Anticoncentration => {
                let probes = c.options.probes.get_or_insert_with(default_probes);
                let d = probes.len() as f64;
                c.tolerances.r_ball.get_or_insert(d.sqrt());
                c.tolerances.max_slope.get_or_insert(-0.4 * d);
                c.options.projection_angle.get_or_insert(DEFAULT_PROJECTION_ANGLE);
                c.options.centering.get_or_insert(Centering::default());
            }
            ExperimentKind::Convergence => {
                c.options.reference_size.get_or_insert(100_000);
            }
            ExperimentKind::Lln => {
                c.options.reference_size.get_or_insert(1_000_000);
            }
            _ => {}
        }
        c
    }
}
