//! Base measures and seed-deterministic, prefix-stable i.i.d. sampling.
//!
//! Every draw is keyed by `(master_seed, stream_id, index)`: the generator is
//! ChaCha8 seeded from `master_seed`, with `stream_id` selecting the ChaCha
//! stream and `index` selecting the block position. Sample `k` of a stream
//! always consumes the same four 32-bit words, so a trajectory of length `m`
//! restricted to its first `n` entries is exactly the trajectory of length
//! `n`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// 32-bit words consumed per sample (two `u64` draws).
const WORDS_PER_SAMPLE: u128 = 4;
const PAR_CHUNK: usize = 8192;

/// The law `μ` of the roots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "repr::MeasureRepr", into = "repr::MeasureRepr")]
pub enum BaseMeasure {
    FiniteSupport {
        atoms: Vec<Complex64>,
        weights: Vec<f64>,
    },
    UniformCircle {
        center: Complex64,
        radius: f64,
    },
    UniformDisk {
        center: Complex64,
        radius: f64,
    },
    /// `mean + scale · (X + iY)/√2` with `X, Y` standard normal, so that
    /// `E|Z − mean|² = scale²`.
    ComplexGaussian {
        mean: Complex64,
        scale: f64,
    },
    /// `location + scale · (T₁ + iT₂)` with `T₁, T₂` independent standard Cauchy.
    ComplexCauchy {
        location: Complex64,
        scale: f64,
    },
}

impl BaseMeasure {
    pub fn finite_support(atoms: Vec<Complex64>, weights: Vec<f64>) -> Result<Self> {
        let m = BaseMeasure::FiniteSupport { atoms, weights };
        m.validate()?;
        Ok(m)
    }

    /// Uniform law on the given atoms.
    pub fn uniform_atoms(atoms: Vec<Complex64>) -> Result<Self> {
        let w = 1.0 / atoms.len().max(1) as f64;
        let weights = vec![w; atoms.len()];
        Self::finite_support(atoms, weights)
    }

    pub fn dirac(atom: Complex64) -> Self {
        BaseMeasure::FiniteSupport {
            atoms: vec![atom],
            weights: vec![1.0],
        }
    }

    pub fn uniform_circle(center: Complex64, radius: f64) -> Result<Self> {
        let m = BaseMeasure::UniformCircle { center, radius };
        m.validate()?;
        Ok(m)
    }

    pub fn uniform_disk(center: Complex64, radius: f64) -> Result<Self> {
        let m = BaseMeasure::UniformDisk { center, radius };
        m.validate()?;
        Ok(m)
    }

    pub fn complex_gaussian(mean: Complex64, scale: f64) -> Result<Self> {
        let m = BaseMeasure::ComplexGaussian { mean, scale };
        m.validate()?;
        Ok(m)
    }

    pub fn complex_cauchy(location: Complex64, scale: f64) -> Result<Self> {
        let m = BaseMeasure::ComplexCauchy { location, scale };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::Parameter(format!("{name} must be positive, got {v}")))
            }
        };
        let finite = |name: &str, z: Complex64| {
            if z.re.is_finite() && z.im.is_finite() {
                Ok(())
            } else {
                Err(Error::Parameter(format!("{name} must be finite")))
            }
        };
        match self {
            BaseMeasure::FiniteSupport { atoms, weights } => {
                if atoms.is_empty() {
                    return Err(Error::Parameter("finite support needs at least one atom".into()));
                }
                if atoms.len() != weights.len() {
                    return Err(Error::Parameter(format!(
                        "{} atoms but {} weights",
                        atoms.len(),
                        weights.len()
                    )));
                }
                for (i, &w) in weights.iter().enumerate() {
                    if !(w.is_finite() && w > 0.0) {
                        return Err(Error::Parameter(format!("weight {i} must be positive, got {w}")));
                    }
                }
                let total: f64 = weights.iter().sum();
                if (total - 1.0).abs() > 1e-12 {
                    return Err(Error::Parameter(format!("weights sum to {total}, expected 1")));
                }
                for (i, &a) in atoms.iter().enumerate() {
                    finite("atom", a)?;
                    if atoms[..i].contains(&a) {
                        return Err(Error::Parameter(format!("atom {i} is repeated")));
                    }
                }
                Ok(())
            }
            BaseMeasure::UniformCircle { center, radius }
            | BaseMeasure::UniformDisk { center, radius } => {
                finite("center", *center)?;
                positive("radius", *radius)
            }
            BaseMeasure::ComplexGaussian { mean, scale } => {
                finite("mean", *mean)?;
                positive("scale", *scale)
            }
            BaseMeasure::ComplexCauchy { location, scale } => {
                finite("location", *location)?;
                positive("scale", *scale)
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            BaseMeasure::FiniteSupport { .. } => "finite_support",
            BaseMeasure::UniformCircle { .. } => "uniform_circle",
            BaseMeasure::UniformDisk { .. } => "uniform_disk",
            BaseMeasure::ComplexGaussian { .. } => "complex_gaussian",
            BaseMeasure::ComplexCauchy { .. } => "complex_cauchy",
        }
    }

    pub fn has_finite_support(&self) -> bool {
        matches!(self, BaseMeasure::FiniteSupport { .. })
    }

    /// Whether `∫|z| dμ < ∞`; Wasserstein-1 to `μ` is only meaningful then.
    pub fn has_first_moment(&self) -> bool {
        !matches!(self, BaseMeasure::ComplexCauchy { .. })
    }

    fn draw(&self, cdf: &[f64], u1: f64, u2: f64) -> Complex64 {
        match self {
            BaseMeasure::FiniteSupport { atoms, .. } => atoms[pick_atom(cdf, u1)],
            BaseMeasure::UniformCircle { center, radius } => {
                center + Complex64::from_polar(*radius, TAU * u1)
            }
            BaseMeasure::UniformDisk { center, radius } => {
                center + Complex64::from_polar(radius * u1.sqrt(), TAU * u2)
            }
            BaseMeasure::ComplexGaussian { mean, scale } => {
                mean + standard_complex_gaussian(u1, u2) * *scale
            }
            BaseMeasure::ComplexCauchy { location, scale } => {
                let t1 = (PI * (u1 - 0.5)).tan();
                let t2 = (PI * (u2 - 0.5)).tan();
                location + Complex64::new(t1, t2) * *scale
            }
        }
    }

    fn cdf(&self) -> Vec<f64> {
        match self {
            BaseMeasure::FiniteSupport { weights, .. } => cumulative(weights),
            _ => Vec::new(),
        }
    }
}

fn cumulative(weights: &[f64]) -> Vec<f64> {
    let total: f64 = weights.iter().sum();
    let mut acc = 0.0;
    let mut cdf: Vec<f64> = weights
        .iter()
        .map(|w| {
            acc += w;
            acc / total
        })
        .collect();
    if let Some(last) = cdf.last_mut() {
        *last = 1.0;
    }
    cdf
}

/// First atom whose cumulative weight exceeds `u`; ties go to the lower index.
fn pick_atom(cdf: &[f64], u: f64) -> usize {
    cdf.partition_point(|&c| c <= u).min(cdf.len() - 1)
}

/// Box–Muller on two open-interval uniforms; `E|G|² = 1`.
pub(crate) fn standard_complex_gaussian(u1: f64, u2: f64) -> Complex64 {
    let rho = (-u1.ln()).sqrt();
    Complex64::from_polar(rho, TAU * u2)
}

/// Identifies one random stream: `(master_seed, stream_id)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSpec {
    pub master_seed: u64,
    #[serde(default)]
    pub stream_id: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        Self {
            master_seed,
            stream_id,
        }
    }

    /// A child stream on the same master seed, keyed by a purpose tag and an
    /// index (e.g. a trial id).
    pub fn derive(&self, tag: u64, index: u64) -> SeedSpec {
        let s = splitmix64(splitmix64(splitmix64(self.stream_id) ^ tag) ^ index);
        SeedSpec::new(self.master_seed, s)
    }

    pub(crate) fn stream(&self) -> Stream {
        Stream::new(*self)
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Random-access view of one stream: sample `k` reads words `4k..4k+4`.
#[derive(Clone)]
pub(crate) struct Stream {
    rng: ChaCha8Rng,
}

impl Stream {
    fn new(seed: SeedSpec) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.master_seed);
        rng.set_stream(seed.stream_id);
        Self { rng }
    }

    pub(crate) fn seek(&mut self, index: u64) {
        self.rng.set_word_pos(index as u128 * WORDS_PER_SAMPLE);
    }

    /// Next pair of uniforms in the open interval (0, 1).
    pub(crate) fn uniform_pair(&mut self) -> (f64, f64) {
        (open_unit(self.rng.next_u64()), open_unit(self.rng.next_u64()))
    }

    pub(crate) fn complex_gaussian_at(&mut self, index: u64) -> Complex64 {
        self.seek(index);
        let (u1, u2) = self.uniform_pair();
        standard_complex_gaussian(u1, u2)
    }
}

fn open_unit(x: u64) -> f64 {
    ((x >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

/// One realisation `Z_1, …, Z_n` of the i.i.d. sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub measure: BaseMeasure,
    pub seed: SeedSpec,
    pub samples: Vec<Complex64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Grows the trajectory to `new_count` samples without touching the
    /// existing prefix.
    pub fn extend(&self, new_count: usize) -> Result<Trajectory> {
        if new_count < self.samples.len() {
            return Err(Error::Contract(format!(
                "cannot shrink trajectory from {} to {new_count}",
                self.samples.len()
            )));
        }
        let mut samples = self.samples.clone();
        samples.extend(draw_range(
            &self.measure,
            self.seed,
            self.samples.len() as u64,
            new_count as u64,
        ));
        Ok(Trajectory {
            measure: self.measure.clone(),
            seed: self.seed,
            samples,
        })
    }

    pub fn prefix(&self, n: usize) -> &[Complex64] {
        &self.samples[..n.min(self.samples.len())]
    }
}

/// Draws `count` i.i.d. samples from `measure` on the stream `seed`.
pub fn sample(measure: &BaseMeasure, seed: SeedSpec, count: usize) -> Result<Trajectory> {
    measure.validate()?;
    if count == 0 {
        return Err(Error::Parameter("count must be at least 1".into()));
    }
    Ok(Trajectory {
        measure: measure.clone(),
        seed,
        samples: draw_range(measure, seed, 0, count as u64),
    })
}

fn draw_range(measure: &BaseMeasure, seed: SeedSpec, start: u64, end: u64) -> Vec<Complex64> {
    let cdf = measure.cdf();
    let chunk = |lo: u64, hi: u64| {
        let mut stream = seed.stream();
        stream.seek(lo);
        (lo..hi)
            .map(|_| {
                let (u1, u2) = stream.uniform_pair();
                measure.draw(&cdf, u1, u2)
            })
            .collect::<Vec<_>>()
    };
    if end <= start {
        return Vec::new();
    }
    if end - start <= PAR_CHUNK as u64 {
        return chunk(start, end);
    }
    let starts: Vec<u64> = (start..end).step_by(PAR_CHUNK).collect();
    starts
        .into_par_iter()
        .map(|lo| chunk(lo, (lo + PAR_CHUNK as u64).min(end)))
        .collect::<Vec<_>>()
        .concat()
}

/// Atom-occurrence counts `(N_1, …, N_r)` of the first `n` samples of a
/// finite-support measure on stream `seed`.
pub fn multinomial_counts(measure: &BaseMeasure, seed: SeedSpec, n: usize) -> Result<Vec<usize>> {
    measure.validate()?;
    let BaseMeasure::FiniteSupport { atoms, weights } = measure else {
        return Err(Error::Parameter(format!(
            "multinomial counts need a finite-support measure, got {}",
            measure.kind_name()
        )));
    };
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    let cdf = cumulative(weights);
    let mut counts = vec![0usize; atoms.len()];
    let mut stream = seed.stream();
    stream.seek(0);
    for _ in 0..n {
        let (u1, _) = stream.uniform_pair();
        counts[pick_atom(&cdf, u1)] += 1;
    }
    Ok(counts)
}

mod repr {
    use num_complex::Complex64;
    use serde::{Deserialize, Serialize};

    use super::BaseMeasure;
    use crate::error::Error;

    #[derive(Serialize, Deserialize)]
    #[serde(tag = "kind", content = "params", rename_all = "snake_case", deny_unknown_fields)]
    pub(super) enum MeasureRepr {
        FiniteSupport(FiniteParams),
        UniformCircle(CircleParams),
        UniformDisk(CircleParams),
        ComplexGaussian(GaussianParams),
        ComplexCauchy(CauchyParams),
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub(super) struct FiniteParams {
        atoms: Vec<Complex64>,
        weights: Vec<f64>,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub(super) struct CircleParams {
        center: Complex64,
        radius: f64,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub(super) struct GaussianParams {
        mean: Complex64,
        scale: f64,
    }

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    pub(super) struct CauchyParams {
        location: Complex64,
        scale: f64,
    }

    impl TryFrom<MeasureRepr> for BaseMeasure {
        type Error = Error;

        fn try_from(r: MeasureRepr) -> Result<Self, Error> {
            let m = match r {
                MeasureRepr::FiniteSupport(p) => BaseMeasure::FiniteSupport {
                    atoms: p.atoms,
                    weights: p.weights,
                },
                MeasureRepr::UniformCircle(p) => BaseMeasure::UniformCircle {
                    center: p.center,
                    radius: p.radius,
                },
                MeasureRepr::UniformDisk(p) => BaseMeasure::UniformDisk {
                    center: p.center,
                    radius: p.radius,
                },
                MeasureRepr::ComplexGaussian(p) => BaseMeasure::ComplexGaussian {
                    mean: p.mean,
                    scale: p.scale,
                },
                MeasureRepr::ComplexCauchy(p) => BaseMeasure::ComplexCauchy {
                    location: p.location,
                    scale: p.scale,
                },
            };
            m.validate()?;
            Ok(m)
        }
    }

    impl From<BaseMeasure> for MeasureRepr {
        fn from(m: BaseMeasure) -> Self {
            match m {
                BaseMeasure::FiniteSupport { atoms, weights } => {
                    MeasureRepr::FiniteSupport(FiniteParams { atoms, weights })
                }
                BaseMeasure::UniformCircle { center, radius } => {
                    MeasureRepr::UniformCircle(CircleParams { center, radius })
                }
                BaseMeasure::UniformDisk { center, radius } => {
                    MeasureRepr::UniformDisk(CircleParams { center, radius })
                }
                BaseMeasure::ComplexGaussian { mean, scale } => {
                    MeasureRepr::ComplexGaussian(GaussianParams { mean, scale })
                }
                BaseMeasure::ComplexCauchy { location, scale } => {
                    MeasureRepr::ComplexCauchy(CauchyParams { location, scale })
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_atom_is_constant() {
        let m = BaseMeasure::dirac(c(1.0, 0.0));
        let t = sample(&m, SeedSpec::new(9, 3), 5).unwrap();
        assert_eq!(t.samples, vec![c(1.0, 0.0); 5]);
    }

    #[test]
    fn circle_mean_is_near_zero() {
        let m = BaseMeasure::uniform_circle(c(0.0, 0.0), 1.0).unwrap();
        let t = sample(&m, SeedSpec::new(1, 0), 100_000).unwrap();
        let mean: Complex64 = t.samples.iter().sum::<Complex64>() / 1e5;
        assert!(mean.norm() < 0.02, "{mean}");
        for z in &t.samples {
            assert!((z.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn determinism_and_prefix() {
        let m = BaseMeasure::complex_gaussian(c(0.5, -1.0), 2.0).unwrap();
        let s = SeedSpec::new(42, 7);
        let a = sample(&m, s, 8).unwrap();
        let b = sample(&m, s, 8).unwrap();
        assert_eq!(a, b);
        let long = a.extend(16).unwrap();
        assert_eq!(&long.samples[..8], &a.samples[..]);
        assert_eq!(long, sample(&m, s, 16).unwrap());
        assert_eq!(a.extend(8).unwrap(), a);
        assert!(matches!(long.extend(3), Err(Error::Contract(_))));
    }

    #[test]
    fn parallel_chunks_match_sequential_prefix() {
        let m = BaseMeasure::uniform_disk(c(0.0, 0.0), 1.0).unwrap();
        let s = SeedSpec::new(5, 5);
        let big = sample(&m, s, 3 * PAR_CHUNK + 17).unwrap();
        let small = sample(&m, s, PAR_CHUNK + 3).unwrap();
        assert_eq!(&big.samples[..PAR_CHUNK + 3], &small.samples[..]);
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(BaseMeasure::uniform_disk(c(0.0, 0.0), 0.0).is_err());
        assert!(BaseMeasure::complex_cauchy(c(0.0, 0.0), -1.0).is_err());
        assert!(BaseMeasure::finite_support(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![0.5, 0.4]).is_err());
        assert!(BaseMeasure::finite_support(vec![c(0.0, 0.0), c(0.0, 0.0)], vec![0.5, 0.5]).is_err());
        assert!(BaseMeasure::finite_support(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![1.0, 0.0]).is_err());
        let bad = BaseMeasure::UniformCircle {
            center: c(0.0, 0.0),
            radius: -2.0,
        };
        assert!(sample(&bad, SeedSpec::new(0, 0), 3).is_err());
        let m = BaseMeasure::dirac(c(0.0, 0.0));
        assert!(sample(&m, SeedSpec::new(0, 0), 0).is_err());
    }

    #[test]
    fn multinomial_single_atom() {
        let m = BaseMeasure::dirac(c(3.0, 1.0));
        assert_eq!(multinomial_counts(&m, SeedSpec::new(0, 0), 7).unwrap(), vec![7]);
    }

    #[test]
    fn multinomial_fair_coin() {
        let m = BaseMeasure::uniform_atoms(vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let counts = multinomial_counts(&m, SeedSpec::new(11, 0), 10_000).unwrap();
        assert_eq!(counts.iter().sum::<usize>(), 10_000);
        assert!((counts[0] as f64 / 1e4 - 0.5).abs() < 0.02);
    }

    #[test]
    fn multinomial_matches_trajectory() {
        let atoms = vec![c(0.0, 0.0), c(1.0, 1.0), c(-2.0, 0.5)];
        let m = BaseMeasure::finite_support(atoms.clone(), vec![0.2, 0.3, 0.5]).unwrap();
        let s = SeedSpec::new(3, 99);
        let t = sample(&m, s, 5000).unwrap();
        let from_traj: Vec<usize> = atoms
            .iter()
            .map(|a| t.samples.iter().filter(|z| *z == a).count())
            .collect();
        assert_eq!(from_traj, multinomial_counts(&m, s, 5000).unwrap());
        assert!(multinomial_counts(&BaseMeasure::uniform_circle(c(0.0, 0.0), 1.0).unwrap(), s, 3).is_err());
    }

    #[test]
    fn strong_law_on_eight_atoms() {
        let atoms: Vec<_> = (0..8).map(|k| Complex64::from_polar(1.0, k as f64)).collect();
        let m = BaseMeasure::uniform_atoms(atoms).unwrap();
        let counts = multinomial_counts(&m, SeedSpec::new(2024, 1), 10_000).unwrap();
        let worst = counts
            .iter()
            .map(|&k| (k as f64 / 1e4 - 0.125).abs())
            .fold(0.0, f64::max);
        assert!(worst < 0.05, "{worst}");
    }

    #[test]
    fn distinct_streams_are_uncorrelated() {
        let m = BaseMeasure::complex_gaussian(c(0.0, 0.0), 1.0).unwrap();
        let a = sample(&m, SeedSpec::new(8, 0), 10_000).unwrap();
        let b = sample(&m, SeedSpec::new(8, 1), 10_000).unwrap();
        let xs: Vec<f64> = a.samples.iter().map(|z| z.re).collect();
        let ys: Vec<f64> = b.samples.iter().map(|z| z.re).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / n;
        let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>() / n;
        let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum::<f64>() / n;
        let corr = cov / (vx * vy).sqrt();
        assert!(corr.abs() < 0.05, "{corr}");
    }

    #[test]
    fn gaussian_scale_convention() {
        let m = BaseMeasure::complex_gaussian(c(0.0, 0.0), 2.0).unwrap();
        let t = sample(&m, SeedSpec::new(4, 4), 100_000).unwrap();
        let second: f64 = t.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() / 1e5;
        assert!((second - 4.0).abs() < 0.1, "{second}");
    }

    #[test]
    fn disk_samples_stay_inside() {
        let m = BaseMeasure::uniform_disk(c(1.0, 1.0), 0.5).unwrap();
        let t = sample(&m, SeedSpec::new(4, 0), 10_000).unwrap();
        assert!(t.samples.iter().all(|z| (z - c(1.0, 1.0)).norm() <= 0.5));
    }

    #[test]
    fn json_shape() {
        let m = BaseMeasure::uniform_circle(c(0.0, 0.5), 1.0).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"kind":"uniform_circle","params":{"center":[0.0,0.5],"radius":1.0}}"#);
        let back: BaseMeasure = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let fs = r#"{"kind":"finite_support","params":{"atoms":[[1,0],[-1,0]],"weights":[0.5,0.5]}}"#;
        assert!(serde_json::from_str::<BaseMeasure>(fs).is_ok());
        let unknown = r#"{"kind":"uniform_disk","params":{"center":[0,0],"radius":1,"extra":2}}"#;
        assert!(serde_json::from_str::<BaseMeasure>(unknown).is_err());
        let invalid = r#"{"kind":"uniform_disk","params":{"center":[0,0],"radius":-1}}"#;
        assert!(serde_json::from_str::<BaseMeasure>(invalid).is_err());
    }
}
