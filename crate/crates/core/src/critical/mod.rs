//! Critical points of `P_n = ∏(X − Z_k)`, i.e. the zeros of `P_n'`.
//!
//! Three routes are provided:
//!
//! * [`critical_points`]: Aberth–Ehrlich iteration on the rational function
//!   `S = P'/P`, evaluated in product form only (no expanded coefficients);
//! * [`critical_points_oracle`]: eigenvalues of the companion matrix of the
//!   expanded `P'` (small degree only);
//! * [`finite_support_critical`]: the closed form for roots taking `r`
//!   distinct values `z_i` with multiplicities `N_i`, where
//!   `P' = ∏(X − z_i)^{N_i − 1} · Q_r` and
//!   `Q_r = Σ_i N_i ∏_{j≠i}(X − z_j)`.

mod aberth;
pub mod geometry;
mod oracle;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::logderiv::{lex_cmp, RootSet};
use crate::sum::pairwise;

pub use oracle::{
    companion_eigenvalues, expand_from_roots, lagrange_companion_eigenvalues, ORACLE_MAX_DEGREE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Aberth,
    Companion,
    FiniteSupport,
}

/// The `n − 1` critical points with a residual certificate per point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalSet {
    pub points: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub method: Method,
    /// Aberth sweeps used (0 for the other methods).
    pub sweeps: usize,
    /// Roots merged with a neighbour that was close but not bitwise equal.
    pub near_duplicates_merged: usize,
}

impl CriticalSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn worst_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AberthOptions {
    /// Relative step tolerance: stop when every Newton–Aberth correction is
    /// below `tol · (1 + |W|)`. Also the bound on the residual certificate.
    pub tol: f64,
    pub max_sweeps: usize,
    /// Roots within this relative distance are merged into one multiple root.
    pub cluster_rel: f64,
}

impl Default for AberthOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_sweeps: 500,
            cluster_rel: 1e-14,
        }
    }
}

/// Distinct roots with integer multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Weighted {
    pub roots: Vec<Complex64>,
    pub mult: Vec<u32>,
    pub merged_near: usize,
}

impl Weighted {
    /// `(S(w), Σ m_k/|w − z_k|, min_k |w − z_k|)`.
    pub fn s_with_scale(&self, w: Complex64) -> (Complex64, f64, f64) {
        let (s, mag) = pairwise(self.roots.len(), |k| {
            let inv = (w - self.roots[k]).inv() * self.mult[k] as f64;
            (inv, inv.norm())
        });
        let dmin = self
            .roots
            .iter()
            .map(|z| (w - z).norm())
            .fold(f64::INFINITY, f64::min);
        (s, mag, dmin)
    }

    /// Residual certificate `|S(w)| · min_k |w − z_k|`.
    pub fn residual(&self, w: Complex64) -> f64 {
        let (s, _, dmin) = self.s_with_scale(w);
        s.norm() * dmin
    }
}

fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    a == b || (a - b).norm() <= rel * a.norm().max(b.norm())
}

/// Groups bitwise-equal and relatively close roots.
pub(crate) fn group_roots(roots: &RootSet, rel: f64) -> Weighted {
    let sorted = roots.canonical();
    let mut reps: Vec<Complex64> = Vec::new();
    let mut mult: Vec<u32> = Vec::new();
    let mut merged_near = 0;
    for &z in sorted {
        // Canonical order is lexicographic, so candidates sit at the tail
        // within the real-part window.
        let window = rel * (z.norm() + 1.0);
        let mut hit = None;
        for k in (0..reps.len()).rev() {
            if z.re - reps[k].re > window {
                break;
            }
            if close(z, reps[k], rel) {
                hit = Some(k);
                break;
            }
        }
        match hit {
            Some(k) => {
                if z != reps[k] {
                    merged_near += 1;
                }
                mult[k] += 1;
            }
            None => {
                reps.push(z);
                mult.push(1);
            }
        }
    }
    Weighted {
        roots: reps,
        mult,
        merged_near,
    }
}

/// Critical points by Aberth–Ehrlich iteration with default options and the
/// given tolerance.
pub fn critical_points(roots: &RootSet, tol: f64) -> Result<CriticalSet> {
    critical_points_with(
        roots,
        &AberthOptions {
            tol,
            ..AberthOptions::default()
        },
    )
}

pub fn critical_points_with(roots: &RootSet, opts: &AberthOptions) -> Result<CriticalSet> {
    if roots.len() < 2 {
        return Err(Error::Parameter("critical points need at least two roots".into()));
    }
    if !(opts.tol > 0.0) {
        return Err(Error::Parameter(format!("tolerance must be positive, got {}", opts.tol)));
    }
    let weighted = group_roots(roots, opts.cluster_rel);
    let mut points = Vec::with_capacity(roots.len() - 1);
    let mut residuals = Vec::with_capacity(roots.len() - 1);
    push_repeated(&weighted, &mut points, &mut residuals);

    let (free, res, sweeps) = aberth::solve(&weighted, opts)?;
    points.extend(free);
    residuals.extend(res);
    debug_assert_eq!(points.len(), roots.len() - 1);
    Ok(CriticalSet {
        points,
        residuals,
        method: Method::Aberth,
        sweeps,
        near_duplicates_merged: weighted.merged_near,
    })
}

fn push_repeated(w: &Weighted, points: &mut Vec<Complex64>, residuals: &mut Vec<f64>) {
    for (&z, &m) in w.roots.iter().zip(&w.mult) {
        for _ in 1..m {
            points.push(z);
            residuals.push(0.0);
        }
    }
}

/// Companion-matrix oracle: eigenvalues of the Lagrange-basis companion
/// matrix of `P'` (see [`lagrange_companion_eigenvalues`]). Limited to
/// `n ≤ ORACLE_MAX_DEGREE`.
pub fn critical_points_oracle(roots: &RootSet) -> Result<CriticalSet> {
    let n = roots.len();
    if n > ORACLE_MAX_DEGREE {
        return Err(Error::Scope {
            degree: n,
            limit: ORACLE_MAX_DEGREE,
        });
    }
    if n < 2 {
        return Err(Error::Parameter("critical points need at least two roots".into()));
    }
    // Work in the variable y = (x − c)/s so that the roots fill the unit disk.
    let c = roots.centroid();
    let s = roots
        .roots()
        .iter()
        .map(|z| (z - c).norm())
        .fold(0.0, f64::max);
    let s = if s > 0.0 { s } else { 1.0 };
    let scaled: Vec<Complex64> = roots.canonical().iter().map(|z| (z - c) / s).collect();
    let ys = lagrange_companion_eigenvalues(&scaled)?;
    let points: Vec<Complex64> = ys.into_iter().map(|y| c + y * s).collect();
    let weighted = group_roots(roots, 0.0);
    let residuals = points.iter().map(|&w| oracle_residual(&weighted, w)).collect();
    Ok(CriticalSet {
        points,
        residuals,
        method: Method::Companion,
        sweeps: 0,
        near_duplicates_merged: 0,
    })
}

fn oracle_residual(w: &Weighted, p: Complex64) -> f64 {
    if w.roots.contains(&p) {
        0.0
    } else {
        w.residual(p)
    }
}

/// `P = ∏ (X − z_i)^{N_i}` with distinct atoms and positive counts.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSupportInstance {
    atoms: Vec<Complex64>,
    counts: Vec<usize>,
}

impl FiniteSupportInstance {
    pub fn new(atoms: Vec<Complex64>, counts: Vec<usize>) -> Result<Self> {
        if atoms.is_empty() || atoms.len() != counts.len() {
            return Err(Error::Parameter(format!(
                "need matching nonempty atoms and counts, got {} and {}",
                atoms.len(),
                counts.len()
            )));
        }
        if counts.contains(&0) {
            return Err(Error::Parameter("every count must be at least 1".into()));
        }
        for (i, a) in atoms.iter().enumerate() {
            if atoms[..i].contains(a) {
                return Err(Error::Parameter(format!("atom {i} is repeated")));
            }
        }
        Ok(Self { atoms, counts })
    }

    /// Drops atoms with zero count (as produced by multinomial sampling).
    pub fn from_counts(atoms: &[Complex64], counts: &[usize]) -> Result<Self> {
        let (a, c): (Vec<_>, Vec<_>) = atoms
            .iter()
            .zip(counts)
            .filter(|(_, &k)| k > 0)
            .map(|(&z, &k)| (z, k))
            .unzip();
        Self::new(a, c)
    }

    pub fn atoms(&self) -> &[Complex64] {
        &self.atoms
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn degree(&self) -> usize {
        self.counts.iter().sum()
    }

    /// The multiset of roots, each atom repeated `N_i` times.
    pub fn expand(&self) -> Vec<Complex64> {
        self.atoms
            .iter()
            .zip(&self.counts)
            .flat_map(|(&z, &k)| std::iter::repeat_n(z, k))
            .collect()
    }

    /// Coefficients (ascending) of `Q_r(X) = Σ_i N_i ∏_{j≠i}(X − z_j)`.
    pub fn q_coefficients(&self) -> Vec<Complex64> {
        let r = self.atoms.len();
        let mut q = vec![Complex64::new(0.0, 0.0); r];
        for i in 0..r {
            let others: Vec<Complex64> = (0..r).filter(|&j| j != i).map(|j| self.atoms[j]).collect();
            let term = expand_from_roots(&others);
            for (acc, t) in q.iter_mut().zip(term) {
                *acc += t * self.counts[i] as f64;
            }
        }
        q
    }

    fn weighted(&self) -> Weighted {
        let mut pairs: Vec<(Complex64, u32)> = self
            .atoms
            .iter()
            .zip(&self.counts)
            .map(|(&z, &k)| (z, k as u32))
            .collect();
        pairs.sort_by(|a, b| lex_cmp(&a.0, &b.0));
        Weighted {
            roots: pairs.iter().map(|p| p.0).collect(),
            mult: pairs.iter().map(|p| p.1).collect(),
            merged_near: 0,
        }
    }
}

/// Closed form: each atom with multiplicity `N_i − 1`, plus the `r − 1`
/// zeros of `Q_r` (companion eigenvalues, or the exact root when `r = 2`).
pub fn finite_support_critical(inst: &FiniteSupportInstance) -> Result<CriticalSet> {
    let weighted = inst.weighted();
    let mut points = Vec::with_capacity(inst.degree().saturating_sub(1));
    let mut residuals = Vec::new();
    push_repeated(&weighted, &mut points, &mut residuals);
    let q = inst.q_coefficients();
    let extra = companion_eigenvalues(&q)?;
    for w in extra {
        residuals.push(weighted.residual(w));
        points.push(w);
    }
    Ok(CriticalSet {
        points,
        residuals,
        method: Method::FiniteSupport,
        sweeps: 0,
        near_duplicates_merged: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::match_multisets;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rs(v: &[Complex64]) -> RootSet {
        RootSet::from_slice(v).unwrap()
    }

    #[test]
    fn two_roots() {
        let cs = critical_points(&rs(&[c(1.0, 0.0), c(-1.0, 0.0)]), 1e-10).unwrap();
        assert_eq!(cs.points, vec![c(0.0, 0.0)]);
        let or = critical_points_oracle(&rs(&[c(1.0, 0.0), c(-1.0, 0.0)])).unwrap();
        assert!(or.points[0].norm() < 1e-15);
    }

    #[test]
    fn fourth_roots_of_unity() {
        let roots = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        let cs = critical_points(&rs(&roots), 1e-10).unwrap();
        assert_eq!(cs.len(), 3);
        // A triple zero is resolved only to about ε^{1/3}.
        for p in &cs.points {
            assert!(p.norm() < 1e-4, "{p}");
        }
        assert!(cs.worst_residual() <= 1e-10);
        let or = critical_points_oracle(&rs(&roots)).unwrap();
        for p in &or.points {
            assert!(p.norm() < 1e-4, "{p}");
        }
    }

    #[test]
    fn oracle_double_root() {
        let roots = [c(0.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)];
        let or = critical_points_oracle(&rs(&roots)).unwrap();
        let m = match_multisets(&or.points, &[c(0.0, 0.0), c(2.0, 0.0)]);
        assert!(m.max_distance < 1e-12, "{:?}", or.points);
        let ab = critical_points(&rs(&roots), 1e-10).unwrap();
        let m = match_multisets(&ab.points, &[c(0.0, 0.0), c(2.0, 0.0)]);
        assert!(m.max_distance < 1e-12, "{:?}", ab.points);
    }

    #[test]
    fn oracle_scope_guard() {
        let roots: Vec<Complex64> = (0..65).map(|k| c(k as f64, 0.0)).collect();
        assert!(matches!(
            critical_points_oracle(&rs(&roots)),
            Err(Error::Scope { degree: 65, .. })
        ));
    }

    #[test]
    fn single_root_is_rejected() {
        assert!(critical_points(&rs(&[c(1.0, 0.0)]), 1e-10).is_err());
        assert!(critical_points(&rs(&[c(1.0, 0.0), c(0.0, 0.0)]), 0.0).is_err());
    }

    #[test]
    fn all_equal_roots() {
        let roots = vec![c(2.0, -1.0); 6];
        let cs = critical_points(&rs(&roots), 1e-10).unwrap();
        assert_eq!(cs.points, vec![c(2.0, -1.0); 5]);
        assert_eq!(cs.sweeps, 0);
    }

    #[test]
    fn near_duplicates_are_merged_and_counted() {
        let z = c(1.0, 1.0);
        let roots = [z, z * (1.0 + 1e-15), c(-1.0, 0.0)];
        let cs = critical_points(&rs(&roots), 1e-10).unwrap();
        assert_eq!(cs.near_duplicates_merged, 1);
        assert_eq!(cs.len(), 2);
    }

    #[test]
    fn finite_support_examples() {
        let inst = FiniteSupportInstance::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], vec![3, 5]).unwrap();
        let q = inst.q_coefficients();
        assert_eq!(q, vec![c(-2.0, 0.0), c(8.0, 0.0)]);
        let cs = finite_support_critical(&inst).unwrap();
        let mut pts = cs.points.clone();
        pts.sort_by(lex_cmp);
        assert_eq!(
            pts,
            vec![
                c(-1.0, 0.0),
                c(-1.0, 0.0),
                c(-1.0, 0.0),
                c(-1.0, 0.0),
                c(0.25, 0.0),
                c(1.0, 0.0),
                c(1.0, 0.0)
            ]
        );

        let pair = FiniteSupportInstance::new(vec![c(1.0, 0.0), c(-1.0, 0.0)], vec![1, 1]).unwrap();
        assert_eq!(finite_support_critical(&pair).unwrap().points, vec![c(0.0, 0.0)]);

        let one = FiniteSupportInstance::new(vec![c(0.5, 2.0)], vec![9]).unwrap();
        assert_eq!(finite_support_critical(&one).unwrap().points, vec![c(0.5, 2.0); 8]);
    }

    #[test]
    fn finite_support_validation() {
        assert!(FiniteSupportInstance::new(vec![c(0.0, 0.0)], vec![0]).is_err());
        assert!(FiniteSupportInstance::new(vec![c(0.0, 0.0), c(0.0, 0.0)], vec![1, 1]).is_err());
        assert!(FiniteSupportInstance::new(vec![], vec![]).is_err());
        let inst = FiniteSupportInstance::from_counts(&[c(0.0, 0.0), c(1.0, 0.0)], &[0, 4]).unwrap();
        assert_eq!(inst.atoms(), &[c(1.0, 0.0)]);
    }

    #[test]
    fn serializes_points_as_pairs() {
        let cs = critical_points(&rs(&[c(1.0, 0.0), c(-1.0, 0.0)]), 1e-10).unwrap();
        let v = serde_json::to_value(&cs).unwrap();
        assert_eq!(v["points"], serde_json::json!([[0.0, 0.0]]));
        assert_eq!(v["method"], "aberth");
    }
}
