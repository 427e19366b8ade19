//! Coefficient-space route: polynomial expansion and companion-matrix
//! eigenvalues (complex Schur form).

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest degree accepted by the companion-matrix oracle.
pub const ORACLE_MAX_DEGREE: usize = 64;

const SCHUR_MAX_ITER: usize = 10_000;

/// Ascending coefficients of `∏ (X − r_k)`.
pub fn expand_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        c.push(Complex64::new(0.0, 0.0));
        for j in (1..c.len()).rev() {
            c[j] = c[j - 1] - r * c[j];
        }
        c[0] = -r * c[0];
    }
    c
}

/// Zeros of the polynomial with ascending coefficients `coeffs`, computed as
/// eigenvalues of its companion matrix.
pub fn companion_eigenvalues(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let Some(lead_pos) = coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0)) else {
        return Err(Error::Parameter("zero polynomial has no well-defined zeros".into()));
    };
    // Exact zeros at the origin are split off; Schur iteration stalls on
    // nilpotent companion blocks.
    let low = coeffs.iter().position(|c| *c != Complex64::new(0.0, 0.0)).unwrap_or(0);
    let coeffs = &coeffs[low..=lead_pos];
    let mut out = vec![Complex64::new(0.0, 0.0); low];
    let degree = coeffs.len() - 1;
    let lead = coeffs[degree];
    match degree {
        0 => Ok(out),
        1 => {
            out.push(-coeffs[0] / lead);
            Ok(out)
        }
        _ => {
            let mut m = DMatrix::<Complex64>::zeros(degree, degree);
            for i in 1..degree {
                m[(i, i - 1)] = Complex64::new(1.0, 0.0);
            }
            for (i, c) in coeffs[..degree].iter().enumerate() {
                m[(i, degree - 1)] = -c / lead;
            }
            let eig = Schur::try_new(m, f64::EPSILON, SCHUR_MAX_ITER)
                .and_then(|s| s.eigenvalues())
                .ok_or(Error::Convergence {
                    sweeps: SCHUR_MAX_ITER,
                    worst_residual: f64::INFINITY,
                })?;
            out.extend(eig.iter().copied());
            Ok(out)
        }
    }
}

/// Zeros of `P'` for `P = ∏(X − r_k)`, as the eigenvalues of the companion
/// matrix `D(I − 11ᵀ/n)` of `P'` in the Lagrange basis at the roots
/// (`D = diag(r_k)`).
///
/// `D(I − 11ᵀ/n)` has spectrum `{0} ∪ {zeros of P'}` with `1` spanning the
/// kernel; a Householder reflection sending `1` to `√n e₁` splits the zero
/// off exactly, leaving an `(n − 1) × (n − 1)` block.
pub fn lagrange_companion_eigenvalues(roots: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = roots.len();
    match n {
        0 => return Err(Error::Parameter("need at least one root".into())),
        1 => return Ok(Vec::new()),
        _ => {}
    }
    let nf = n as f64;
    let a = DMatrix::<Complex64>::from_fn(n, n, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        roots[i] * (id - 1.0 / nf)
    });
    let mut u = DMatrix::<Complex64>::from_element(n, 1, Complex64::new(1.0, 0.0));
    u[(0, 0)] -= nf.sqrt();
    let beta = 2.0 / u.iter().map(|x| x.norm_sqr()).sum::<f64>();
    let h = DMatrix::<Complex64>::identity(n, n) - &u * u.transpose() * Complex64::new(beta, 0.0);
    let hah = &h * a * &h;
    let block = hah.view((1, 1), (n - 1, n - 1)).into_owned();
    let eig = Schur::try_new(block, f64::EPSILON, SCHUR_MAX_ITER)
        .and_then(|s| s.eigenvalues())
        .ok_or(Error::Convergence {
            sweeps: SCHUR_MAX_ITER,
            worst_residual: f64::INFINITY,
        })?;
    Ok(eig.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lagrange_companion_small_cases() {
        // X³ − X has derivative 3X² − 1.
        let mut e = lagrange_companion_eigenvalues(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        e.sort_by(|a, b| a.re.total_cmp(&b.re));
        let r = 1.0 / 3f64.sqrt();
        assert!((e[0] - c(-r, 0.0)).norm() < 1e-14 && (e[1] - c(r, 0.0)).norm() < 1e-14, "{e:?}");
        // X²(X − 3): zeros of 3X² − 6X are 0 and 2.
        let mut e = lagrange_companion_eigenvalues(&[c(0.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)]).unwrap();
        e.sort_by(|a, b| a.re.total_cmp(&b.re));
        assert!(e[0].norm() < 1e-14 && (e[1] - c(2.0, 0.0)).norm() < 1e-14, "{e:?}");
        assert!(lagrange_companion_eigenvalues(&[c(5.0, 1.0)]).unwrap().is_empty());
    }

    #[test]
    fn expansion() {
        // (X − 1)(X + 1) = X² − 1
        assert_eq!(
            expand_from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]),
            vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]
        );
        // X²(X − 3) = X³ − 3X²
        assert_eq!(
            expand_from_roots(&[c(0.0, 0.0), c(0.0, 0.0), c(3.0, 0.0)]),
            vec![c(0.0, 0.0), c(0.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)]
        );
    }

    #[test]
    fn cubic_roots() {
        let roots = [c(1.0, 1.0), c(-2.0, 0.5), c(0.0, -1.0)];
        let mut eig = companion_eigenvalues(&expand_from_roots(&roots)).unwrap();
        eig.sort_by(|a, b| a.re.total_cmp(&b.re));
        let mut want = roots.to_vec();
        want.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (a, b) in eig.iter().zip(&want) {
            assert!((a - b).norm() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn degenerate_inputs() {
        assert!(companion_eigenvalues(&[c(0.0, 0.0)]).is_err());
        assert!(companion_eigenvalues(&[c(2.0, 0.0)]).unwrap().is_empty());
        // Trailing zeros above the true degree are ignored.
        assert_eq!(
            companion_eigenvalues(&[c(-2.0, 0.0), c(8.0, 0.0), c(0.0, 0.0)]).unwrap(),
            vec![c(0.25, 0.0)]
        );
    }
}
