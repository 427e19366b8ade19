//! Convex hulls of root sets, for Gauss–Lucas checks.

use num_complex::Complex64;

use crate::logderiv::lex_cmp;

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Convex hull in counter-clockwise order (Andrew's monotone chain).
/// Collinear inputs give the two extreme points.
pub fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut p = points.to_vec();
    p.sort_by(lex_cmp);
    p.dedup();
    if p.len() <= 2 {
        return p;
    }
    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * p.len());
    for &q in &p {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0.0 {
            hull.pop();
        }
        hull.push(q);
    }
    let lower = hull.len() + 1;
    for &q in p.iter().rev().skip(1) {
        while hull.len() >= lower && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0.0 {
            hull.pop();
        }
        hull.push(q);
    }
    hull.pop();
    hull
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Euclidean distance from `z` to the convex polygon `hull` (0 inside).
pub fn hull_distance(hull: &[Complex64], z: Complex64) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => (z - hull[0]).norm(),
        2 => segment_distance(z, hull[0], hull[1]),
        k => {
            let inside = (0..k).all(|i| cross(hull[i], hull[(i + 1) % k], z) >= 0.0);
            if inside {
                0.0
            } else {
                (0..k)
                    .map(|i| segment_distance(z, hull[i], hull[(i + 1) % k]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// Largest pairwise distance among hull vertices.
pub fn diameter(hull: &[Complex64]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in hull.iter().enumerate() {
        for b in &hull[i + 1..] {
            d = d.max((a - b).norm());
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn square_hull() {
        let pts = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0), c(0.5, 0.5)];
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        assert_eq!(hull_distance(&h, c(0.5, 0.2)), 0.0);
        assert!((hull_distance(&h, c(2.0, 0.5)) - 1.0).abs() < 1e-15);
        assert!((diameter(&h) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn degenerate_hulls() {
        let seg = convex_hull(&[c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(seg.len(), 2);
        assert!(hull_distance(&seg, c(0.3, 0.0)) < 1e-15);
        assert!((hull_distance(&seg, c(0.0, 2.0)) - 2.0).abs() < 1e-15);
        let pt = convex_hull(&[c(1.0, 1.0), c(1.0, 1.0)]);
        assert_eq!(pt.len(), 1);
    }
}
