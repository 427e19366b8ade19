//! Pairwise (tree) summation.

use num_complex::Complex64;

const LEAF: usize = 16;

pub(crate) trait Summand: Copy {
    fn zero() -> Self;
    fn plus(self, other: Self) -> Self;
}

impl Summand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
}

impl Summand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
}

impl<A: Summand, B: Summand> Summand for (A, B) {
    fn zero() -> Self {
        (A::zero(), B::zero())
    }
    fn plus(self, other: Self) -> Self {
        (self.0.plus(other.0), self.1.plus(other.1))
    }
}

impl<A: Summand, B: Summand, C: Summand> Summand for (A, B, C) {
    fn zero() -> Self {
        (A::zero(), B::zero(), C::zero())
    }
    fn plus(self, other: Self) -> Self {
        (
            self.0.plus(other.0),
            self.1.plus(other.1),
            self.2.plus(other.2),
        )
    }
}

/// Sums `term(0) + … + term(len - 1)` with a balanced tree over the index
/// range; the tree shape depends only on `len`.
pub(crate) fn pairwise<T: Summand, F: Fn(usize) -> T>(len: usize, term: F) -> T {
    fn rec<T: Summand, F: Fn(usize) -> T>(lo: usize, hi: usize, term: &F) -> T {
        if hi - lo <= LEAF {
            let mut acc = T::zero();
            for i in lo..hi {
                acc = acc.plus(term(i));
            }
            acc
        } else {
            let mid = lo + (hi - lo) / 2;
            rec(lo, mid, term).plus(rec(mid, hi, term))
        }
    }
    rec(0, len, &term)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_naive_on_integers() {
        let s: f64 = pairwise(1000, |i| i as f64);
        assert_eq!(s, 499_500.0);
        let e: f64 = pairwise(0, |_| 1.0);
        assert_eq!(e, 0.0);
    }

    #[test]
    fn beats_naive_on_small_increments() {
        let n = 1 << 20;
        let naive: f64 = (0..n).map(|_| 0.1f64).sum();
        let tree: f64 = pairwise(n, |_| 0.1f64);
        let exact = 0.1 * n as f64;
        assert!((tree - exact).abs() <= (naive - exact).abs());
    }
}
