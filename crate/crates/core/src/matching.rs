//! Optimal bipartite matching of point multisets (Hungarian method with
//! potentials, `O(n³)`).

use num_complex::Complex64;

/// Minimum-cost perfect assignment for a square cost matrix given row-major.
/// Returns `assign[row] = column`.
pub fn optimal_assignment(n: usize, cost: &[f64]) -> Vec<usize> {
    assert_eq!(cost.len(), n * n, "cost matrix must be n × n");
    // 1-based arrays with a virtual column 0, as in the classical formulation.
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut col0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let r0 = owner[col0];
            let mut delta = inf;
            let mut col1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[(r0 - 1) * n + (j - 1)] - u[r0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = col0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    col1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            col0 = col1;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let col1 = way[col0];
            owner[col0] = owner[col1];
            col0 = col1;
            if col0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0; n];
    for j in 1..=n {
        if owner[j] > 0 {
            assign[owner[j] - 1] = j - 1;
        }
    }
    assign
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultisetMatch {
    pub assignment: Vec<usize>,
    /// Largest matched distance.
    pub max_distance: f64,
    /// Sum of matched distances (the optimised objective).
    pub total: f64,
}

/// Matches two equal-size multisets minimising the total distance.
pub fn match_multisets(a: &[Complex64], b: &[Complex64]) -> MultisetMatch {
    assert_eq!(a.len(), b.len(), "multisets must have equal size");
    let n = a.len();
    let cost: Vec<f64> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| (x - y).norm()))
        .collect();
    let assignment = optimal_assignment(n, &cost);
    let dists: Vec<f64> = assignment
        .iter()
        .enumerate()
        .map(|(i, &j)| (a[i] - b[j]).norm())
        .collect();
    MultisetMatch {
        assignment,
        max_distance: dists.iter().copied().fold(0.0, f64::max),
        total: dists.iter().sum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(n: usize, cost: &[f64]) -> f64 {
        fn rec(row: usize, n: usize, used: &mut Vec<bool>, cost: &[f64]) -> f64 {
            if row == n {
                return 0.0;
            }
            let mut best = f64::INFINITY;
            for j in 0..n {
                if !used[j] {
                    used[j] = true;
                    best = best.min(cost[row * n + j] + rec(row + 1, n, used, cost));
                    used[j] = false;
                }
            }
            best
        }
        rec(0, n, &mut vec![false; n], cost)
    }

    #[test]
    fn agrees_with_enumeration() {
        let mut s = 12345u64;
        for n in 1..=6 {
            for _ in 0..20 {
                let cost: Vec<f64> = (0..n * n)
                    .map(|_| {
                        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        (s >> 11) as f64 / (1u64 << 53) as f64
                    })
                    .collect();
                let a = optimal_assignment(n, &cost);
                let got: f64 = a.iter().enumerate().map(|(i, &j)| cost[i * n + j]).sum();
                assert!((got - brute_force(n, &cost)).abs() < 1e-12);
                let mut seen = a.clone();
                seen.sort();
                assert_eq!(seen, (0..n).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn permuted_multiset_matches_exactly() {
        let a = [Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0), Complex64::new(0.0, 1.0)];
        let b = [a[1], a[0], a[2]];
        let m = match_multisets(&a, &b);
        assert_eq!(m.max_distance, 0.0);
    }
}
