use critpoint_core::critical::geometry::{convex_hull, diameter, hull_distance};
use critpoint_core::matching::match_multisets;
use critpoint_core::{
    critical_points, critical_points_oracle, finite_support_critical, sample, BaseMeasure, Complex64,
    FiniteSupportInstance, RootSet, SeedSpec,
};
use proptest::prelude::*;

fn measure(kind: u8) -> BaseMeasure {
    let o = Complex64::new(0.0, 0.0);
    match kind % 4 {
        0 => BaseMeasure::uniform_disk(o, 1.0).unwrap(),
        1 => BaseMeasure::uniform_circle(o, 1.0).unwrap(),
        2 => BaseMeasure::complex_gaussian(o, 1.0).unwrap(),
        _ => BaseMeasure::complex_cauchy(o, 1.0).unwrap(),
    }
}

fn roots(kind: u8, seed: u64, n: usize) -> RootSet {
    RootSet::new(sample(&measure(kind), SeedSpec::new(seed, 0), n).unwrap().samples).unwrap()
}

fn arb_complex() -> impl Strategy<Value = Complex64> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(x, y)| Complex64::new(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn count_vieta_and_hull(kind in 0u8..4, seed in any::<u64>(), n in 2usize..200) {
        let rs = roots(kind, seed, n);
        let cs = critical_points(&rs, 1e-10).unwrap();
        prop_assert_eq!(cs.len(), n - 1);

        let factor = (n - 1) as f64 / n as f64;
        let sum_w: Complex64 = cs.points.iter().sum();
        let sum_z: Complex64 = rs.roots().iter().sum();
        let scale = cs.points.iter().map(|w| w.norm()).sum::<f64>().max(1e-300);
        prop_assert!((sum_w - sum_z * factor).norm() <= 1e-9 * scale);

        let hull = convex_hull(rs.roots());
        let tol = 1e-8 * diameter(&hull);
        for &p in &cs.points {
            prop_assert!(hull_distance(&hull, p) <= tol, "{} outside by {}", p, hull_distance(&hull, p));
        }
    }

    #[test]
    fn affine_equivariance(seed in any::<u64>(), n in 2usize..80, alpha in arb_complex(), beta in arb_complex()) {
        prop_assume!(alpha.norm() > 0.1);
        let rs = roots(0, seed, n);
        let moved = RootSet::new(rs.roots().iter().map(|z| alpha * z + beta).collect()).unwrap();
        let base = critical_points(&rs, 1e-12).unwrap();
        let image: Vec<Complex64> = base.points.iter().map(|w| alpha * w + beta).collect();
        let direct = critical_points(&moved, 1e-12).unwrap();
        let scale = image.iter().map(|w| w.norm()).fold(1.0, f64::max);
        prop_assert!(match_multisets(&image, &direct.points).max_distance <= 1e-9 * scale);
    }

    #[test]
    fn solver_agrees_with_oracle(kind in 0u8..3, seed in any::<u64>(), n in 2usize..=64) {
        let rs = roots(kind, seed, n);
        let a = critical_points(&rs, 1e-10).unwrap();
        let b = critical_points_oracle(&rs).unwrap();
        prop_assert!(match_multisets(&a.points, &b.points).max_distance <= 1e-6);
    }

    #[test]
    fn finite_support_agrees_with_solver(
        atoms in prop::collection::vec(arb_complex(), 1..=5),
        counts in prop::collection::vec(1usize..12, 5),
    ) {
        let mut distinct: Vec<Complex64> = Vec::new();
        for a in atoms {
            if distinct.iter().all(|b| (a - b).norm() > 1e-3) {
                distinct.push(a);
            }
        }
        let counts = counts[..distinct.len()].to_vec();
        prop_assume!(counts.iter().sum::<usize>() >= 2);
        let inst = FiniteSupportInstance::new(distinct, counts).unwrap();
        let closed = finite_support_critical(&inst).unwrap();
        let general = critical_points(&RootSet::new(inst.expand()).unwrap(), 1e-12).unwrap();
        prop_assert!(match_multisets(&closed.points, &general.points).max_distance <= 1e-8);
    }

    #[test]
    fn prefixes_are_stable(kind in 0u8..4, seed in any::<u64>(), n in 1usize..300, extra in 0usize..300) {
        let mu = measure(kind);
        let short = sample(&mu, SeedSpec::new(seed, 3), n).unwrap();
        let long = sample(&mu, SeedSpec::new(seed, 3), n + extra).unwrap();
        prop_assert_eq!(&long.samples[..n], &short.samples[..]);
        prop_assert_eq!(short.extend(n + extra).unwrap().samples, long.samples);
    }
}
