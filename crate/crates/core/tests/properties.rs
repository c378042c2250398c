use geomoment::bounds::{
    bhatia_davis_bound, bhatia_davis_lp, equality_case, interior_margin, max_variance, AtomicMeasure,
    EqualityVerdict, INTERIOR_MARGIN,
};
use geomoment::conjugate::{biconjugate_at, translated_biconjugate_zero, ExtendedReal};
use geomoment::geometry::{diameter, jung_radius, PointCloud, Shape};
use geomoment::isodiametric::{jung_verify, tension_check, Tension};
use geomoment::vecops;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_cloud(rng: &mut ChaCha8Rng, n: usize, len: usize, spread: f64) -> PointCloud {
    let rows = (0..len)
        .map(|_| (0..n).map(|_| rng.random_range(-spread..spread)).collect())
        .collect();
    PointCloud::from_rows(rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn translation_identity(seed in any::<u64>(), n in prop::sample::select(vec![1usize, 2, 3, 5])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cloud = random_cloud(&mut rng, n, 3 * n + 3, 2.0);
        // Inside the hull: a random convex combination.
        let w: Vec<f64> = (0..cloud.len()).map(|_| rng.random_range(0.0..1.0)).collect();
        let total: f64 = w.iter().sum();
        let mut x = vec![0.0; n];
        for (p, wi) in cloud.iter().zip(&w) {
            vecops::axpy(&mut x, wi / total, p);
        }
        let lhs = translated_biconjugate_zero(&cloud, &x).unwrap().finite().unwrap();
        let rhs = vecops::norm_sq(&x) + biconjugate_at(&cloud, &x).unwrap().finite().unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-8);

        // Outside the hull both sides are +∞.
        let far = vec![10.0; n];
        prop_assert_eq!(translated_biconjugate_zero(&cloud, &far).unwrap(), ExtendedReal::PosInfinity);
        prop_assert_eq!(biconjugate_at(&cloud, &far).unwrap(), ExtendedReal::PosInfinity);
    }

    #[test]
    fn bound_dominates_variance(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cloud = random_cloud(&mut rng, n, 8, 1.0);
        let w: Vec<f64> = (0..8).map(|_| rng.random_range(0.0..1.0)).collect();
        let m = AtomicMeasure::from_unnormalized(cloud.clone(), w).unwrap();
        let bound = bhatia_davis_lp(&cloud, &m.mean()).unwrap().bound;
        prop_assert!(m.variance() <= bound + 1e-9);
        prop_assert!(bound <= max_variance(&cloud).unwrap().dual_value + 1e-9);
    }

    #[test]
    fn bound_scales_quadratically(seed in any::<u64>(), s in 0.1f64..10.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cloud = random_cloud(&mut rng, 2, 7, 1.0);
        let xbar = cloud.centroid();
        let base = bhatia_davis_bound(&Shape::cloud(cloud.clone()), &xbar).unwrap();
        let scaled = bhatia_davis_bound(&Shape::cloud(cloud.scaled(s)), &vecops::scale(&xbar, s)).unwrap();
        prop_assert!((scaled - s * s * base).abs() <= 1e-9 * (1.0 + s * s * base));
    }

    #[test]
    fn maximizer_attains_equality(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cloud = random_cloud(&mut rng, n, 12, 1.0);
        let rep = max_variance(&cloud).unwrap();
        prop_assert!(rep.gap <= 1e-9);
        let verdict = equality_case(&rep.maximizer, &cloud, 1e-7).unwrap();
        let interior = matches!(interior_margin(&cloud, &rep.maximizer.mean()).unwrap(), Some(t) if t >= INTERIOR_MARGIN);
        if interior {
            prop_assert!(matches!(verdict, EqualityVerdict::Equal { .. }), "{:?}", verdict);
        } else {
            prop_assert_eq!(verdict, EqualityVerdict::Indeterminate);
        }
    }

    #[test]
    fn jung_on_generated_clouds(seed in any::<u64>(), n in 1usize..=5, len in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cloud = random_cloud(&mut rng, n, len, 3.0);
        let rep = jung_verify(&cloud, 1e-9);
        prop_assert!(rep.ok);
        prop_assert!(rep.radius <= jung_radius(n) * diameter(&cloud) + 1e-9);
    }
}

/// Rejection-samples configurations on the sphere of radius `r > r_n` with
/// diameter at most 1 and checks that none has the origin in its hull.
#[test]
fn tension_cap_configurations_miss_origin() {
    let r = 0.7;
    for seed in 0..20u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 2 + (seed % 2) as usize;
        let dir = |rng: &mut ChaCha8Rng| loop {
            let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let len = vecops::norm(&v);
            if len > 1e-3 && len <= 1.0 {
                return vecops::scale(&v, r / len);
            }
        };
        let pole = dir(&mut rng);
        let mut accepted = 0;
        for _ in 0..10_000 {
            let k = rng.random_range(n..=n + 3);
            let mut rows = Vec::with_capacity(k);
            while rows.len() < k {
                let p = dir(&mut rng);
                if vecops::dist(&p, &pole) <= 1.0 {
                    rows.push(p);
                }
            }
            let cloud = PointCloud::from_rows(rows).unwrap();
            if diameter(&cloud) > 1.0 {
                continue;
            }
            accepted += 1;
            let rep = tension_check(&cloud, r, 1e-12).unwrap();
            assert_eq!(rep.classification, Tension::OriginOutsideHull, "seed {seed}");
        }
        if accepted == 0 {
            eprintln!("seed {seed}: no configuration accepted, check is vacuous");
        }
    }
}

#[test]
fn simplex_vertices_at_threshold() {
    for n in 1..=5 {
        let spec = geomoment::geometry::regular_simplex(n, 1.0, &vec![0.0; n]).unwrap();
        let rep = tension_check(&spec.vertices, jung_radius(n), 1e-9).unwrap();
        assert_eq!(rep.classification, Tension::OriginInHullSimplexVertices);
        let jung = jung_verify(&spec.vertices, 1e-9);
        assert!(jung.tight);
        assert_eq!(jung.simplex.map(|s| s.len()), Some(n + 1));
    }
}
