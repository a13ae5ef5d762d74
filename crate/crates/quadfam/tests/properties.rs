//! Property tests for the measure metric, the partition, and the orbit
//! arithmetic.

use proptest::prelude::*;
use quadfam::bc::{self, BCConfig};
use quadfam::dynamics::{self, MapParam};
use quadfam::measures::{self, EmpiricalMeasure};
use quadfam::report;

fn arb_measure(max_atoms: usize) -> impl Strategy<Value = EmpiricalMeasure> {
    prop::collection::vec((-1.0f64..1.0, 0.05f64..1.0), 1..max_atoms).prop_map(|raw| {
        let total: f64 = raw.iter().map(|(_, w)| w).sum();
        let atoms: Vec<(f64, f64)> = raw.into_iter().map(|(x, w)| (x, w / total)).collect();
        EmpiricalMeasure::from_atoms(atoms).expect("normalized atoms form a measure")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn w1_is_symmetric_and_satisfies_triangle(
        mu in arb_measure(12),
        nu in arb_measure(12),
        rho in arb_measure(12),
    ) {
        let d_mn = measures::wasserstein1(&mu, &nu);
        let d_nm = measures::wasserstein1(&nu, &mu);
        prop_assert!((d_mn - d_nm).abs() < 1e-15);
        prop_assert!(measures::wasserstein1(&mu, &mu) < 1e-15);
        let d_mr = measures::wasserstein1(&mu, &rho);
        let d_rn = measures::wasserstein1(&rho, &nu);
        prop_assert!(d_mn <= d_mr + d_rn + 1e-12);
    }

    #[test]
    fn w1_between_diracs_is_the_distance(x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let mu = EmpiricalMeasure::dirac(x).unwrap();
        let nu = EmpiricalMeasure::dirac(y).unwrap();
        prop_assert!((measures::wasserstein1(&mu, &nu) - (x - y).abs()).abs() < 1e-15);
    }

    // |int phi dmu - int phi dnu| <= Lip(phi) * W1(mu, nu) for piecewise
    // linear test functions
    #[test]
    fn lipschitz_duality_bound(
        mu in arb_measure(10),
        nu in arb_measure(10),
        knots in prop::collection::vec(-2.0f64..2.0, 3..8),
    ) {
        // piecewise-linear phi through equally spaced nodes on [-1, 1]
        let n = knots.len();
        let phi = |x: f64| -> f64 {
            let t = (x + 1.0) / 2.0 * (n - 1) as f64;
            let i = (t.floor() as usize).min(n - 2);
            let frac = t - i as f64;
            knots[i] * (1.0 - frac) + knots[i + 1] * frac
        };
        let seg = 2.0 / (n - 1) as f64;
        let lip = knots
            .windows(2)
            .map(|k| (k[1] - k[0]).abs() / seg)
            .fold(0.0f64, f64::max);
        let gap = (measures::integrate(phi, &mu) - measures::integrate(phi, &nu)).abs();
        let bound = lip * measures::wasserstein1(&mu, &nu);
        prop_assert!(gap <= bound + 1e-12, "gap {gap} vs bound {bound}");
    }

    #[test]
    fn histogram_preserves_mass(mu in arb_measure(20), bins in 1usize..128) {
        let h = measures::histogram(&mu, bins);
        let total: f64 = h.masses.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(h.masses.iter().all(|&m| m >= 0.0));
        prop_assert_eq!(h.bin_edges.len(), bins + 1);
    }

    #[test]
    fn measure_json_round_trips(mu in arb_measure(16)) {
        let text = report::measure_to_json(&mu);
        let back = report::measure_from_json(&text).unwrap();
        prop_assert_eq!(back.atoms(), mu.atoms());
    }

    // every point of I* \ {0} lands in exactly the piece that contains it
    #[test]
    fn partition_classification_tiles(t in -1.0f64..1.0) {
        let cfg = BCConfig::default();
        let x = t * cfg.delta;
        prop_assume!(x != 0.0 && x.abs() < cfg.delta);
        let idx = bc::classify(x, &cfg).expect("inside I*");
        prop_assert!(idx.mu.abs() >= cfg.mu_min());
        prop_assert!(idx.nu >= 1 && idx.nu <= (idx.mu * idx.mu) as u64);
        let (lo, hi) = bc::piece_bounds(idx.mu, idx.nu);
        prop_assert!(lo <= x && x <= hi, "x = {} not in piece [{}, {}]", x, lo, hi);
    }

    #[test]
    fn orbits_stay_in_the_invariant_interval(
        a in 0.05f64..2.0,
        x0 in -1.0f64..1.0,
        n in 1usize..2000,
    ) {
        let trace = dynamics::iterate_orbit(MapParam::new(a).unwrap(), x0, n).unwrap();
        for &x in &trace.points {
            prop_assert!(x.abs() <= 1.0 + dynamics::DOMAIN_SLACK);
        }
    }

    #[test]
    fn derivative_cocycle_composes(
        a in 0.5f64..2.0,
        x0 in -0.99f64..0.99,
        m in 1usize..12,
        n in 1usize..12,
    ) {
        let ap = MapParam::new(a).unwrap();
        let whole = dynamics::derivative_along_orbit(ap, x0, m + n).unwrap().value;
        let first = dynamics::derivative_along_orbit(ap, x0, m).unwrap().value;
        let mid = dynamics::iterate_orbit(ap, x0, m).unwrap().points[m];
        let second = dynamics::derivative_along_orbit(ap, mid, n).unwrap().value;
        let prod = first * second;
        if whole != 0.0 {
            prop_assert!(((whole - prod) / whole).abs() < 1e-10);
        } else {
            prop_assert_eq!(prod, 0.0);
        }
    }
}
