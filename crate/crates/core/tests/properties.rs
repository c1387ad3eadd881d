use std::f64::consts::PI;

use napier::angle::{Angle, AngleList};
use napier::cone_manifold::{classify, stratum_angle};
use napier::hermitian::HermitianMatrix;
use napier::linalg::{Signature, ZERO_TOL};
use napier::mixed_area::{kernel_basis, minkowski_defect, GramMatrix, NormalFan, SupportVector};
use napier::sample;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn heights(len: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-2.0..2.0f64, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_is_dihedral_invariant(seed in any::<u64>(), n in 0usize..6, shift in 0usize..9, flip in any::<bool>()) {
        let a = sample::rational_angle_list(&mut rng(seed), n, 12);
        let mut b = a.rotated(shift % a.len());
        if flip {
            b = b.reversed();
        }
        prop_assert_eq!(a.canonicalize(), b.canonicalize());
    }

    #[test]
    fn real_and_complex_signatures(seed in any::<u64>(), n in 0usize..10) {
        let a = sample::angle_list(&mut rng(seed), n);
        prop_assert_eq!(GramMatrix::new(&a).signature(ZERO_TOL).unwrap(), Signature::new(1, 2, n));
        prop_assert_eq!(HermitianMatrix::new(&a).signature(ZERO_TOL).unwrap(), Signature::new(1, 2, n));
    }

    #[test]
    fn mixed_area_is_symmetric_and_bilinear(seed in any::<u64>(), n in 0usize..8, h in heights(11), k in heights(11), t in -3.0..3.0f64) {
        let a = sample::angle_list(&mut rng(seed), n);
        let g = GramMatrix::new(&a);
        let len = a.len();
        let p = SupportVector(h[..len].to_vec());
        let q = SupportVector(k[..len].to_vec());
        let scale = g.matrix().amax() * 16.0 * (1.0 + t.abs());
        prop_assert!((g.form(&p, &q) - g.form(&q, &p)).abs() <= 1e-12 * scale);
        let lhs = g.form(&p.scaled(t).plus(&q), &q);
        let rhs = t * g.form(&p, &q) + g.form(&q, &q);
        prop_assert!((lhs - rhs).abs() <= 1e-11 * scale);
        for e in kernel_basis(&a) {
            prop_assert!(g.form(&e, &p).abs() <= 1e-11 * scale);
        }
    }

    #[test]
    fn minkowski_inequality(seed in any::<u64>(), n in 0usize..8) {
        let mut r = rng(seed);
        let a = sample::angle_list(&mut r, n);
        let p = sample::convex_heights(&mut r, &a);
        let q = sample::convex_heights(&mut r, &a);
        let g = GramMatrix::new(&a);
        let scale = (g.form(&p, &p) * g.form(&q, &q)).abs();
        prop_assert!(minkowski_defect(&a, &p, &q).unwrap() >= -1e-10 * scale);
        let fan = NormalFan::new(&a);
        let moved = p.scaled(1.7).plus(&SupportVector::of_point(&fan, sample::point(&mut r)));
        let scale = (g.form(&p, &p) * g.form(&moved, &moved)).abs();
        prop_assert!(minkowski_defect(&a, &p, &moved).unwrap().abs() <= 1e-12 * scale);
    }

    #[test]
    fn verdict_ignores_the_order(seed in any::<u64>(), n in 2usize..5) {
        let mut r = rng(seed);
        let a = sample::rational_angle_list(&mut r, n, 12);
        let mut order: Vec<usize> = (0..a.len()).collect();
        order.shuffle(&mut r);
        let b = a.permuted(&order);
        let (ca, cb) = (classify(&a).unwrap(), classify(&b).unwrap());
        prop_assert_eq!(ca.verdict, cb.verdict);
        prop_assert_eq!(ca.compact, cb.compact);
        prop_assert_eq!(ca.double_cover.components, cb.double_cover.components);
        prop_assert_eq!(ca.strata.len(), cb.strata.len());
    }

    #[test]
    fn stratum_angle_is_symmetric(x in 0.01..0.98f64, y in 0.01..0.98f64, z in 0.01..0.98f64) {
        prop_assume!(x + y + z < 0.99);
        let t = [x, y, z].map(|v| Angle::radians(v * PI));
        let base = stratum_angle(t[0], t[1], t[2]).unwrap();
        prop_assert!(base > 0.0 && base < 3.0 * PI);
        for p in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let other = stratum_angle(t[p[0]], t[p[1]], t[p[2]]).unwrap();
            prop_assert!((other - base).abs() <= 1e-12);
        }
    }

    #[test]
    fn display_round_trips(seed in any::<u64>(), n in 0usize..7) {
        let a = sample::rational_angle_list(&mut rng(seed), n, 24);
        let back: AngleList = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}
