use num_complex::Complex64;
use proptest::prelude::*;

use pqmaps_core::approx::fs_distance_float;
use pqmaps_core::bookkeeping::{bundle_rank, dim_bound, dimension_report, stable_range, ProblemParams};
use pqmaps_core::discriminant::{objective, random_tuple};
use pqmaps_core::genpos::{certify_simplex_span, Configuration};
use pqmaps_core::seeds::trial_rng;
use pqmaps_core::{Field, GaussianRational, MapTuple};

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn params() -> impl Strategy<Value = ProblemParams> {
    (1u32..=2, 0u32..=2, 0u32..=3, 0u32..=2).prop_filter_map("q <= p", |(m, extra, p, q)| {
        ProblemParams::new(m, m + extra, p, q).ok()
    })
}

fn tuple(params: ProblemParams, seed: u64) -> MapTuple {
    random_tuple(&mut trial_rng(seed, 0), &params, 4)
}

fn point(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), len)
        .prop_map(|v| v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect())
        .prop_filter("nonzero", |v: &Vec<Complex64>| v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3)
}

fn unit(z: &[Complex64]) -> Vec<Complex64> {
    let n = z.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
    z.iter().map(|w| w / n).collect()
}

fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol * (1.0 + x.norm()))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-50i64..50, 1i64..30, -50i64..50, 1i64..30).prop_map(|(a, b, c, d)| {
        GaussianRational::parse(&format!("{a}/{b}"), &format!("{c}/{d}")).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bundle_rank_and_dim_bound_differ_by_2mr(pp in params(), r in 1i64..6) {
        prop_assume!(r <= pp.validity_bound());
        let diff = dim_bound(&pp, r).unwrap() - bundle_rank(&pp, r).unwrap();
        prop_assert_eq!(diff, 2 * pp.m as i64 * r);
    }

    #[test]
    fn stable_range_grows_by_one_step_per_two_degrees(m in 1i64..4, extra in 0i64..3, d in 0i64..10) {
        let n = m + extra;
        prop_assert_eq!(stable_range(m, n, d + 2) - stable_range(m, n, d), 2 * n - 2 * m + 1);
    }

    #[test]
    fn dimension_counts(pp in params()) {
        let rep = dimension_report(&pp).unwrap();
        let (m, p, q) = (pp.m as u64, pp.p as u64, pp.q as u64);
        prop_assert_eq!(rep.dim_v, binom(m + p, m) * binom(m + q, m));
        prop_assert_eq!(rep.dim_boundary, binom(m - 1 + p, m - 1) * binom(m - 1 + q, m - 1));
        prop_assert_eq!(rep.dim_wi, rep.dim_v - rep.dim_boundary);
        prop_assert_eq!(rep.n_pq, (pp.n as u64 + 1) * rep.dim_wi);
    }

    #[test]
    fn small_configurations_span_simplices(m in 1usize..=2, p in 1u32..=3, q in 0u32..=1, r in 1usize..=4, seed: u64) {
        prop_assume!(q <= p && r <= p as usize + 1);
        let config = Configuration::random(&mut trial_rng(seed, 1), m, r, 6);
        let span = certify_simplex_span(&config, p, q).unwrap();
        prop_assert!(span.guaranteed);
        prop_assert!(span.is_simplex);
        prop_assert_eq!(span.rank, r);
        prop_assert_eq!(span.affine_rank + 1, span.rank);
    }

    #[test]
    fn fs_distance_is_a_metric_on_rays(a in point(3), b in point(3), c in point(3), theta in 0.0f64..6.3) {
        let d = |x: &[Complex64], y: &[Complex64]| fs_distance_float(x, y).unwrap();
        let (ab, ba) = (d(&a, &b), d(&b, &a));
        prop_assert!((ab - ba).abs() < 1e-12);
        prop_assert!((0.0..=std::f64::consts::FRAC_PI_2 + 1e-12).contains(&ab));
        let phase = Complex64::from_polar(1.7, theta);
        let rotated: Vec<Complex64> = a.iter().map(|z| z * phase).collect();
        prop_assert!(d(&a, &rotated) < 1e-7);
        prop_assert!((d(&rotated, &b) - ab).abs() < 1e-9);
        prop_assert!(ab <= d(&a, &c) + d(&c, &b) + 1e-9);
    }

    #[test]
    fn objective_is_scale_invariant(pp in params(), seed: u64, z in point(4), re in -3.0f64..3.0, im in -3.0f64..3.0) {
        prop_assume!(re * re + im * im > 0.01);
        let t = tuple(pp, seed);
        let z = &z[..pp.m as usize + 1];
        prop_assume!(z.iter().map(|w| w.norm_sqr()).sum::<f64>() > 1e-3);
        let scaled: Vec<Complex64> = z.iter().map(|w| w * Complex64::new(re, im)).collect();
        let (a, b) = (objective(&t, z), objective(&t, &scaled));
        prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()), "{} vs {}", a, b);
    }

    #[test]
    fn stabilization_keeps_values_on_the_sphere(pp in params(), seed: u64, z in point(4)) {
        let t = tuple(pp, seed);
        let z = &z[..pp.m as usize + 1];
        prop_assume!(z.iter().map(|w| w.norm_sqr()).sum::<f64>() > 1e-3);
        let u = unit(z);
        let s = t.stabilize();
        prop_assert_eq!((s.p(), s.q()), (t.p() + 1, t.q() + 1));
        prop_assert!(close(&t.evaluate_float(&u).unwrap(), &s.evaluate_float(&u).unwrap(), 1e-10));
    }

    #[test]
    fn polynomial_ring_laws(pp in params(), s1: u64, s2: u64, s3: u64, z in point(4)) {
        let (a, b, c) = (tuple(pp, s1), tuple(pp, s2), tuple(pp, s3));
        let (a, b, c) = (&a.components()[0], &b.components()[0], &c.components()[0]);
        prop_assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
        let lhs = a.add(b).unwrap().mul(c).unwrap();
        let rhs = a.mul(c).unwrap().add(&b.mul(c).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(a.sub(a).unwrap().terms().count(), 0);
        let two = GaussianRational::from_ints(2, 0);
        prop_assert_eq!(a.add(a).unwrap(), a.scale(&two));

        let z = &z[..pp.m as usize + 1];
        let prod = a.mul(b).unwrap().evaluate_float(z).unwrap();
        let expected = a.evaluate_float(z).unwrap() * b.evaluate_float(z).unwrap();
        prop_assert!((prod - expected).norm() <= 1e-8 * (1.0 + expected.norm()));
    }

    #[test]
    fn tuples_round_trip_through_json(pp in params(), seed: u64) {
        let t = tuple(pp, seed);
        let text = serde_json::to_string(&t).unwrap();
        let back: MapTuple = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn modular_reduction_is_a_ring_map(a in gaussian(), b in gaussian()) {
        let (ra, rb) = (a.reduce_mod().unwrap(), b.reduce_mod().unwrap());
        prop_assert_eq!((&a * &b).reduce_mod().unwrap(), Field::mul(&ra, &rb));
        prop_assert_eq!((&a + &b).reduce_mod().unwrap(), Field::add(&ra, &rb));
        prop_assert_eq!((&a - &b).reduce_mod().unwrap(), Field::sub(&ra, &rb));
        prop_assert_eq!(a.conj().conj(), a);
    }
}
