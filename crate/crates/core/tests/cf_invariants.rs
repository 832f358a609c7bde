//! Invariants of continued fractions and the noses stretch.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcl_core::cf::{cf_expand, find_suitable, noses_stretch, Ray};
use lcl_core::geometry::LatticeVec;
use lcl_core::num::rat;

#[test]
fn convergent_determinants_on_random_rationals() {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    for _ in 0..300 {
        let q = rng.gen_range(3..=100_000i64);
        let p = rng.gen_range(1..q);
        let ray = Ray::exact(rat(p, q)).unwrap();
        let cf = cf_expand(&ray, 100).unwrap();
        for w in cf.convergents.windows(2) {
            let det = &w[0].0 * &w[1].1 - &w[1].0 * &w[0].1;
            assert_eq!(det.abs(), BigInt::one(), "p/q = {p}/{q}");
        }
        for w in cf.convergents.windows(2) {
            assert!(w[0].1 <= w[1].1, "denominators must not decrease");
        }
        for a in &cf.quotients {
            assert!(a >= &BigInt::one());
        }
    }
}

#[test]
fn stretch_output_is_always_basic_and_crossing() {
    let mut rng = ChaCha8Rng::seed_from_u64(502);
    let mut tested = 0;
    while tested < 500 {
        // random basic pair: consecutive convergents of a random rational
        let q = rng.gen_range(10..=50_000i64);
        let p = rng.gen_range(1..q);
        let ray = Ray::exact(rat(p, q)).unwrap();
        let cf = cf_expand(&ray, 60).unwrap();
        if cf.convergents.len() < 2 {
            continue;
        }
        let k = rng.gen_range(0..cf.convergents.len() - 1);
        let a = LatticeVec::new(cf.convergents[k].1.clone(), cf.convergents[k].0.clone());
        let b = LatticeVec::new(
            cf.convergents[k + 1].1.clone(),
            cf.convergents[k + 1].0.clone(),
        );
        match noses_stretch(&a, &b, &ray) {
            Ok(tri) => {
                tested += 1;
                assert_eq!(tri.a().cross(tri.b()).abs(), BigInt::one());
                assert!(tri.ray_crosses_interior(&ray));
            }
            // the rational ray may pass exactly through a fan node, or a
            // convergent may sit on the ray; both are legitimate refusals
            Err(_) => continue,
        }
    }
}

#[test]
fn suitability_search_succeeds_for_most_random_slopes() {
    // statistical witness at a smaller scale than the acceptance suite
    let mut rng = ChaCha8Rng::seed_from_u64(503);
    let denom: i128 = 1_000_000_000_000_037; // large odd modulus
    let mut hits = 0;
    let total = 30;
    for _ in 0..total {
        let num = rng.gen_range(1..denom);
        let alpha = lcl_core::num::Rat::new(BigInt::from(num), BigInt::from(denom));
        let ray = Ray::exact(alpha).unwrap();
        if find_suitable(&ray, 0.2, 10_000_000).unwrap().is_some() {
            hits += 1;
        }
    }
    assert!(hits * 100 >= 90 * total, "only {hits}/{total} succeeded");
}

#[test]
fn suitable_triangles_satisfy_their_own_metrics() {
    let ray = Ray::exact(rat(41, 137)).unwrap();
    if let Some(s) = find_suitable(&ray, 0.35, 1_000_000).unwrap() {
        assert!(1.0 - s.side_ratio < 0.35);
        assert!(s.apex_angle < 0.35);
        assert_eq!(s.triangle.a().cross(s.triangle.b()).abs(), BigInt::one());
    }
}

#[test]
fn golden_like_slopes_may_fail_at_small_bounds() {
    // bounded partial quotients are the measure-zero hard case: with a tiny
    // search bound nothing suitable exists for a harsh eps
    let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let ray = Ray::from_f64(phi).unwrap();
    let res = find_suitable(&ray, 0.05, 100).unwrap();
    assert!(res.is_none());
}
