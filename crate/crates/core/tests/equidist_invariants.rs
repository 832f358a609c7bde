//! Invariants of the pair counters and the equidistribution predictions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcl_core::equidist::{
    count_pairs_bruteforce, count_pairs_fast, prediction, special_point_count, triangle_census,
    StarDomain,
};
use lcl_core::geometry::RatPoint;
use lcl_core::num::{rat, Rat};
use lcl_core::Frame;

/// A random star domain of one to three fan sectors in the first quadrant,
/// coordinates bounded by 2.
fn random_domain(rng: &mut impl Rng) -> StarDomain {
    loop {
        let sectors = rng.gen_range(1..=3usize);
        // strictly increasing slope directions, radial scales up to 2
        let mut points = Vec::new();
        let mut num = 0i64;
        for _ in 0..=sectors {
            num += rng.gen_range(1..=3i64);
            let den = 4i64;
            let scale = rat(rng.gen_range(2..=8i64), 4);
            // direction (den, num)/|.|, scaled
            points.push(RatPoint::new(
                rat(den, 1) * &scale / rat(den + num, 1),
                rat(num, 1) * &scale / rat(den + num, 1),
            ));
        }
        if let Ok(d) = StarDomain::fan(&points) {
            return d;
        }
    }
}

#[test]
fn fast_counter_equals_bruteforce_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    for case in 0..60 {
        let om1 = random_domain(&mut rng);
        let om2 = random_domain(&mut rng);
        let m = [1i64, -1, 2, 3, 4][rng.gen_range(0..5)];
        let n = rng.gen_range(5..=30u64);
        assert_eq!(
            count_pairs_fast(&om1, &om2, m, n),
            count_pairs_bruteforce(&om1, &om2, m, n),
            "case {case}: m={m}, n={n}"
        );
    }
}

#[test]
fn counts_are_gl2_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(402);
    let mats = [[[1i64, 1], [0, 1]], [[1, 0], [1, 1]], [[2, 1], [1, 1]]];
    for _ in 0..10 {
        let om1 = random_domain(&mut rng);
        let om2 = random_domain(&mut rng);
        let u = mats[rng.gen_range(0..mats.len())];
        let t1 = om1.transform_unimodular(u).unwrap();
        let t2 = om2.transform_unimodular(u).unwrap();
        let n = rng.gen_range(8..=20u64);
        for m in [1i64, 2] {
            assert_eq!(
                count_pairs_fast(&om1, &om2, m, n),
                count_pairs_fast(&t1, &t2, m, n)
            );
        }
        // predictions agree too: the profile integral is SL(2)-invariant
        let p = prediction(&om1, &om2, 1, 50);
        let q = prediction(&t1, &t2, 1, 50);
        assert!((p - q).abs() <= 1e-5 * p.abs().max(1.0), "{p} vs {q}");
    }
}

#[test]
fn swap_and_negate_preserves_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(403);
    for _ in 0..20 {
        let om1 = random_domain(&mut rng);
        let om2 = random_domain(&mut rng);
        let m = rng.gen_range(1..=4i64);
        let n = rng.gen_range(5..=25u64);
        assert_eq!(
            count_pairs_fast(&om1, &om2, m, n),
            count_pairs_fast(&om2, &om1, -m, n)
        );
    }
}

#[test]
fn empty_product_for_oversized_m() {
    // |m| beyond the diameter product leaves no pairs
    let om = StarDomain::model_triangle(&rat(1, 1)).unwrap();
    let n = 10u64;
    assert_eq!(count_pairs_fast(&om, &om, 250, n), 0);
    assert_eq!(count_pairs_bruteforce(&om, &om, 250, n), 0);
}

#[test]
fn scaling_one_domain_scales_prediction() {
    let om1 = StarDomain::model_triangle(&rat(1, 1)).unwrap();
    let om2 = om1.scale(&rat(3, 2));
    let p1 = prediction(&om1, &om1, 1, 100);
    let p2 = prediction(&om1, &om2, 1, 100);
    assert!((p2 - 1.5 * p1).abs() < 1e-6 * p2);
}

#[test]
fn special_point_ratio_converges() {
    // unit frame, unit square in girth space: count/prediction near 1
    let f = Frame::unit();
    let omega = StarDomain::fan(&[
        RatPoint::from_ints(1, 0),
        RatPoint::from_ints(1, 1),
        RatPoint::from_ints(0, 1),
    ]);
    // the unit square is not an origin fan over those points; use the
    // standard two-triangle fan over (1,0),(1,1),(0,1) whose union is the
    // square's lower and upper halves
    let omega = match omega {
        Ok(o) => o,
        Err(e) => panic!("fan construction failed: {e}"),
    };
    assert_eq!(omega.doubled_area(), rat(2, 1));
    let pc = special_point_count(&f, 1, 200, &omega).unwrap();
    let ratio = pc.count as f64 / pc.prediction;
    assert!((ratio - 1.0).abs() < 0.08, "ratio = {ratio}");
}

#[test]
fn special_point_sigma_ratio() {
    let f = Frame::unit();
    let omega = StarDomain::fan(&[
        RatPoint::from_ints(1, 0),
        RatPoint::from_ints(1, 1),
        RatPoint::from_ints(0, 1),
    ])
    .unwrap();
    let c1 = special_point_count(&f, 1, 150, &omega).unwrap().count as f64;
    let c2 = special_point_count(&f, 2, 150, &omega).unwrap().count as f64;
    let ratio = c2 / c1;
    assert!((ratio - 1.5).abs() < 0.15, "σ ratio = {ratio}");
}

#[test]
fn census_ratio_stays_bounded_as_n_doubles() {
    let f = Frame::unit();
    let mut ratios = Vec::new();
    for n in [1_000u64, 2_000, 4_000, 8_000] {
        let count = triangle_census(&f, n, 2, 2.0, 0.5, 2.0).unwrap();
        let norm = (n as f64).cbrt(); // (n·S²)^{1/3} with S = 1
        ratios.push(count as f64 / norm);
    }
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(max <= 3.0 * (min + 1.0), "ratios diverge: {ratios:?}");
}

/// The special-point domain must sit inside the first quadrant.
#[test]
fn special_points_reject_bad_domains() {
    let f = Frame::unit();
    let outside = StarDomain::fan(&[
        RatPoint::from_ints(1, 0),
        RatPoint::from_ints(1, 1),
        RatPoint::from_ints(-1, 2),
    ])
    .unwrap();
    assert!(special_point_count(&f, 1, 10, &outside).is_err());
    let tri = StarDomain::model_triangle(&Rat::from_integer(1.into())).unwrap();
    assert!(special_point_count(&f, 0, 10, &tri).is_err());
}
