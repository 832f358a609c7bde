//! Invariants of the generalized affine length and the split identities.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcl_core::affine::{
    affine_length_rel, affine_length_sup, affine_length_sup_seeded, bisector_circumscribed,
    gauss_line_residual, radius_interpolation_holds, split_quantities, DEFAULT_SUP_SEED,
};
use lcl_core::chain::{build_chain, BrokenLine};
use lcl_core::frame::map_point;
use lcl_core::geometry::{RatPoint, RatVec};
use lcl_core::num::{cbrt, rat, Rat};
use lcl_core::Frame;

fn random_frame(rng: &mut impl Rng, max_coord: i64) -> Frame {
    loop {
        let c: Vec<i64> = (0..6).map(|_| rng.gen_range(-max_coord..=max_coord)).collect();
        if let Ok(f) = Frame::from_ints((c[0], c[1]), (c[2], c[3]), (c[4], c[5])) {
            return f;
        }
    }
}

fn random_unit_fraction(rng: &mut impl Rng) -> Rat {
    let q = rng.gen_range(2..=40i64);
    let p = rng.gen_range(1..q);
    rat(p, q)
}

/// P on AC, R on BC, Q on PR, all strictly interior.
fn random_split(rng: &mut impl Rng, f: &Frame) -> (RatPoint, RatPoint, RatPoint) {
    let lambda = random_unit_fraction(rng);
    let mu = random_unit_fraction(rng);
    let theta = random_unit_fraction(rng);
    let p = f.a() + &f.ac().scale(&lambda);
    let r = f.b() + &(f.c() - f.b()).scale(&mu);
    let q = &p + &(&r - &p).scale(&theta);
    (p, r, q)
}

#[test]
fn split_error_is_nonnegative_on_random_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(301);
    for _ in 0..5_000 {
        let f = random_frame(&mut rng, 4);
        let (p, r, q) = random_split(&mut rng, &f);
        let sq = split_quantities(&f, &p, &r, &q).unwrap();
        assert!(sq.err >= -1e-12, "Err = {}", sq.err);
        assert!(sq.ratio_ap_pq.is_positive());
        assert!(sq.normalized_radius.is_positive());
        let (lo, hi) = &sq.girth_distortion_bounds;
        assert!(lo <= hi);
    }
}

#[test]
fn split_quantities_converge_at_the_balanced_point() {
    // perturbation family Q_t -> midpoint: all three quantities approach
    // their equality values monotonically in t = 2^{-j}
    let f = Frame::unit();
    let p = RatPoint::new(rat(1, 2), rat(0, 1));
    let r = RatPoint::new(rat(1, 2), rat(1, 2));
    let mut last_err = f64::INFINITY;
    let mut last_ratio_gap = Rat::from_integer(1_000.into());
    let mut last_radius_gap = Rat::from_integer(1_000.into());
    for j in 1..=20 {
        let t = rat(1, 2) + rat(1, 2i64.pow(j + 1));
        let q = &p + &(&r - &p).scale(&t);
        let sq = split_quantities(&f, &p, &r, &q).unwrap();
        let ratio_gap = (sq.ratio_ap_pq - rat(1, 1)).abs();
        let radius_gap = (sq.normalized_radius - rat(1, 1)).abs();
        assert!(sq.err <= last_err + 1e-15);
        assert!(ratio_gap <= last_ratio_gap);
        assert!(radius_gap <= last_radius_gap);
        last_err = sq.err;
        last_ratio_gap = ratio_gap;
        last_radius_gap = radius_gap;
    }
    assert!(last_err < 1e-3);
}

fn random_fan_quad(
    rng: &mut impl Rng,
    f: &Frame,
) -> (RatPoint, RatPoint, RatPoint, RatPoint, RatPoint) {
    // three angle vectors with strictly decreasing angle
    loop {
        let mut vs: Vec<RatVec> = (0..3)
            .map(|_| {
                let t1 = rat(rng.gen_range(0..=8), rng.gen_range(1..=3));
                let t2 = rat(rng.gen_range(0..=8), rng.gen_range(1..=3));
                &f.ac().scale(&t1) + &f.cb().scale(&t2)
            })
            .collect();
        if vs.iter().any(|v| v.is_zero()) {
            continue;
        }
        // order clockwise: u before w when w × u > 0
        vs.sort_by(|u, w| u.cross(w).cmp(&num_bigint::BigInt::ZERO.into()));
        vs.reverse();
        if vs[0].cross(&vs[1]).is_zero() || vs[1].cross(&vs[2]).is_zero() {
            continue;
        }
        let p = RatPoint::from_ints(rng.gen_range(-4..=4i64), rng.gen_range(-4..=4i64));
        let s = &p + &vs[0];
        let t = &s + &vs[1];
        let r = &t + &vs[2];
        let theta = random_unit_fraction(rng);
        let q = &s + &(&t - &s).scale(&theta);
        return (p, s, t, r, q);
    }
}

#[test]
fn gauss_line_identity_is_exactly_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(302);
    for _ in 0..5_000 {
        let f = random_frame(&mut rng, 3);
        let (p, s, t, r, q) = random_fan_quad(&mut rng, &f);
        let res = gauss_line_residual(&f, &p, &s, &t, &r, &q).unwrap();
        assert!(res.is_zero(), "residual = {res}");
        assert!(radius_interpolation_holds(&f, &p, &s, &t, &r, &q).unwrap());
    }
}

#[test]
fn radius_interpolation_collapses_for_symmetric_trapezoids() {
    // u = v forces r(PQR) = u = v
    let f = Frame::from_ints((0, 0), (2, 0), (1, -2)).unwrap();
    let p = RatPoint::from_ints(0, 0);
    let s = RatPoint::from_ints(1, 2);
    let t = RatPoint::from_ints(3, 2);
    let r = RatPoint::from_ints(4, 0);
    let q = RatPoint::from_ints(2, 2);
    let u = f.segment_girth(&p, &q) / f.segment_girth(&p, &s) * f.abc_radius(&p, &q, &s).unwrap();
    let v = f.segment_girth(&q, &r) / f.segment_girth(&r, &t) * f.abc_radius(&q, &t, &r).unwrap();
    assert_eq!(u, v);
    assert_eq!(f.abc_radius(&p, &q, &r).unwrap(), u);
}

#[test]
fn sup_never_exceeds_the_ceiling_and_dominates_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut tested = 0;
    while tested < 5 {
        let f = random_frame(&mut rng, 3);
        let n = 2_000;
        let line = match build_chain(&f, n, 0.05) {
            Ok(line) => line,
            Err(_) => continue,
        };
        tested += 1;
        let est = affine_length_sup_seeded(&line, 1e-10, DEFAULT_SUP_SEED);
        let ceiling = cbrt(f.doubled_area());
        assert!(est.value <= ceiling + 1e-6, "{} > {}", est.value, ceiling);
        if let Ok(g1) = bisector_circumscribed(&line) {
            let rel = affine_length_rel(&line, &g1).unwrap();
            assert!(est.value >= rel.total - 1e-9);
        }
    }
}

#[test]
fn sup_does_not_increase_under_refinement() {
    // dropping interior vertices of a chain can only increase the sup
    let f = Frame::unit();
    let fine = build_chain(&f, 4_000, 0.05).unwrap();
    assert!(fine.intermediate_count() >= 4);
    let tol = 1e-9;
    let sup_fine = affine_length_sup(&fine, tol);
    let mut coarse_vertices: Vec<RatPoint> = Vec::new();
    for (i, v) in fine.vertices().iter().enumerate() {
        // keep endpoints and every other interior vertex
        if i == 0 || i + 1 == fine.vertices().len() || i % 2 == 0 {
            coarse_vertices.push(v.clone());
        }
    }
    let coarse = BrokenLine::from_vertices(f.clone(), coarse_vertices, None);
    assert_eq!(coarse.verify(), Ok(()));
    let sup_coarse = affine_length_sup(&coarse, tol);
    assert!(
        sup_fine <= sup_coarse + 2.0 * 1e-6,
        "refined {sup_fine} > coarse {sup_coarse}"
    );
}

#[test]
fn sup_is_unimodular_invariant() {
    let f = Frame::unit();
    let line = build_chain(&f, 2_000, 0.03).unwrap();
    let u = [[1i64, 1], [0, 1]];
    let g = f.transform_unimodular(u).unwrap();
    let mapped = BrokenLine::from_vertices(
        g.clone(),
        line.vertices().iter().map(|p| map_point(u, p)).collect(),
        line.lattice_density(),
    );
    assert_eq!(mapped.verify(), Ok(()));
    let a = affine_length_sup(&line, 1e-10);
    let b = affine_length_sup(&mapped, 1e-10);
    assert!((a - b).abs() < 1e-6, "sup changed: {a} vs {b}");
}
