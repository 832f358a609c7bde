//! Exact invariants of the girth calculus and the enumeration order.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcl_core::enumeration::{
    count_girth_below, enumerate_with_girths, girth_sum, sort_by_girth_then_angle,
    vectors_up_to_girth, VectorClass,
};
use lcl_core::frame::{map_lattice_vec, map_point};
use lcl_core::geometry::{LatticeVec, RatPoint, RatVec};
use lcl_core::num::{rat, to_f64, Rat};
use lcl_core::Frame;

fn random_frame(rng: &mut impl Rng, max_coord: i64) -> Frame {
    loop {
        let c: Vec<i64> = (0..6).map(|_| rng.gen_range(-max_coord..=max_coord)).collect();
        if let Ok(f) = Frame::from_ints((c[0], c[1]), (c[2], c[3]), (c[4], c[5])) {
            return f;
        }
    }
}

fn random_vec(rng: &mut impl Rng, bound: i64) -> RatVec {
    RatVec::new(
        rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=7)),
        rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=7)),
    )
}

#[test]
fn girth_is_linear_exactly() {
    // 100k random (frame, u, v): [u + v] = [u] + [v] with no tolerance
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..100_000 {
        let f = random_frame(&mut rng, 5);
        let u = random_vec(&mut rng, 40);
        let v = random_vec(&mut rng, 40);
        assert_eq!(f.girth(&(&u + &v)), f.girth(&u) + f.girth(&v));
    }
}

#[test]
fn girth_is_positive_on_the_angle() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..20_000 {
        let f = random_frame(&mut rng, 4);
        // random nonnegative cone combination, not both zero
        let t1 = rat(rng.gen_range(0..=30), rng.gen_range(1..=5));
        let t2 = rat(rng.gen_range(0..=30), rng.gen_range(1..=5));
        if t1.is_zero() && t2.is_zero() {
            continue;
        }
        let v = &f.ac().scale(&t1) + &f.cb().scale(&t2);
        assert!(f.in_angle(&v));
        assert!(f.girth(&v).is_positive());
    }
}

#[test]
fn girth_normalization_holds_for_every_frame() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for _ in 0..5_000 {
        let f = random_frame(&mut rng, 50);
        assert_eq!(f.girth(f.ac()), rat(1, 1));
        assert_eq!(f.girth(f.cb()), rat(1, 1));
        assert_eq!(f.girth(&(f.b() - f.a())), rat(2, 1));
    }
}

#[test]
fn girth_is_unimodular_equivariant() {
    // det +1 preserves the signed girth; det −1 reverses orientation, the
    // constructor swaps A and B back, and the functional flips sign — the
    // segment girth is what survives
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mats = [
        [[1i64, 1], [0, 1]],
        [[1, 0], [1, 1]],
        [[0, -1], [1, 0]],
        [[2, 1], [1, 1]],
        [[1, -2], [0, -1]],
    ];
    for _ in 0..10_000 {
        let f = random_frame(&mut rng, 5);
        let u = mats[rng.gen_range(0..mats.len())];
        let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
        let g = f.transform_unimodular(u).unwrap();
        let v = LatticeVec::new(rng.gen_range(-30..=30i64), rng.gen_range(-30..=30i64));
        let tv = map_lattice_vec(u, &v);
        if det == 1 {
            assert_eq!(f.girth_lattice(&v), g.girth_lattice(&tv));
        } else {
            assert_eq!(f.girth_lattice(&v), -g.girth_lattice(&tv));
            assert_eq!(f.girth_lattice(&v).abs(), g.girth_lattice(&tv).abs());
        }
    }
}

#[test]
fn frame_triangle_radius_is_inverse_area() {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for _ in 0..3_000 {
        let f = random_frame(&mut rng, 30);
        let r = f.abc_radius(f.a(), f.b(), f.c()).unwrap();
        assert_eq!(r, f.doubled_area().recip());
    }
}

#[test]
fn enumeration_matches_box_scan_at_depth_200() {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for _ in 0..6 {
        let f = random_frame(&mut rng, 3);
        let k = 200;
        let fast = enumerate_with_girths(&f, k, VectorClass::All);
        let rk = fast.last().unwrap().1.clone();
        let coord_span: i64 = 12; // |ac|, |cb| coords are at most 6 here
        let m = coord_span * (to_f64(&rk).ceil() as i64 + 1);
        let mut brute = Vec::new();
        for x in -m..=m {
            for y in -m..=m {
                let v = LatticeVec::new(x, y);
                if v.is_zero() || !f.in_angle(&v.to_rat()) {
                    continue;
                }
                let g = f.girth_lattice(&v);
                if g <= rk {
                    brute.push((v, g));
                }
            }
        }
        sort_by_girth_then_angle(&mut brute);
        brute.truncate(k);
        assert_eq!(fast, brute);
    }
}

#[test]
fn count_below_is_consistent_with_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    for _ in 0..20 {
        let f = random_frame(&mut rng, 3);
        let r = rat(rng.gen_range(2..=12), rng.gen_range(1..=3));
        let count = count_girth_below(&f, &r);
        let listed = vectors_up_to_girth(&f, &r, VectorClass::All)
            .into_iter()
            .filter(|(_, g)| *g < r)
            .count();
        assert_eq!(count, BigInt::from(listed));
    }
}

#[test]
fn counting_approaches_the_area_law() {
    // count/(S r²/2) -> 1; within 5% at r = 200 on the unit frame
    let f = Frame::unit();
    let r = rat(200, 1);
    let count = count_girth_below(&f, &r);
    let expected = to_f64(f.doubled_area()) * 200.0 * 200.0 / 2.0;
    let ratio = to_f64(&Rat::from_integer(count)) / expected;
    assert!((ratio - 1.0).abs() < 0.05, "ratio = {ratio}");
}

#[test]
fn girth_sum_asymptotics_on_random_small_frames() {
    // sum / ((2√2/3)·S^{-1/2}·k^{3/2}) ∈ [0.95, 1.05] at k = 10⁴;
    // frames kept at small doubled area so the boundary correction at this
    // k stays inside the window
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut tested = 0;
    while tested < 5 {
        let f = random_frame(&mut rng, 2);
        if *f.doubled_area() > rat(4, 1) {
            continue;
        }
        tested += 1;
        let k = 10_000;
        let sum = girth_sum(&f, k);
        let c = 2.0 * 2.0_f64.sqrt() / 3.0;
        let bound = c / to_f64(f.doubled_area()).sqrt() * (k as f64).powf(1.5);
        let ratio = to_f64(&sum) / bound;
        assert!(
            (0.95..=1.05).contains(&ratio),
            "frame {:?}: ratio = {ratio}",
            f.a()
        );
    }
}

#[test]
fn enumeration_is_invariant_under_unimodular_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let u = [[1i64, 1], [0, 1]];
    for _ in 0..5 {
        let f = random_frame(&mut rng, 3);
        let g = f.transform_unimodular(u).unwrap();
        let a = enumerate_with_girths(&f, 80, VectorClass::All);
        let b = enumerate_with_girths(&g, 80, VectorClass::All);
        for ((va, ga), (vb, gb)) in a.iter().zip(b.iter()) {
            assert_eq!(ga, gb);
            assert_eq!(&map_lattice_vec(u, va), vb);
        }
    }
}

#[test]
fn segment_girth_is_translation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    for _ in 0..2_000 {
        let f = random_frame(&mut rng, 5);
        let p = RatPoint::from_ints(rng.gen_range(-9..=9i64), rng.gen_range(-9..=9i64));
        let q = RatPoint::from_ints(rng.gen_range(-9..=9i64), rng.gen_range(-9..=9i64));
        let shift = RatVec::new(rat(rng.gen_range(-5..=5), 3), rat(rng.gen_range(-5..=5), 2));
        let (ps, qs) = (&p + &shift, &q + &shift);
        assert_eq!(f.segment_girth(&p, &q), f.segment_girth(&ps, &qs));
        // map_point round-trip sanity for the identity
        assert_eq!(map_point([[1, 0], [0, 1]], &p), p);
    }
}
