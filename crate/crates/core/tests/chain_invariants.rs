//! Invariants of the girth-greedy chain construction.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcl_core::chain::{
    build_chain, max_chain_vertices_exhaustive, max_vertex_bound, verify_abc_broken_line,
};
use lcl_core::kgon::min_kgon_doubled_area;
use lcl_core::num::rat;
use lcl_core::Frame;

fn random_frame(rng: &mut impl Rng, max_coord: i64) -> Frame {
    loop {
        let c: Vec<i64> = (0..6).map(|_| rng.gen_range(-max_coord..=max_coord)).collect();
        if let Ok(f) = Frame::from_ints((c[0], c[1]), (c[2], c[3]), (c[4], c[5])) {
            return f;
        }
    }
}

#[test]
fn built_chains_verify_and_respect_both_bounds() {
    let f = Frame::unit();
    for n in [1_000u64, 10_000] {
        let line = build_chain(&f, n, 0.01).unwrap();
        assert_eq!(verify_abc_broken_line(&line), Ok(()));
        let target = (0.01 * ((n * n) as f64).cbrt()).floor() as usize;
        assert!(
            line.intermediate_count() >= target,
            "n = {n}: {} < {target}",
            line.intermediate_count()
        );
        let bound = max_vertex_bound(f.doubled_area(), n);
        assert!((line.intermediate_count() as f64) <= bound);
    }
}

#[test]
fn built_chains_verify_on_random_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    let mut built = 0;
    while built < 8 {
        let f = random_frame(&mut rng, 4);
        let n = [500u64, 2_000, 5_000][rng.gen_range(0..3)];
        let c = [0.01, 0.05, 0.1][rng.gen_range(0..3)];
        match build_chain(&f, n, c) {
            Ok(line) => {
                built += 1;
                assert_eq!(verify_abc_broken_line(&line), Ok(()));
                let bound = max_vertex_bound(f.doubled_area(), n);
                assert!((line.intermediate_count() as f64) <= bound);
                // intermediate vertices really live on the lattice
                for v in &line.vertices()[1..line.vertices().len() - 1] {
                    assert!(v.in_lattice(n));
                }
            }
            Err(lcl_core::Error::InvalidInput(_)) => continue, // n too small for c
            Err(e) => panic!("unexpected failure: {e}"),
        }
    }
}

#[test]
fn exhaustive_maximum_stays_under_the_ceiling() {
    let f = Frame::unit();
    for n in 1..=5u64 {
        let best = max_chain_vertices_exhaustive(&f, n);
        let bound = max_vertex_bound(f.doubled_area(), n);
        assert!(
            (best as f64) <= bound,
            "n = {n}: exhaustive max {best} exceeds {bound}"
        );
    }
}

#[test]
fn minimal_kgon_areas_meet_the_cubic_bound() {
    for k in 3..=5usize {
        let (d, poly) = min_kgon_doubled_area(k).unwrap();
        assert_eq!(poly.len(), k);
        // doubled area versus (k/5)³
        let lhs = rat(1, 1) * lcl_core::num::Rat::from_integer(d.clone());
        let rhs = rat(k as i64, 5).pow(3);
        assert!(lhs >= rhs, "k = {k}: {d} < (k/5)³");
    }
    // recorded minima
    assert_eq!(min_kgon_doubled_area(3).unwrap().0, BigInt::from(1));
    assert_eq!(min_kgon_doubled_area(4).unwrap().0, BigInt::from(2));
    assert_eq!(min_kgon_doubled_area(5).unwrap().0, BigInt::from(5));
}

#[test]
fn minimal_hexagon() {
    let (d, _) = min_kgon_doubled_area(6).unwrap();
    assert_eq!(d, BigInt::from(6));
}
