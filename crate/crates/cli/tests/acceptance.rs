//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Every tolerance is pinned in code. Criterion 4b is implemented exactly as
//! stated and is expected to fail for small k: the sum of the k least girths
//! approaches its asymptote from below, and the 10% allowance only absorbs
//! the boundary correction once k is large enough (around k = 135 on the
//! unit frame). See the failure message for the measured numbers.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lcl_core::affine::{
    affine_deficit_probe, affine_length_sup_seeded, gauss_line_residual,
    radius_interpolation_holds, split_quantities, DEFAULT_SUP_SEED,
};
use lcl_core::cf::{cf_expand, find_suitable, noses_stretch, Ray};
use lcl_core::chain::{
    build_chain, max_chain_vertices_exhaustive, max_vertex_bound, verify_abc_broken_line,
};
use lcl_core::curve::{count_on_curve, synthesize, Admissible};
use lcl_core::enumeration::enumerate_with_girths;
use lcl_core::enumeration::VectorClass;
use lcl_core::equidist::{count_pairs_bruteforce, count_pairs_fast, StarDomain};
use lcl_core::geometry::{LatticeVec, RatPoint, RatVec};
use lcl_core::kgon::min_kgon_doubled_area;
use lcl_core::num::{cbrt, rat, to_f64, Rat};
use lcl_core::Frame;

const ZETA2_INV: f64 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);

fn pass(name: &str, detail: String) {
    println!("criterion {name}: PASS — {detail}");
}

fn fail(name: &str, detail: String) -> String {
    let line = format!("criterion {name}: FAIL — {detail}");
    println!("{line}");
    line
}

#[test]
fn criterion_01_coprime_pair_density() {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let tri = StarDomain::model_triangle(&rat(1, 1)).unwrap();
    let start = Instant::now();
    let count = pool.install(|| count_pairs_fast(&tri, &tri, 1, 800));
    let elapsed = start.elapsed().as_secs_f64();
    let density = count as f64 / (800.0 * 800.0);
    let ratio = density / ZETA2_INV;
    let ok = (0.98..=1.02).contains(&ratio) && elapsed < 30.0;
    let detail =
        format!("count = {count}, count/n² = {density:.6}, ratio to 6/π² = {ratio:.5}, {elapsed:.2}s single-threaded");
    if ok {
        pass("1 (coprime-pair density)", detail);
    } else {
        panic!("{}", fail("1 (coprime-pair density)", detail));
    }
}

#[test]
fn criterion_02_sigma_scaling() {
    let tri = StarDomain::model_triangle(&rat(1, 1)).unwrap();
    let base = count_pairs_fast(&tri, &tri, 1, 800) as f64;
    let mut details = Vec::new();
    let mut ok = true;
    for m in [2i64, 3, 4] {
        let c = count_pairs_fast(&tri, &tri, m, 800) as f64;
        let sigma_over_m = match m {
            2 => 3.0 / 2.0,
            3 => 4.0 / 3.0,
            4 => 7.0 / 4.0,
            _ => unreachable!(),
        };
        let rel = (c / base) / sigma_over_m;
        details.push(format!("m={m}: {:.5}", rel));
        ok &= (rel - 1.0).abs() <= 0.05;
    }
    let detail = format!("count(m)/count(1) vs σ(m)/m: {}", details.join(", "));
    if ok {
        pass("2 (σ(m)/|m| scaling)", detail);
    } else {
        panic!("{}", fail("2 (σ(m)/|m| scaling)", detail));
    }
}

fn random_domain(rng: &mut impl Rng) -> StarDomain {
    loop {
        let sectors = rng.gen_range(1..=3usize);
        let mut points = Vec::new();
        let mut num = 0i64;
        for _ in 0..=sectors {
            num += rng.gen_range(1..=3i64);
            let scale = rat(rng.gen_range(2..=8i64), 4);
            points.push(RatPoint::new(
                rat(4, 1) * &scale / rat(4 + num, 1),
                rat(num, 1) * &scale / rat(4 + num, 1),
            ));
        }
        if let Ok(d) = StarDomain::fan(&points) {
            return d;
        }
    }
}

#[test]
fn criterion_03_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    let mut mismatches = 0;
    for _ in 0..200 {
        let om1 = random_domain(&mut rng);
        let om2 = random_domain(&mut rng);
        let m = [1i64, -1, 2, -2, 3, 4][rng.gen_range(0..6)];
        let n = rng.gen_range(3..=30u64);
        let fast = count_pairs_fast(&om1, &om2, m, n);
        let brute = count_pairs_bruteforce(&om1, &om2, m, n);
        if fast != brute {
            mismatches += 1;
        }
    }
    let detail = format!("200 randomized instances, {mismatches} mismatches");
    if mismatches == 0 {
        pass("3 (oracle equivalence)", detail);
    } else {
        panic!("{}", fail("3 (oracle equivalence)", detail));
    }
}

#[test]
fn criterion_04a_girth_sum_ratio_at_10k() {
    let f = Frame::unit();
    let k = 10_000usize;
    let sum: Rat = enumerate_with_girths(&f, k, VectorClass::All)
        .into_iter()
        .fold(Rat::zero(), |acc, (_, g)| acc + g);
    let c = 2.0 * 2.0_f64.sqrt() / 3.0;
    let ratio = to_f64(&sum) / (c * (k as f64).powf(1.5));
    let detail = format!("girth_sum(10⁴)/((2√2/3)k^{{3/2}}) = {ratio:.5}");
    if (0.95..=1.05).contains(&ratio) {
        pass("4a (girth-sum law at k = 10⁴)", detail);
    } else {
        panic!("{}", fail("4a (girth-sum law at k = 10⁴)", detail));
    }
}

#[test]
fn criterion_04b_girth_sum_lower_bound_for_all_k() {
    // faithful check of: girth_sum(k) >= 0.9·(2√2/3)·k^{3/2} for ALL k <= 10⁴.
    // The sum approaches its asymptote from below; the bound holds only
    // once the boundary correction drops under 10%.
    let f = Frame::unit();
    let k = 10_000usize;
    let with_girths = enumerate_with_girths(&f, k, VectorClass::All);
    let c = 2.0 * 2.0_f64.sqrt() / 3.0;
    let mut sum = Rat::zero();
    let mut first_violation: Option<(usize, f64, f64)> = None;
    let mut last_violation: Option<usize> = None;
    let mut min_ratio = f64::INFINITY;
    for (i, (_, g)) in with_girths.into_iter().enumerate() {
        sum += g;
        let kk = i + 1;
        let bound = 0.9 * c * (kk as f64).powf(1.5);
        let value = to_f64(&sum);
        min_ratio = min_ratio.min(value / (c * (kk as f64).powf(1.5)));
        if value < bound {
            if first_violation.is_none() {
                first_violation = Some((kk, value, bound));
            }
            last_violation = Some(kk);
        }
    }
    match first_violation {
        None => pass(
            "4b (girth-sum exact lower bound for all k ≤ 10⁴)",
            format!("min ratio {min_ratio:.4}"),
        ),
        Some((kk, value, bound)) => {
            let detail = format!(
                "sum({kk}) = {value} < 0.9·(2√2/3)·{kk}^(3/2) = {bound:.4}; \
                 violations persist through k = {}; min ratio over all k = {min_ratio:.4}; \
                 the asymptotic law (criterion 4a) does hold at k = 10⁴",
                last_violation.unwrap()
            );
            panic!("{}", fail("4b (girth-sum exact lower bound for all k ≤ 10⁴)", detail));
        }
    }
}

#[test]
fn criterion_05_jarnik_certificates() {
    let f = Frame::unit();
    let start = Instant::now();
    let small = build_chain(&f, 10_000, 0.01).unwrap();
    let big = build_chain(&f, 1_000_000, 0.01).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let ok = verify_abc_broken_line(&small).is_ok()
        && verify_abc_broken_line(&big).is_ok()
        && small.intermediate_count() >= 4
        && big.intermediate_count() >= 100
        && elapsed < 60.0;
    let detail = format!(
        "n=10⁴: {} vertices (≥ 4), n=10⁶: {} vertices (≥ 100), verified, {elapsed:.2}s",
        small.intermediate_count(),
        big.intermediate_count()
    );
    if ok {
        pass("5 (girth-greedy chain certificates)", detail);
    } else {
        panic!("{}", fail("5 (girth-greedy chain certificates)", detail));
    }
}

#[test]
fn criterion_06_vertex_count_ceiling() {
    let f = Frame::unit();
    let mut ok = true;
    let mut details = Vec::new();
    for n in 1..=6u64 {
        let best = max_chain_vertices_exhaustive(&f, n);
        let bound = max_vertex_bound(f.doubled_area(), n);
        details.push(format!("n={n}: {best} ≤ {bound:.2}"));
        ok &= (best as f64) <= bound;
    }
    for k in [3usize, 4, 5] {
        let (d, _) = min_kgon_doubled_area(k).unwrap();
        let lhs = Rat::from_integer(d.clone());
        let rhs = rat(k as i64, 5).pow(3);
        details.push(format!("k-gon {k}: doubled area {d}"));
        ok &= lhs >= rhs;
    }
    let detail = details.join("; ");
    if ok {
        pass("6 (vertex-count ceiling + minimal k-gon areas)", detail);
    } else {
        panic!("{}", fail("6 (vertex-count ceiling + minimal k-gon areas)", detail));
    }
}

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

#[test]
fn criterion_07_split_and_gauss_line_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1E3A);
    let mut min_err = f64::INFINITY;
    for _ in 0..100_000 {
        let f = random_frame(&mut rng, 4);
        let lambda = random_unit_fraction(&mut rng);
        let mu = random_unit_fraction(&mut rng);
        let theta = random_unit_fraction(&mut rng);
        let p = f.a() + &f.ac().scale(&lambda);
        let r = f.b() + &(f.c() - f.b()).scale(&mu);
        let q = &p + &(&r - &p).scale(&theta);
        let sq = split_quantities(&f, &p, &r, &q).unwrap();
        min_err = min_err.min(sq.err);
        if sq.err < -1e-12 {
            panic!(
                "{}",
                fail(
                    "7 (split/Gauss-line suites)",
                    format!("Err = {} below -1e-12", sq.err)
                )
            );
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x3A15);
    for i in 0..100_000 {
        let f = random_frame(&mut rng, 3);
        let (p, s, t, r, q) = loop {
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
            vs.sort_by(|u, w| u.cross(w).cmp(&Rat::zero()));
            if vs[0].cross(&vs[1]).is_zero() || vs[1].cross(&vs[2]).is_zero() {
                continue;
            }
            let p = RatPoint::from_ints(rng.gen_range(-4..=4i64), rng.gen_range(-4..=4i64));
            let s = &p + &vs[0];
            let t = &s + &vs[1];
            let r = &t + &vs[2];
            let theta = random_unit_fraction(&mut rng);
            let q = &s + &(&t - &s).scale(&theta);
            break (p, s, t, r, q);
        };
        let res = gauss_line_residual(&f, &p, &s, &t, &r, &q).unwrap();
        if !res.is_zero() {
            panic!(
                "{}",
                fail(
                    "7 (split/Gauss-line suites)",
                    format!("nonzero residual {res} at case {i}")
                )
            );
        }
        if !radius_interpolation_holds(&f, &p, &s, &t, &r, &q).unwrap() {
            panic!(
                "{}",
                fail(
                    "7 (split/Gauss-line suites)",
                    format!("radius interpolation failed at case {i}")
                )
            );
        }
    }
    pass(
        "7 (split/Gauss-line suites)",
        format!("10⁵ split configs (min Err = {min_err:.2e} ≥ -1e-12), 10⁵ exact Gauss-line zeros, radius interpolation always true"),
    );
}

#[test]
fn criterion_08_affine_length_ceiling() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xAFF1);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut chains = 0;
    // suite: greedy chains over several frames and densities
    while chains < 10 {
        let f = random_frame(&mut rng, 3);
        let n = [1_000u64, 4_000, 10_000][rng.gen_range(0..3)];
        let c = [0.01, 0.03, 0.08][rng.gen_range(0..3)];
        let line = match build_chain(&f, n, c) {
            Ok(line) => line,
            Err(_) => continue,
        };
        chains += 1;
        let est = affine_length_sup_seeded(&line, 1e-9, DEFAULT_SUP_SEED);
        let ceiling = cbrt(f.doubled_area());
        worst_excess = worst_excess.max(est.value - ceiling);
        if est.value > ceiling + 1e-6 {
            panic!(
                "{}",
                fail(
                    "8 (affine length ceiling)",
                    format!("sup {} exceeds S^(1/3) {}", est.value, ceiling)
                )
            );
        }
    }
    // midpoint equality case: the chain through the midpoint of PR with P,
    // R the side midpoints attains S^{1/3} exactly
    let f = Frame::unit();
    let q = RatPoint::new(rat(1, 2), rat(1, 4));
    let gamma = lcl_core::chain::BrokenLine::from_vertices(
        f.clone(),
        vec![f.a().clone(), q, f.b().clone()],
        None,
    );
    let est = affine_length_sup_seeded(&gamma, 1e-12, DEFAULT_SUP_SEED);
    let gap = (est.value - cbrt(f.doubled_area())).abs();
    let ok = gap < 1e-9;
    let detail = format!(
        "10 chains, worst sup − S^(1/3) = {worst_excess:.2e} (≤ 1e-6); midpoint case gap {gap:.2e} (< 1e-9), multistart spread {:.2e}",
        est.spread
    );
    if ok {
        pass("8 (affine length ceiling)", detail);
    } else {
        panic!("{}", fail("8 (affine length ceiling)", detail));
    }
}

#[test]
fn criterion_09_curve_certificates() {
    let series = [0.5, 0.25, 0.125];
    let curve = synthesize(&series, &Admissible::All, 3).unwrap();
    let mut ok = curve.stages.len() == 3;
    let mut details = Vec::new();
    for (i, stage) in curve.stages.iter().enumerate() {
        let count = count_on_curve(&curve, stage.q);
        // exact: count³ >= c³·q² with c = 2^{-(i+1)}
        let c = rat(1, 2i64.pow(i as u32 + 1));
        let lhs = Rat::from_integer(&count * &count * &count);
        let rhs = &c * &c * &c
            * Rat::from_integer(BigInt::from(stage.q) * BigInt::from(stage.q));
        ok &= lhs >= rhs;
        details.push(format!(
            "stage {}: q={}, k(γ,q)={} ≥ {:.3}",
            i + 1,
            stage.q,
            count,
            to_f64(&c) * (stage.q as f64).powf(2.0 / 3.0)
        ));
    }
    let detail = details.join("; ");
    if ok {
        pass("9 (curve synthesis certificates)", detail);
    } else {
        panic!("{}", fail("9 (curve synthesis certificates)", detail));
    }
}

#[test]
fn criterion_10_continued_fraction_suite() {
    // determinants of consecutive convergents for 10³ random rationals
    let mut rng = ChaCha8Rng::seed_from_u64(0xCF10);
    for _ in 0..1_000 {
        let q = rng.gen_range(3..=1_000_000i64);
        let p = rng.gen_range(1..q);
        let ray = Ray::exact(rat(p, q)).unwrap();
        let cf = cf_expand(&ray, 200).unwrap();
        for w in cf.convergents.windows(2) {
            let det = &w[0].0 * &w[1].1 - &w[1].0 * &w[0].1;
            assert_eq!(det.abs(), BigInt::one(), "determinant broke at {p}/{q}");
        }
    }

    // noses stretch always yields a basic, ray-crossing triangle
    let mut stretched = 0;
    let mut rng2 = ChaCha8Rng::seed_from_u64(0xCF11);
    while stretched < 300 {
        let q = rng2.gen_range(10..=100_000i64);
        let p = rng2.gen_range(1..q);
        let ray = Ray::exact(rat(p, q)).unwrap();
        let cf = cf_expand(&ray, 60).unwrap();
        if cf.convergents.len() < 2 {
            continue;
        }
        let k = rng2.gen_range(0..cf.convergents.len() - 1);
        let a = LatticeVec::new(cf.convergents[k].1.clone(), cf.convergents[k].0.clone());
        let b = LatticeVec::new(cf.convergents[k + 1].1.clone(), cf.convergents[k + 1].0.clone());
        if let Ok(tri) = noses_stretch(&a, &b, &ray) {
            stretched += 1;
            assert_eq!(tri.a().cross(tri.b()).abs(), BigInt::one());
            assert!(tri.ray_crosses_interior(&ray));
        }
    }

    // suitability search: at least 95 of 100 uniformly random slopes
    let mut rng3 = ChaCha8Rng::seed_from_u64(0xCF12);
    let denom = BigInt::from(1u64 << 53);
    let mut hits = 0;
    for _ in 0..100 {
        let num = BigInt::from(rng3.gen_range(1u64..(1u64 << 53)));
        let alpha = Rat::new(num, denom.clone());
        let ray = Ray::exact(alpha).unwrap();
        if find_suitable(&ray, 0.2, 10_000_000).unwrap().is_some() {
            hits += 1;
        }
    }
    let detail = format!(
        "10³ convergent determinant checks, 300 stretches basic+crossing, find_suitable hits {hits}/100 (≥ 95)"
    );
    if hits >= 95 {
        pass("10 (continued-fraction suite)", detail);
    } else {
        panic!("{}", fail("10 (continued-fraction suite)", detail));
    }
}

#[test]
fn criterion_11_deficit_probe_and_decay_table() {
    let f = Frame::unit();
    let mut details = Vec::new();
    let mut ok = true;
    for n in [10_000u64, 100_000] {
        let probe = affine_deficit_probe(&f, n, 0.01, 1e-9).unwrap();
        ok &= probe.deficit > 0.0;
        details.push(format!("n={n}: k={}, deficit={:.4}", probe.k, probe.deficit));
    }

    // demonstration output, not an assertion: the CLI emits the decay table
    // for a synthesized curve at off-certificate densities
    let exe = env!("CARGO_BIN_EXE_lcl");
    let dir = std::env::temp_dir().join("lcl-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let curve_path = dir.join("curve.json");
    let synth = std::process::Command::new(exe)
        .args([
            "synth",
            "--series",
            "geometric:0.5",
            "--stages",
            "3",
            "--out",
            curve_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    ok &= synth.status.success();
    let table = std::process::Command::new(exe)
        .args(["count", "--curve", curve_path.to_str().unwrap(), "--n", "4096", "--table"])
        .output()
        .unwrap();
    ok &= table.status.success();
    let text = String::from_utf8_lossy(&table.stdout);
    println!("k(γ,n)/n^(2/3) decay table (demonstration output):");
    for line in text.lines() {
        println!("    {line}");
    }
    ok &= text.lines().count() >= 8 && text.starts_with("n,count,normalized");
    let detail = format!("{}; decay table emitted by the CLI", details.join("; "));
    if ok {
        pass("11 (deficit probe + decay table)", detail);
    } else {
        panic!("{}", fail("11 (deficit probe + decay table)", detail));
    }
}
