//! Multi-stage convex curves carrying many lattice points.
//!
//! Stage `i` gets a tangent triangle `A_i B_i A_{i+1}` with doubled area at
//! least `100·c_i³`, and inside it a broken line on `L_{q_i}` with at least
//! `c_i·q_i^{2/3}` intermediate vertices. The triangles are cut out of the
//! parabola `y = x²`: tangent points and tangent intersections are rational
//! there, tangent slopes increase strictly (so the per-stage direction
//! sectors are disjoint and ordered), and the total turning stays below a
//! half turn. The concatenated chains form one strictly convex curve.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::chain::{build_chain, BrokenLine};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::geometry::{segment_lattice_count, RatPoint};
use crate::num::{rat, rat_from_f64, to_f64, Rat};

/// Edge-direction budget for the per-stage girth-greedy construction. With
/// stage areas `>= 100·c³` this yields `(1/4)·(S q²)^{1/3} + 1 >
/// 1.19·c·q^{2/3}` intermediate vertices, comfortably above the certificate.
const STAGE_BUILD_C: f64 = 0.25;

/// One certified stage of a synthesized curve.
#[derive(Debug, Clone)]
pub struct Stage {
    pub frame: Frame,
    pub chain: BrokenLine,
    pub q: u64,
    pub c: f64,
    /// Intermediate vertices of the chain; all lie on `L_q`.
    pub certified_count: u64,
}

/// A strictly convex piecewise-linear curve assembled from certified stages.
#[derive(Debug, Clone)]
pub struct Curve {
    pub stages: Vec<Stage>,
    /// Stage chains concatenated, shared junction vertices written once.
    pub global_vertices: Vec<RatPoint>,
}

/// Which lattice densities a stage may use.
#[derive(Debug, Clone)]
pub enum Admissible {
    All,
    List(Vec<u64>),
}

impl Admissible {
    fn iter_above(&self, lower: u64) -> Box<dyn Iterator<Item = u64> + '_> {
        match self {
            Admissible::All => Box::new((lower + 1)..),
            Admissible::List(v) => {
                let mut sorted = v.clone();
                sorted.sort_unstable();
                sorted.dedup();
                Box::new(sorted.into_iter().filter(move |q| *q > lower))
            }
        }
    }
}

/// Tangent triangles along the parabola `y = x²`, one per series term,
/// with doubled areas `>= 100·c_i³` (exact rational comparison).
pub fn tangent_decomposition(c_prefix: &[f64]) -> Result<Vec<Frame>> {
    if c_prefix.is_empty() {
        return Err(Error::InvalidInput("empty series prefix".into()));
    }
    let mut widths = Vec::with_capacity(c_prefix.len());
    for (i, &c) in c_prefix.iter().enumerate() {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::InvalidInput(format!(
                "series term {i} must be positive, got {c}"
            )));
        }
        let c_rat = rat_from_f64(c).expect("finite series term");
        let mut h = rat_from_f64(6.0 * c).expect("finite width");
        // need h³ >= 200 c³ so the triangle holds doubled area 100 c³
        let need = rat(200, 1) * &c_rat * &c_rat * &c_rat;
        let bump = rat(1025, 1024);
        let mut guard = 0;
        while &h * &h * &h < need {
            h *= &bump;
            guard += 1;
            assert!(guard < 50, "width adjustment failed to converge");
        }
        widths.push(h);
    }

    // tangent points (x, x²); tangents at a and b meet at ((a+b)/2, ab)
    let mut frames = Vec::with_capacity(c_prefix.len());
    let mut x = Rat::zero();
    for (i, h) in widths.iter().enumerate() {
        let a = x.clone();
        let b = &a + h;
        let pa = RatPoint::new(a.clone(), &a * &a);
        let pb = RatPoint::new(b.clone(), &b * &b);
        let apex = RatPoint::new((&a + &b) / rat(2, 1), &a * &b);
        let frame = Frame::new(pa, pb, apex)?;
        debug_assert!(!frame.swapped());
        let c_rat = rat_from_f64(c_prefix[i]).unwrap();
        debug_assert!(*frame.doubled_area() >= rat(100, 1) * &c_rat * &c_rat * &c_rat);
        frames.push(frame);
        x = b;
    }
    Ok(frames)
}

/// Builds a curve whose stage `i` carries at least `c_i·q_i^{2/3}` points
/// of `L_{q_i}` among its chain vertices, with `q_1 < q_2 < …` drawn from
/// the admissible set. Scans each stage for the least admissible `q` whose
/// construction certifies.
pub fn synthesize(series: &[f64], admissible: &Admissible, stages: usize) -> Result<Curve> {
    if stages == 0 {
        return Err(Error::InvalidInput("need at least one stage".into()));
    }
    if series.len() < stages {
        return Err(Error::InvalidInput(format!(
            "series prefix too short: {} terms for {} stages",
            series.len(),
            stages
        )));
    }
    let frames = tangent_decomposition(&series[..stages])?;
    let mut out_stages: Vec<Stage> = Vec::with_capacity(stages);
    let mut q_prev = 0u64;
    const MAX_BUILD_ATTEMPTS: u32 = 500;
    const MAX_SCANNED: u64 = 100_000_000;

    for (i, frame) in frames.into_iter().enumerate() {
        let c = series[i];
        let c_rat = rat_from_f64(c).unwrap();
        let c_cubed = &c_rat * &c_rat * &c_rat;
        let s_f = to_f64(frame.doubled_area());
        let mut attempts = 0u32;
        let mut scanned = 0u64;
        let mut found = None;
        let first_q = q_prev + 1;

        for q in admissible.iter_above(q_prev) {
            scanned += 1;
            if scanned > MAX_SCANNED {
                break;
            }
            // quick arithmetic screen before attempting a construction
            let m_est = (STAGE_BUILD_C * (s_f * (q as f64) * (q as f64)).cbrt()).floor();
            if m_est < 1.0 {
                continue;
            }
            let k_est = BigInt::from(m_est as u64 + 1);
            let qq = Rat::from_integer(BigInt::from(q) * BigInt::from(q));
            if Rat::from_integer(&k_est * &k_est * &k_est) < &c_cubed * &qq {
                continue;
            }
            attempts += 1;
            if attempts > MAX_BUILD_ATTEMPTS {
                break;
            }
            let chain = match build_chain(&frame, q, STAGE_BUILD_C) {
                Ok(chain) => chain,
                Err(_) => continue,
            };
            let k = chain.intermediate_count() as u64;
            let k_big = BigInt::from(k);
            if Rat::from_integer(&k_big * &k_big * &k_big) < &c_cubed * &qq {
                continue;
            }
            found = Some(Stage { frame: frame.clone(), chain, q, c, certified_count: k });
            break;
        }
        match found {
            Some(stage) => {
                q_prev = stage.q;
                out_stages.push(stage);
            }
            None => {
                return Err(Error::SearchExhausted(format!(
                    "stage {i}: no admissible q in [{first_q}, …] certified after \
                     {attempts} constructions over {scanned} candidates"
                )));
            }
        }
    }

    let mut global_vertices: Vec<RatPoint> = Vec::new();
    for stage in &out_stages {
        let verts = stage.chain.vertices();
        let start = if global_vertices.is_empty() { 0 } else { 1 };
        debug_assert!(
            global_vertices.is_empty() || global_vertices.last() == Some(&verts[0]),
            "stages must share junction vertices exactly"
        );
        global_vertices.extend_from_slice(&verts[start..]);
    }
    let curve = Curve { stages: out_stages, global_vertices };
    verify_global_convexity(&curve)?;
    Ok(curve)
}

fn verify_global_convexity(curve: &Curve) -> Result<()> {
    let v = &curve.global_vertices;
    for i in 0..v.len().saturating_sub(2) {
        let e1 = &v[i + 1] - &v[i];
        let e2 = &v[i + 2] - &v[i + 1];
        if !e1.cross(&e2).is_positive() {
            return Err(Error::Construction(format!(
                "global convexity fails at vertex {}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Exact count of `L_n` points on a piecewise-linear path: per-segment gcd
/// counts with shared interior vertices deduplicated.
pub fn count_on_polyline(vertices: &[RatPoint], n: u64) -> BigInt {
    if vertices.len() < 2 {
        return BigInt::zero();
    }
    let mut total = BigInt::zero();
    for w in vertices.windows(2) {
        total += segment_lattice_count(&w[0], &w[1], n);
    }
    for v in &vertices[1..vertices.len() - 1] {
        if v.in_lattice(n) {
            total -= 1;
        }
    }
    total
}

/// `k(γ, n)`: the number of `L_n` points on the curve.
pub fn count_on_curve(curve: &Curve, n: u64) -> BigInt {
    count_on_polyline(&curve.global_vertices, n)
}

impl Curve {
    /// Checks every stage certificate by recounting: stage vertices on
    /// `L_{q_i}` must reach `c_i·q_i^{2/3}` (exact cubed comparison).
    pub fn check_certificates(&self) -> Result<()> {
        for (i, stage) in self.stages.iter().enumerate() {
            let count = BigInt::from(stage.certified_count);
            let c_rat = rat_from_f64(stage.c)
                .ok_or_else(|| Error::InvalidInput("bad stage coefficient".into()))?;
            let qq = Rat::from_integer(BigInt::from(stage.q) * BigInt::from(stage.q));
            let lhs = Rat::from_integer(&count * &count * &count);
            if lhs < &c_rat * &c_rat * &c_rat * qq {
                return Err(Error::Construction(format!(
                    "stage {i} certificate fails: {}³ < c³q²",
                    stage.certified_count
                )));
            }
            if stage.chain.intermediate_count() as u64 != stage.certified_count {
                return Err(Error::Construction(format!(
                    "stage {i} count mismatch"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tangent_frames_hold_the_area_bound() {
        let frames = tangent_decomposition(&[0.5, 0.25]).unwrap();
        assert_eq!(frames.len(), 2);
        assert!(*frames[0].doubled_area() >= rat(25, 2)); // 100·(1/2)³
        assert!(*frames[1].doubled_area() >= rat(25, 16)); // 100·(1/4)³
        // consecutive triangles share a vertex exactly
        assert_eq!(frames[0].b(), frames[1].a());
    }

    #[test]
    fn tangent_sectors_are_ordered_and_bounded() {
        let frames = tangent_decomposition(&[0.5, 0.25, 0.125]).unwrap();
        // tangent directions: AC of each frame, then the final CB
        let mut dirs = Vec::new();
        for f in &frames {
            dirs.push(f.ac().clone());
        }
        dirs.push(frames.last().unwrap().cb().clone());
        for w in dirs.windows(2) {
            assert!(w[0].cross(&w[1]).is_positive(), "sectors out of order");
        }
        // all directions stay in the right half-plane: total turning < π
        for d in &dirs {
            assert!(d.x.is_positive());
        }
    }

    #[test]
    fn rejects_degenerate_series() {
        assert!(tangent_decomposition(&[0.5, 0.0]).is_err());
        assert!(tangent_decomposition(&[]).is_err());
    }

    #[test]
    fn synthesizes_three_stages() {
        let series = [0.5, 0.25, 0.125];
        let curve = synthesize(&series, &Admissible::All, 3).unwrap();
        assert_eq!(curve.stages.len(), 3);
        curve.check_certificates().unwrap();
        let mut last_q = 0;
        for stage in &curve.stages {
            assert!(stage.q > last_q);
            last_q = stage.q;
            assert_eq!(stage.chain.verify(), Ok(()));
        }
        // the curve carries at least the certified points of each stage
        for stage in &curve.stages {
            let count = count_on_curve(&curve, stage.q);
            assert!(count >= BigInt::from(stage.certified_count));
        }
    }

    #[test]
    fn synthesis_respects_admissible_lists() {
        let series = [0.5, 0.25];
        let list: Vec<u64> = (1..=4000).filter(|q| q % 7 == 3).collect();
        let curve = synthesize(&series, &Admissible::List(list), 2).unwrap();
        for stage in &curve.stages {
            assert_eq!(stage.q % 7, 3);
        }
    }

    #[test]
    fn sparse_admissible_list_exhausts() {
        let series = [0.5];
        let err = synthesize(&series, &Admissible::List(vec![1]), 1);
        assert!(matches!(err, Err(Error::SearchExhausted(_))));
    }

    #[test]
    fn polyline_counts() {
        let verts = vec![RatPoint::from_ints(0, 0), RatPoint::from_ints(1, 0)];
        assert_eq!(count_on_polyline(&verts, 7), BigInt::from(8));
        // an interior lattice vertex is not double-counted
        let bent = vec![
            RatPoint::from_ints(0, 0),
            RatPoint::from_ints(1, 0),
            RatPoint::from_ints(1, 1),
        ];
        assert_eq!(count_on_polyline(&bent, 1), BigInt::from(3));
    }

    #[test]
    fn counting_is_unimodular_invariant() {
        let curve = synthesize(&[0.5, 0.25], &Admissible::All, 2).unwrap();
        let u = [[1i64, 1], [0, 1]];
        let mapped: Vec<RatPoint> = curve
            .global_vertices
            .iter()
            .map(|p| crate::frame::map_point(u, p))
            .collect();
        for n in [curve.stages[0].q, curve.stages[1].q, 13] {
            assert_eq!(
                count_on_polyline(&curve.global_vertices, n),
                count_on_polyline(&mapped, n)
            );
        }
    }
}
