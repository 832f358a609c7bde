//! Convex broken lines inside a frame triangle.
//!
//! A chain `A, C_1, …, C_k, B` is strictly convex when consecutive edge
//! vectors keep one cross-product sign; it lives on the lattice
//! `L_n = (Z/n)²` when every intermediate vertex does. [`build_chain`]
//! realizes the girth-greedy extremal construction: pick the least-girth
//! usable edge directions of the frame angle, order them by angle, and
//! anchor the resulting convex chain inside the triangle so that the closing
//! edges from `A` and to `B` keep it strictly convex.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::enumeration::{enumerate_with_girths, row_interval, VectorClass};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::geometry::{LatticeVec, RatPoint, RatVec};
use crate::num::{ceil_int, floor_int, to_f64, Rat};

/// A broken line `C_0 = A, C_1, …, C_k, C_{k+1} = B` in a frame, with an
/// optional lattice density `n` for the intermediate vertices.
#[derive(Debug, Clone)]
pub struct BrokenLine {
    frame: Frame,
    vertices: Vec<RatPoint>,
    n: Option<u64>,
}

/// First violation found when checking a broken line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainViolation {
    TooFewVertices,
    EndpointMismatch,
    RepeatedVertex { index: usize },
    NotStrictlyConvex { index: usize },
    OutsideTriangle { index: usize },
    OffLattice { index: usize },
}

impl std::fmt::Display for ChainViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChainViolation::TooFewVertices => write!(f, "fewer than two vertices"),
            ChainViolation::EndpointMismatch => write!(f, "endpoints are not A and B"),
            ChainViolation::RepeatedVertex { index } => {
                write!(f, "vertices {} and {} coincide", index, index + 1)
            }
            ChainViolation::NotStrictlyConvex { index } => {
                write!(f, "edges {} and {} do not turn strictly", index, index + 1)
            }
            ChainViolation::OutsideTriangle { index } => {
                write!(f, "vertex {index} is not strictly inside the triangle")
            }
            ChainViolation::OffLattice { index } => {
                write!(f, "vertex {index} is not on the lattice")
            }
        }
    }
}

impl BrokenLine {
    /// Wraps vertices without checking the invariants; call
    /// [`BrokenLine::verify`] to validate.
    pub fn from_vertices(frame: Frame, vertices: Vec<RatPoint>, n: Option<u64>) -> Self {
        BrokenLine { frame, vertices, n }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn vertices(&self) -> &[RatPoint] {
        &self.vertices
    }

    pub fn lattice_density(&self) -> Option<u64> {
        self.n
    }

    /// Number of intermediate vertices (`k`).
    pub fn intermediate_count(&self) -> usize {
        self.vertices.len().saturating_sub(2)
    }

    pub fn edges(&self) -> Vec<RatVec> {
        self.vertices.windows(2).map(|w| &w[1] - &w[0]).collect()
    }

    /// Checks endpoints, strict convexity (one fixed cross sign),
    /// containment and lattice membership; reports the first violation.
    pub fn verify(&self) -> std::result::Result<(), ChainViolation> {
        if self.vertices.len() < 2 {
            return Err(ChainViolation::TooFewVertices);
        }
        if self.vertices.first() != Some(self.frame.a())
            || self.vertices.last() != Some(self.frame.b())
        {
            return Err(ChainViolation::EndpointMismatch);
        }
        for (i, w) in self.vertices.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(ChainViolation::RepeatedVertex { index: i });
            }
        }
        let edges = self.edges();
        let mut sign = 0i8;
        for (i, w) in edges.windows(2).enumerate() {
            let cr = w[0].cross(&w[1]);
            let s = if cr.is_positive() {
                1
            } else if cr.is_negative() {
                -1
            } else {
                0
            };
            if s == 0 || (sign != 0 && s != sign) {
                return Err(ChainViolation::NotStrictlyConvex { index: i });
            }
            sign = s;
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if i == 0 || i + 1 == self.vertices.len() {
                continue;
            }
            if !self.frame.strictly_inside(v) {
                return Err(ChainViolation::OutsideTriangle { index: i });
            }
            if let Some(n) = self.n {
                if !v.in_lattice(n) {
                    return Err(ChainViolation::OffLattice { index: i });
                }
            }
        }
        Ok(())
    }
}

/// Checks all broken-line invariants, reporting the first violation.
pub fn verify_abc_broken_line(line: &BrokenLine) -> std::result::Result<(), ChainViolation> {
    line.verify()
}

/// Upper bound `max(3, 5·(S·n²)^{1/3})` on the number of intermediate
/// vertices of a broken line on `L_n` inside a triangle of doubled area `S`.
pub fn max_vertex_bound(s: &Rat, n: u64) -> f64 {
    let v = 5.0 * (to_f64(s) * (n as f64) * (n as f64)).cbrt();
    v.max(3.0)
}

/// Builds a broken line on `L_n` with at least `⌊c·(S·n²)^{1/3}⌋`
/// intermediate vertices, using the least-girth usable edge directions.
///
/// Edge directions must lie strictly inside the angle: a direction along a
/// triangle leg can never continue a strictly convex chain that starts at
/// `A` and ends at `B` with interior vertices, so boundary-parallel vectors
/// are skipped and one primitive vector represents each direction.
pub fn build_chain(f: &Frame, n: u64, c: f64) -> Result<BrokenLine> {
    if n == 0 || !(c > 0.0) {
        return Err(Error::InvalidInput("need n >= 1 and c > 0".into()));
    }
    let s = to_f64(f.doubled_area());
    let target = (c * (s * (n as f64) * (n as f64)).cbrt()).floor();
    if !(target >= 1.0) {
        return Err(Error::InvalidInput(format!(
            "n = {n} is too small: c(Sn²)^(1/3) = {:.3} < 1",
            c * (s * (n as f64) * (n as f64)).cbrt()
        )));
    }
    let m = target as usize;
    let mut selected = enumerate_with_girths(f, m, VectorClass::InteriorPrimitive);
    // ascending angle from the AC side makes the edge sequence strictly convex
    selected.sort_by(|(u, _), (v, _)| v.cross(u).cmp(&BigInt::zero()));
    let edges: Vec<LatticeVec> = selected.into_iter().map(|(v, _)| v).collect();
    let anchor = find_anchor(f, n, &edges)?;
    let n_rat = Rat::from_integer(BigInt::from(n));

    let mut vertices = Vec::with_capacity(edges.len() + 3);
    vertices.push(f.a().clone());
    let mut cur = anchor;
    vertices.push(cur.clone());
    for e in &edges {
        let step = RatVec::new(
            Rat::from_integer(e.x.clone()) / &n_rat,
            Rat::from_integer(e.y.clone()) / &n_rat,
        );
        cur = &cur + &step;
        vertices.push(cur.clone());
    }
    vertices.push(f.b().clone());
    let line = BrokenLine::from_vertices(f.clone(), vertices, Some(n));
    debug_assert_eq!(line.verify(), Ok(()));
    Ok(line)
}

/// A closed half-plane `a·x + b·y + c >= 0`.
struct HalfPlane {
    a: Rat,
    b: Rat,
    c: Rat,
}

impl HalfPlane {
    fn eval(&self, p: &RatPoint) -> Rat {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }
}

/// Sutherland–Hodgman clip of a convex polygon; vertex order is preserved.
fn clip_polygon(poly: &[RatPoint], hp: &HalfPlane) -> Vec<RatPoint> {
    let mut out = Vec::new();
    let k = poly.len();
    for i in 0..k {
        let cur = &poly[i];
        let next = &poly[(i + 1) % k];
        let fc = hp.eval(cur);
        let fnx = hp.eval(next);
        if !fc.is_negative() {
            out.push(cur.clone());
        }
        if (fc.is_negative() && fnx.is_positive()) || (fc.is_positive() && fnx.is_negative()) {
            let t = &fc / (&fc - &fnx);
            let d = next - cur;
            out.push(cur + &d.scale(&t));
        }
    }
    out
}

/// Finds an `L_n` anchor for the edge chain: the feasible positions form the
/// intersection of five half-planes (three containment offsets, two closing
/// convexity constraints), all linear in the anchor. Lattice points are
/// scanned outward from the region's centroid.
fn find_anchor(f: &Frame, n: u64, edges: &[LatticeVec]) -> Result<RatPoint> {
    if edges.is_empty() {
        return Err(Error::InvalidInput("empty edge set".into()));
    }
    let n_rat = Rat::from_integer(BigInt::from(n));
    // prefix sums w_0 = 0, …, w_m
    let mut prefix = vec![LatticeVec::new(0, 0)];
    for e in edges {
        let last = prefix.last().unwrap();
        prefix.push(last + e);
    }
    let z1 = edges.first().unwrap().to_rat();
    let zm = edges.last().unwrap().to_rat();
    let wm = prefix.last().unwrap().to_rat();

    let mut planes = Vec::new();
    // containment: for each triangle edge (base, vec), inward form
    // cross(e, P − base) + min_j cross(e, w_j)/n > 0
    let tri_edges = [
        (f.a().clone(), f.ac().clone()),
        (f.c().clone(), f.cb().clone()),
        (f.b().clone(), f.a() - f.b()),
    ];
    for (base, e) in &tri_edges {
        let min_off = prefix
            .iter()
            .map(|w| e.cross(&w.to_rat()))
            .min()
            .expect("nonempty prefix");
        planes.push(HalfPlane {
            a: -e.y.clone(),
            b: e.x.clone(),
            c: &e.y * &base.x - &e.x * &base.y + min_off / &n_rat,
        });
    }
    // start: cross(P − A, z1) > 0
    planes.push(HalfPlane {
        a: z1.y.clone(),
        b: -z1.x.clone(),
        c: &z1.x * &f.a().y - &z1.y * &f.a().x,
    });
    // end: cross(zm, K − P) > 0 with K = B − w_m/n
    let k_pt = f.b() - &wm.scale(&n_rat.recip());
    planes.push(HalfPlane {
        a: zm.y.clone(),
        b: -zm.x.clone(),
        c: &zm.x * &k_pt.y - &zm.y * &k_pt.x,
    });

    let mut poly = vec![f.a().clone(), f.c().clone(), f.b().clone()];
    for hp in &planes {
        poly = clip_polygon(&poly, hp);
        if poly.is_empty() {
            return Err(Error::Construction(
                "anchor region is empty; lower c or raise n".into(),
            ));
        }
    }

    // strict test for a candidate anchor q/n
    let accepts = |q: &LatticeVec| -> bool {
        let p0 = RatPoint::new(
            Rat::from_integer(q.x.clone()) / &n_rat,
            Rat::from_integer(q.y.clone()) / &n_rat,
        );
        planes.iter().all(|hp| hp.eval(&p0).is_positive())
    };

    // scan rows of the n-scaled region outward from its centroid
    let len = Rat::from_integer(BigInt::from(poly.len() as u64));
    let cx = poly.iter().fold(Rat::zero(), |a, p| a + &p.x) / &len;
    let cy = poly.iter().fold(Rat::zero(), |a, p| a + &p.y) / &len;
    let scaled: Vec<RatPoint> = poly
        .iter()
        .map(|p| RatPoint::new(&p.x * &n_rat, &p.y * &n_rat))
        .collect();
    let y_min = ceil_int(&scaled.iter().map(|p| p.y.clone()).min().unwrap());
    let y_max = floor_int(&scaled.iter().map(|p| p.y.clone()).max().unwrap());
    const MAX_ROWS: u64 = 200_000;

    let mut scanned = 0u64;
    for y in Outward::new(y_min, y_max, floor_int(&(&cy * &n_rat))) {
        if scanned >= MAX_ROWS {
            return Err(Error::Construction(format!(
                "no anchor within {MAX_ROWS} scanned rows"
            )));
        }
        scanned += 1;
        let yr = Rat::from_integer(y.clone());
        if let Some((lo, hi)) = row_interval(&scaled, &yr) {
            let x_mid = floor_int(&(&cx * &n_rat));
            for x in Outward::new(lo, hi, x_mid) {
                let q = LatticeVec::new(x, y.clone());
                if accepts(&q) {
                    return Ok(RatPoint::new(
                        Rat::from_integer(q.x) / &n_rat,
                        Rat::from_integer(q.y) / &n_rat,
                    ));
                }
            }
        }
    }
    Err(Error::Construction(
        "anchor region contains no lattice point".into(),
    ))
}

/// Yields the integers of `[lo, hi]` starting at `mid` (clamped into the
/// interval) and alternating outward: mid, mid+1, mid−1, mid+2, …
struct Outward {
    lo: BigInt,
    hi: BigInt,
    mid: BigInt,
    off: BigInt,
    done: bool,
}

impl Outward {
    fn new(lo: BigInt, hi: BigInt, mid: BigInt) -> Self {
        let done = lo > hi;
        let mid = mid.max(lo.clone()).min(hi.clone());
        Outward { lo, hi, mid, off: BigInt::zero(), done }
    }
}

impl Iterator for Outward {
    type Item = BigInt;
    fn next(&mut self) -> Option<BigInt> {
        loop {
            if self.done {
                return None;
            }
            let cand = &self.mid + &self.off;
            let up = &self.hi - &self.mid;
            let dn = &self.mid - &self.lo;
            if self.off.abs() > up.max(dn) {
                self.done = true;
                return None;
            }
            // advance: 0, 1, -1, 2, -2, ...
            self.off = if self.off.is_positive() { -&self.off } else { -&self.off + 1 };
            if cand >= self.lo && cand <= self.hi {
                return Some(cand);
            }
        }
    }
}

/// Maximum number of intermediate vertices over all broken lines on `L_n`
/// inside the frame triangle, by exhaustive search. Only sensible for tiny
/// `n` (the point count grows like `n²S/2`).
pub fn max_chain_vertices_exhaustive(f: &Frame, n: u64) -> usize {
    let n_rat = Rat::from_integer(BigInt::from(n));
    // all L_n points strictly inside the triangle
    let scale = |p: &RatPoint| RatPoint::new(&p.x * &n_rat, &p.y * &n_rat);
    let tri = [scale(f.a()), scale(f.c()), scale(f.b())];
    let mut points = Vec::new();
    let y_min = ceil_int(&tri.iter().map(|p| p.y.clone()).min().unwrap());
    let y_max = floor_int(&tri.iter().map(|p| p.y.clone()).max().unwrap());
    let mut y = y_min;
    while y <= y_max {
        let yr = Rat::from_integer(y.clone());
        if let Some((lo, hi)) = row_interval(&tri, &yr) {
            let mut x = lo;
            while x <= hi {
                let p = RatPoint::new(
                    Rat::from_integer(x.clone()) / &n_rat,
                    Rat::from_integer(y.clone()) / &n_rat,
                );
                if f.strictly_inside(&p) {
                    points.push(p);
                }
                x += 1;
            }
        }
        y += 1;
    }

    let m = points.len();
    assert!(m <= 30, "exhaustive chain search needs a tiny point set");
    let mut best = 0usize;
    // depth-first over strictly convex chains A -> subset -> B
    fn dfs(
        f: &Frame,
        points: &[RatPoint],
        used: u32,
        last: &RatPoint,
        prev_edge: &RatVec,
        sign: i8,
        depth: usize,
        best: &mut usize,
    ) {
        // closing edge to B
        let close = f.b() - last;
        let cr = prev_edge.cross(&close);
        let close_sign = if cr.is_positive() {
            1
        } else if cr.is_negative() {
            -1
        } else {
            0
        };
        if close_sign != 0 && (sign == 0 || close_sign == sign) && depth > *best {
            *best = depth;
        }
        for (i, p) in points.iter().enumerate() {
            if used & (1 << i) != 0 {
                continue;
            }
            let e = p - last;
            let cr = prev_edge.cross(&e);
            let s = if cr.is_positive() {
                1
            } else if cr.is_negative() {
                -1
            } else {
                continue;
            };
            if sign != 0 && s != sign {
                continue;
            }
            dfs(
                f,
                points,
                used | (1 << i),
                p,
                &e,
                if sign == 0 { s } else { sign },
                depth + 1,
                best,
            );
        }
    }
    for (i, p) in points.iter().enumerate() {
        let e = p - f.a();
        dfs(f, &points, 1 << i, p, &e, 0, 1, &mut best);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn bound_values() {
        assert!((max_vertex_bound(&rat(1, 1), 1) - 5.0).abs() < 1e-12);
        assert!((max_vertex_bound(&rat(1, 1000), 1) - 3.0).abs() < 1e-12);
        assert!((max_vertex_bound(&rat(1, 1), 1000) - 500.0).abs() < 1e-9);
    }

    #[test]
    fn build_chain_small_case() {
        let f = Frame::unit();
        let line = build_chain(&f, 10_000, 0.01).unwrap();
        assert_eq!(line.verify(), Ok(()));
        assert!(line.intermediate_count() >= 4);
        let bound = max_vertex_bound(f.doubled_area(), 10_000);
        assert!((line.intermediate_count() as f64) <= bound);
    }

    #[test]
    fn build_chain_rejects_tiny_n() {
        let f = Frame::unit();
        assert!(matches!(
            build_chain(&f, 100, 0.01),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn build_chain_on_skewed_frame() {
        let f = Frame::from_ints((1, 1), (7, 5), (5, 0)).unwrap();
        let line = build_chain(&f, 2_000, 0.05).unwrap();
        assert_eq!(line.verify(), Ok(()));
        assert!(line.intermediate_count() >= 1);
        for v in &line.vertices()[1..line.vertices().len() - 1] {
            assert!(v.in_lattice(2_000));
        }
    }

    #[test]
    fn verify_catches_violations() {
        let f = Frame::unit();
        // collinear triple
        let line = BrokenLine::from_vertices(
            f.clone(),
            vec![
                f.a().clone(),
                RatPoint::new(rat(1, 4), rat(1, 8)),
                RatPoint::new(rat(1, 2), rat(1, 4)),
                RatPoint::new(rat(3, 4), rat(3, 8)),
                f.b().clone(),
            ],
            None,
        );
        assert!(matches!(
            line.verify(),
            Err(ChainViolation::NotStrictlyConvex { .. })
        ));
        // off-lattice vertex under n = 2
        let line = BrokenLine::from_vertices(
            f.clone(),
            vec![
                f.a().clone(),
                RatPoint::new(rat(1, 3), rat(1, 6)),
                f.b().clone(),
            ],
            Some(2),
        );
        assert!(matches!(line.verify(), Err(ChainViolation::OffLattice { .. })));
        // outside vertex
        let line = BrokenLine::from_vertices(
            f.clone(),
            vec![f.a().clone(), RatPoint::from_ints(2, 2), f.b().clone()],
            None,
        );
        assert!(matches!(
            line.verify(),
            Err(ChainViolation::OutsideTriangle { .. })
        ));
    }

    #[test]
    fn exhaustive_chain_bound_tiny_lattices() {
        let f = Frame::unit();
        for n in 1..=4u64 {
            let best = max_chain_vertices_exhaustive(&f, n);
            let bound = max_vertex_bound(f.doubled_area(), n);
            assert!((best as f64) <= bound, "n = {n}: {best} > {bound}");
        }
    }
}
