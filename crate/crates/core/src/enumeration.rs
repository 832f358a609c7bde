//! Integer vectors of the frame angle, ordered by girth.
//!
//! For a girth bound `r` the sublevel set `{v in An : [v] <= r}` is the
//! triangle with vertices `O`, `r·AC`, `r·CB`, so enumeration reduces to
//! exact rasterization of a rational triangle plus an exact sort. The
//! threshold grows geometrically until enough vectors are captured.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::frame::{Frame, Girth};
use crate::geometry::{doubled_area, LatticeVec, RatPoint};
use crate::num::{ceil_int, floor_int, to_f64, Rat};

/// All integer points of the closed triangle `P0 P1 P2`, scanned row by row
/// with exact rational edge clipping. The triangle must be nondegenerate.
pub fn lattice_points_in_triangle(p0: &RatPoint, p1: &RatPoint, p2: &RatPoint) -> Vec<LatticeVec> {
    let orient = doubled_area(p0, p1, p2);
    debug_assert!(!orient.is_zero(), "degenerate triangle in rasterizer");
    let (p1, p2) = if orient.is_negative() { (p2, p1) } else { (p1, p2) };
    let verts = [p0.clone(), p1.clone(), p2.clone()];

    let ys: Vec<&Rat> = verts.iter().map(|p| &p.y).collect();
    let ymin = ceil_int(ys.iter().copied().min().unwrap());
    let ymax = floor_int(ys.iter().copied().max().unwrap());

    let mut out = Vec::new();
    let mut y = ymin;
    while y <= ymax {
        let yr = Rat::from_integer(y.clone());
        if let Some((lo, hi)) = row_interval(&verts, &yr) {
            let mut x = lo;
            while x <= hi {
                out.push(LatticeVec::new(x.clone(), y.clone()));
                x += 1;
            }
        }
        y += 1;
    }
    out
}

/// Exact integer x-interval of a convex polygon at height `y`, or `None` if
/// the row misses the polygon. Vertices must be in counterclockwise order.
pub(crate) fn row_interval(verts: &[RatPoint], y: &Rat) -> Option<(BigInt, BigInt)> {
    let mut lower: Option<Rat> = None;
    let mut upper: Option<Rat> = None;
    let k = verts.len();
    for i in 0..k {
        let p = &verts[i];
        let q = &verts[(i + 1) % k];
        let e = q - p;
        // inside: e × (X − p) >= 0, i.e. e.x·(y − p.y) − e.y·(x − p.x) >= 0
        let a = &e.x * (y - &p.y) + &e.y * &p.x;
        if e.y.is_positive() {
            let bound = &a / &e.y;
            upper = Some(match upper {
                Some(u) => u.min(bound),
                None => bound,
            });
        } else if e.y.is_negative() {
            let bound = &a / &e.y;
            lower = Some(match lower {
                Some(l) => l.max(bound),
                None => bound,
            });
        } else if a.is_negative() {
            return None;
        }
    }
    let lo = lower.map(|l| ceil_int(&l))?;
    let hi = upper.map(|u| floor_int(&u))?;
    if lo <= hi {
        Some((lo, hi))
    } else {
        None
    }
}

/// Which vectors of the angle participate in an enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorClass {
    /// Every nonzero integer vector of the closed angle.
    All,
    /// Primitive vectors strictly inside the angle (both cone coordinates
    /// positive). These are the usable edge directions of a strictly convex
    /// chain joining the triangle's corners.
    InteriorPrimitive,
}

/// Nonzero vectors of `An` with girth `<= rmax`, together with their girths.
/// Unsorted.
pub fn vectors_up_to_girth(f: &Frame, rmax: &Rat, class: VectorClass) -> Vec<(LatticeVec, Girth)> {
    if !rmax.is_positive() {
        return Vec::new();
    }
    let origin = RatPoint::new(Rat::zero(), Rat::zero());
    let p1 = RatPoint::new(&f.ac().x * rmax, &f.ac().y * rmax);
    let p2 = RatPoint::new(&f.cb().x * rmax, &f.cb().y * rmax);
    let mut out = Vec::new();
    for v in lattice_points_in_triangle(&origin, &p1, &p2) {
        if v.is_zero() {
            continue;
        }
        let rv = v.to_rat();
        let (t1, t2) = f.cone_coords(&rv);
        let inside = match class {
            VectorClass::All => !t1.is_negative() && !t2.is_negative(),
            VectorClass::InteriorPrimitive => {
                t1.is_positive() && t2.is_positive() && v.content().is_one()
            }
        };
        if !inside {
            continue;
        }
        let girth = t1 + t2;
        if &girth <= rmax {
            out.push((v, girth));
        }
    }
    out
}

/// Sorts by girth, ties broken by ascending angle from the ray `AC`
/// (counterclockwise). This is a total order on the angle's nonzero vectors.
pub fn sort_by_girth_then_angle(vectors: &mut [(LatticeVec, Girth)]) {
    vectors.sort_by(|(u, gu), (v, gv)| {
        gu.cmp(gv).then_with(|| {
            // u precedes v when u × v > 0
            v.cross(u).cmp(&BigInt::zero())
        })
    });
}

/// The `k` nonzero vectors of `An ∩ Z²` with least girths (deterministic
/// tie-breaking), sorted by `(girth, angle)`.
pub fn enumerate_by_girth(f: &Frame, k: usize) -> Vec<LatticeVec> {
    enumerate_with_girths(f, k, VectorClass::All)
        .into_iter()
        .map(|(v, _)| v)
        .collect()
}

/// As [`enumerate_by_girth`], keeping girths and choosing the vector class.
pub fn enumerate_with_girths(f: &Frame, k: usize, class: VectorClass) -> Vec<(LatticeVec, Girth)> {
    if k == 0 {
        return Vec::new();
    }
    let s = to_f64(f.doubled_area());
    let guess = (2.0 * (k as f64 + 2.0) / s).sqrt().ceil().max(1.0);
    let mut rmax = Rat::from_integer(BigInt::from(guess as u64));
    loop {
        let mut found = vectors_up_to_girth(f, &rmax, class);
        if found.len() >= k {
            sort_by_girth_then_angle(&mut found);
            found.truncate(k);
            return found;
        }
        rmax *= Rat::from_integer(2.into());
    }
}

/// Exact number of nonzero vectors `v in An ∩ Z²` with `[v] < r`.
pub fn count_girth_below(f: &Frame, r: &Rat) -> BigInt {
    let n = vectors_up_to_girth(f, r, VectorClass::All)
        .into_iter()
        .filter(|(_, g)| g < r)
        .count();
    BigInt::from(n)
}

/// Sum of the `k` least girths (exact).
pub fn girth_sum(f: &Frame, k: usize) -> Rat {
    enumerate_with_girths(f, k, VectorClass::All)
        .into_iter()
        .fold(Rat::zero(), |acc, (_, g)| acc + g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn smallest_vectors_of_unit_frame() {
        let f = Frame::unit();
        let two = enumerate_by_girth(&f, 2);
        assert_eq!(two, vec![LatticeVec::new(1, 0), LatticeVec::new(-1, 1)]);
        for v in &two {
            assert_eq!(f.girth_lattice(v), rat(1, 1));
        }
        let three = enumerate_by_girth(&f, 3);
        assert_eq!(three[..2], two[..]);
        assert_eq!(f.girth_lattice(&three[2]), rat(2, 1));
    }

    #[test]
    fn count_below_thresholds() {
        let f = Frame::unit();
        assert_eq!(count_girth_below(&f, &rat(1, 1)), BigInt::zero());
        assert_eq!(count_girth_below(&f, &rat(2, 1)), BigInt::from(2));
        // cohort of girth g has g+1 vectors: counts are G(G+3)/2 at r = G+1
        assert_eq!(count_girth_below(&f, &rat(4, 1)), BigInt::from(2 + 3 + 4));
    }

    #[test]
    fn sums_of_least_girths() {
        let f = Frame::unit();
        assert_eq!(girth_sum(&f, 2), rat(2, 1));
        assert_eq!(girth_sum(&f, 5), rat(1 + 1 + 2 + 2 + 2, 1));
    }

    #[test]
    fn brute_force_box_scan_agrees() {
        // independent oracle: scan a coordinate box, keep vectors of the
        // angle, sort by (girth, angle) with the same tie rule
        let frames = [
            Frame::unit(),
            Frame::from_ints((0, 0), (3, 5), (2, 1)).unwrap(),
            Frame::from_ints((-1, -1), (2, 3), (1, 0)).unwrap(),
        ];
        for f in &frames {
            let k = 60;
            let fast = enumerate_with_girths(f, k, VectorClass::All);
            let rk = fast.last().unwrap().1.clone();
            // every vector of girth <= [z_k] lies in the box scanned below
            let bound: BigInt = 40 * rk.ceil().to_integer().max(BigInt::from(1));
            let m: i64 = (&bound).try_into().unwrap();
            let mut brute: Vec<(LatticeVec, Girth)> = Vec::new();
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
            assert_eq!(fast, brute, "frame {:?}", f.a());
        }
    }

    #[test]
    fn enumeration_is_prefix_stable_and_sorted() {
        let f = Frame::from_ints((0, 0), (2, 3), (1, 0)).unwrap();
        let long = enumerate_with_girths(&f, 40, VectorClass::All);
        let short = enumerate_with_girths(&f, 25, VectorClass::All);
        assert_eq!(long[..25], short[..]);
        for w in long.windows(2) {
            assert!(w[0].1 <= w[1].1);
        }
    }
}
