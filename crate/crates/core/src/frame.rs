//! Frames: an oriented triangle `ABC` and the girth functional it induces.
//!
//! The frame fixes the angle `An(ABC)` — all nonnegative combinations of the
//! vectors `AC` and `CB` — and the girth `[v] = (v × CB + AC × v)/S`, a
//! linear functional normalized so that `[AC] = [CB] = 1` (hence `[AB] = 2`).
//! Girth plays the role of length for convex chains from `A` to `B` inside
//! the triangle: it is additive along any such chain and positive on the
//! angle.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{doubled_area, LatticeVec, RatPoint, RatVec};
use crate::num::Rat;

/// Exact girth value. Nonnegative on the frame angle, linear everywhere.
pub type Girth = Rat;

/// An oriented triangle `ABC` with doubled area `S = AC × CB > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    a: RatPoint,
    b: RatPoint,
    c: RatPoint,
    /// Cached `C − A`.
    ac: RatVec,
    /// Cached `B − C`.
    cb: RatVec,
    /// Doubled area, strictly positive.
    s: Rat,
    /// True when the constructor swapped `A` and `B` to fix orientation.
    swapped: bool,
}

impl Frame {
    /// Builds a frame from the triangle `ABC`, swapping `A` and `B` if needed
    /// so that `S = AC × CB > 0`. Collinear vertices are rejected.
    pub fn new(a: RatPoint, b: RatPoint, c: RatPoint) -> Result<Frame> {
        let s = (&c - &a).cross(&(&b - &c));
        if s.is_zero() {
            return Err(Error::DegenerateTriangle);
        }
        let (a, b, swapped) = if s.is_negative() { (b, a, true) } else { (a, b, false) };
        let ac = &c - &a;
        let cb = &b - &c;
        let s = ac.cross(&cb);
        debug_assert!(s.is_positive());
        Ok(Frame { a, b, c, ac, cb, s, swapped })
    }

    /// Frame from integer vertex coordinates.
    pub fn from_ints(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Result<Frame> {
        Frame::new(
            RatPoint::from_ints(a.0, a.1),
            RatPoint::from_ints(b.0, b.1),
            RatPoint::from_ints(c.0, c.1),
        )
    }

    /// The unit right triangle `A=(0,0)`, `B=(0,1)`, `C=(1,0)` with `S = 1`.
    pub fn unit() -> Frame {
        Frame::from_ints((0, 0), (0, 1), (1, 0)).expect("unit frame is nondegenerate")
    }

    pub fn a(&self) -> &RatPoint {
        &self.a
    }

    pub fn b(&self) -> &RatPoint {
        &self.b
    }

    pub fn c(&self) -> &RatPoint {
        &self.c
    }

    /// `C − A`, the first generator of the frame angle.
    pub fn ac(&self) -> &RatVec {
        &self.ac
    }

    /// `B − C`, the second generator of the frame angle.
    pub fn cb(&self) -> &RatVec {
        &self.cb
    }

    /// Doubled area of the frame triangle; always positive.
    pub fn doubled_area(&self) -> &Rat {
        &self.s
    }

    /// Did the constructor swap `A` and `B` to achieve positive orientation?
    pub fn swapped(&self) -> bool {
        self.swapped
    }

    /// The girth `[v] = (v × CB + AC × v)/S`.
    pub fn girth(&self, v: &RatVec) -> Girth {
        (v.cross(&self.cb) + self.ac.cross(v)) / &self.s
    }

    pub fn girth_lattice(&self, v: &LatticeVec) -> Girth {
        self.girth(&v.to_rat())
    }

    /// Girth of the segment `PQ`, i.e. `|[Q − P]|`.
    pub fn segment_girth(&self, p: &RatPoint, q: &RatPoint) -> Girth {
        self.girth(&(q - p)).abs()
    }

    /// Cone coordinates `(t1, t2)` of `v = t1·AC + t2·CB`.
    /// Their sum is the girth of `v`.
    pub fn cone_coords(&self, v: &RatVec) -> (Rat, Rat) {
        let t1 = v.cross(&self.cb) / &self.s;
        let t2 = self.ac.cross(v) / &self.s;
        (t1, t2)
    }

    /// Membership in the closed angle `An = {t1·AC + t2·CB : t1, t2 >= 0}`.
    pub fn in_angle(&self, v: &RatVec) -> bool {
        let (t1, t2) = self.cone_coords(v);
        !t1.is_negative() && !t2.is_negative()
    }

    /// Membership in the open angle (both cone coordinates positive).
    pub fn in_open_angle(&self, v: &RatVec) -> bool {
        let (t1, t2) = self.cone_coords(v);
        t1.is_positive() && t2.is_positive()
    }

    /// Is `p` strictly inside the triangle `ABC`?
    pub fn strictly_inside(&self, p: &RatPoint) -> bool {
        doubled_area(&self.a, &self.c, p).is_positive()
            && doubled_area(&self.c, &self.b, p).is_positive()
            && doubled_area(&self.b, &self.a, p).is_positive()
    }

    /// ABC-radius of the triangle `PQR`: the product of its side girths
    /// divided by the quadruple area. Errors on a degenerate triangle.
    pub fn abc_radius(&self, p: &RatPoint, q: &RatPoint, r: &RatPoint) -> Result<Rat> {
        let area2 = doubled_area(p, q, r).abs();
        if area2.is_zero() {
            return Err(Error::DegenerateTriangle);
        }
        let product = self.segment_girth(p, q) * self.segment_girth(q, r) * self.segment_girth(p, r);
        Ok(product / (Rat::from_integer(2.into()) * area2))
    }

    /// Applies the integer matrix `U = [[a, b], [c, d]]` (columns act on
    /// coordinates) to every vertex, producing the transformed frame.
    pub fn transform_unimodular(&self, u: [[i64; 2]; 2]) -> Result<Frame> {
        let map = |p: &RatPoint| map_point(u, p);
        Frame::new(map(&self.a), map(&self.b), map(&self.c))
    }
}

/// Image of a point under an integer matrix.
pub fn map_point(u: [[i64; 2]; 2], p: &RatPoint) -> RatPoint {
    let a = Rat::from_integer(u[0][0].into());
    let b = Rat::from_integer(u[0][1].into());
    let c = Rat::from_integer(u[1][0].into());
    let d = Rat::from_integer(u[1][1].into());
    RatPoint::new(&a * &p.x + &b * &p.y, &c * &p.x + &d * &p.y)
}

/// Image of an integer vector under an integer matrix.
pub fn map_lattice_vec(u: [[i64; 2]; 2], v: &LatticeVec) -> LatticeVec {
    LatticeVec {
        x: &v.x * u[0][0] + &v.y * u[0][1],
        y: &v.x * u[1][0] + &v.y * u[1][1],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn unit_frame_normalization() {
        let f = Frame::unit();
        assert_eq!(*f.doubled_area(), rat(1, 1));
        assert_eq!(f.girth(f.ac()), rat(1, 1));
        assert_eq!(f.girth(f.cb()), rat(1, 1));
        let ab = f.b() - f.a();
        assert_eq!(f.girth(&ab), rat(2, 1));
        assert_eq!(f.girth(&RatVec::new(rat(0, 1), rat(0, 1))), rat(0, 1));
    }

    #[test]
    fn orientation_is_fixed_by_swapping() {
        let f = Frame::from_ints((0, 1), (0, 0), (1, 0)).unwrap();
        assert!(f.swapped());
        assert!(f.doubled_area().is_positive());
        assert_eq!(f.girth(f.ac()), rat(1, 1));
        assert!(Frame::from_ints((0, 0), (1, 1), (2, 2)).is_err());
    }

    #[test]
    fn angle_membership() {
        let f = Frame::unit();
        assert!(f.in_angle(&RatVec::new(rat(1, 1), rat(0, 1))));
        assert!(!f.in_angle(&RatVec::new(rat(-1, 1), rat(0, 1))));
        // (1,1) = 2·AC + 1·CB
        let v = RatVec::new(rat(1, 1), rat(1, 1));
        assert!(f.in_angle(&v));
        let (t1, t2) = f.cone_coords(&v);
        assert_eq!((t1, t2), (rat(2, 1), rat(1, 1)));
    }

    #[test]
    fn radius_of_frame_triangle_is_inverse_area() {
        let f = Frame::unit();
        assert_eq!(f.abc_radius(f.a(), f.b(), f.c()).unwrap(), rat(1, 1));

        let g = Frame::from_ints((1, 2), (5, 3), (2, -1)).unwrap();
        let s = g.doubled_area().clone();
        assert_eq!(g.abc_radius(g.a(), g.b(), g.c()).unwrap(), s.recip());

        // P=(0,0), Q=(1/2,0), R=(1/2,1/2) under the unit frame: girths
        // 1/2, 1, 3/2 and doubled area 1/4, so r = (3/8)/(1/4) = 3/2
        let p = RatPoint::from_ints(0, 0);
        let q = RatPoint::new(rat(1, 2), rat(0, 1));
        let r = RatPoint::new(rat(1, 2), rat(1, 2));
        assert_eq!(f.abc_radius(&p, &q, &r).unwrap(), rat(3, 2));
        // with the quadrant frame (B at (1,1)) the same triangle has girths
        // 1/2, 1/2, 1 and r = 1/2
        let quadrant = Frame::from_ints((0, 0), (1, 1), (1, 0)).unwrap();
        assert_eq!(quadrant.abc_radius(&p, &q, &r).unwrap(), rat(1, 2));

        assert!(f
            .abc_radius(&p, &q, &RatPoint::from_ints(1, 0))
            .is_err());
    }

    #[test]
    fn girth_is_additive_along_paths() {
        let f = Frame::from_ints((0, 0), (3, 7), (4, 1)).unwrap();
        let u = RatVec::new(rat(2, 3), rat(5, 1));
        let v = RatVec::new(rat(-1, 2), rat(7, 5));
        assert_eq!(f.girth(&(&u + &v)), f.girth(&u) + f.girth(&v));
    }
}
