//! Exact integer/rational planar primitives.
//!
//! Points are positions, vectors are displacements; both live over exact
//! arithmetic. The pseudoscalar product `u × v = u.x·v.y − u.y·v.x` (the
//! oriented doubled area of the parallelogram spanned by `u` and `v`) is the
//! only geometric predicate the rest of the crate needs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::num::Rat;

/// Exact integer vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVec {
    pub x: BigInt,
    pub y: BigInt,
}

impl LatticeVec {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        LatticeVec { x: x.into(), y: y.into() }
    }

    /// Pseudoscalar product `self × other`.
    pub fn cross(&self, other: &LatticeVec) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// gcd of the coordinates; 0 only for the zero vector.
    pub fn content(&self) -> BigInt {
        self.x.gcd(&self.y)
    }

    /// The primitive vector with the same direction. Zero stays zero.
    pub fn primitive(&self) -> LatticeVec {
        let g = self.content();
        if g.is_zero() {
            self.clone()
        } else {
            LatticeVec { x: &self.x / &g, y: &self.y / &g }
        }
    }

    pub fn to_rat(&self) -> RatVec {
        RatVec {
            x: Rat::from_integer(self.x.clone()),
            y: Rat::from_integer(self.y.clone()),
        }
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for &LatticeVec {
    type Output = LatticeVec;
    fn add(self, other: &LatticeVec) -> LatticeVec {
        LatticeVec { x: &self.x + &other.x, y: &self.y + &other.y }
    }
}

impl Sub for &LatticeVec {
    type Output = LatticeVec;
    fn sub(self, other: &LatticeVec) -> LatticeVec {
        LatticeVec { x: &self.x - &other.x, y: &self.y - &other.y }
    }
}

impl Neg for &LatticeVec {
    type Output = LatticeVec;
    fn neg(self) -> LatticeVec {
        LatticeVec { x: -&self.x, y: -&self.y }
    }
}

/// Exact rational vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatVec {
    pub x: Rat,
    pub y: Rat,
}

impl RatVec {
    pub fn new(x: Rat, y: Rat) -> Self {
        RatVec { x, y }
    }

    /// Pseudoscalar product `self × other`.
    pub fn cross(&self, other: &RatVec) -> Rat {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &RatVec) -> Rat {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, k: &Rat) -> RatVec {
        RatVec { x: &self.x * k, y: &self.y * k }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (crate::num::to_f64(&self.x), crate::num::to_f64(&self.y))
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for &RatVec {
    type Output = RatVec;
    fn add(self, other: &RatVec) -> RatVec {
        RatVec { x: &self.x + &other.x, y: &self.y + &other.y }
    }
}

impl Sub for &RatVec {
    type Output = RatVec;
    fn sub(self, other: &RatVec) -> RatVec {
        RatVec { x: &self.x - &other.x, y: &self.y - &other.y }
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec { x: -&self.x, y: -&self.y }
    }
}

impl Mul<&Rat> for &RatVec {
    type Output = RatVec;
    fn mul(self, k: &Rat) -> RatVec {
        self.scale(k)
    }
}

/// Exact rational planar point. `num_rational` keeps fractions reduced with
/// positive denominators, so the representation is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatPoint {
    pub x: Rat,
    pub y: Rat,
}

impl RatPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        RatPoint { x, y }
    }

    pub fn from_ints(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        RatPoint {
            x: Rat::from_integer(x.into()),
            y: Rat::from_integer(y.into()),
        }
    }

    pub fn to_vec(&self) -> RatVec {
        RatVec { x: self.x.clone(), y: self.y.clone() }
    }

    /// Does the point lie on the lattice `(Z/n)^2`?
    pub fn in_lattice(&self, n: u64) -> bool {
        let n = BigInt::from(n);
        (&self.x * &n).is_integer() && (&self.y * &n).is_integer()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (crate::num::to_f64(&self.x), crate::num::to_f64(&self.y))
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Sub for &RatPoint {
    type Output = RatVec;
    fn sub(self, other: &RatPoint) -> RatVec {
        RatVec { x: &self.x - &other.x, y: &self.y - &other.y }
    }
}

impl Add<&RatVec> for &RatPoint {
    type Output = RatPoint;
    fn add(self, v: &RatVec) -> RatPoint {
        RatPoint { x: &self.x + &v.x, y: &self.y + &v.y }
    }
}

impl Sub<&RatVec> for &RatPoint {
    type Output = RatPoint;
    fn sub(self, v: &RatVec) -> RatPoint {
        RatPoint { x: &self.x - &v.x, y: &self.y - &v.y }
    }
}

/// Signed doubled area of the triangle `PQR`, i.e. `(Q−P) × (R−P)`.
/// Positive for counterclockwise orientation.
pub fn doubled_area(p: &RatPoint, q: &RatPoint, r: &RatPoint) -> Rat {
    (q - p).cross(&(r - p))
}

/// Number of points of `(Z/n)^2` on the closed segment `PQ`.
///
/// Scales the segment to integer coordinates and solves the two divisibility
/// congruences along the primitive step; a degenerate segment (`P = Q`)
/// counts its single point.
pub fn segment_lattice_count(p: &RatPoint, q: &RatPoint, n: u64) -> BigInt {
    let n_rat = Rat::from_integer(BigInt::from(n));
    let a = [&p.x * &n_rat, &p.y * &n_rat];
    let b = [&q.x * &n_rat, &q.y * &n_rat];
    if p == q {
        return if p.in_lattice(n) { BigInt::from(1) } else { BigInt::zero() };
    }

    // Clear denominators: the points of Z^2 on the scaled segment correspond
    // to points of (L·Z)^2 on an integer segment.
    let lcm2 = |u: &BigInt, v: &BigInt| u.lcm(v);
    let l = lcm2(
        &lcm2(a[0].denom(), a[1].denom()),
        &lcm2(b[0].denom(), b[1].denom()),
    );
    let l_rat = Rat::from_integer(l.clone());
    let ax = (&a[0] * &l_rat).to_integer();
    let ay = (&a[1] * &l_rat).to_integer();
    let bx = (&b[0] * &l_rat).to_integer();
    let by = (&b[1] * &l_rat).to_integer();

    let gx = &bx - &ax;
    let gy = &by - &ay;
    let g = gx.gcd(&gy);
    let sx = &gx / &g;
    let sy = &gy / &g;

    // j·s ≡ −a (mod L) componentwise, j in [0, g].
    let c1 = solve_congruence(&sx, &(-&ax), &l);
    let c2 = solve_congruence(&sy, &(-&ay), &l);
    let (r, m) = match (c1, c2) {
        (Some(c1), Some(c2)) => match combine_congruences(&c1, &c2) {
            Some(rm) => rm,
            None => return BigInt::zero(),
        },
        _ => return BigInt::zero(),
    };
    // count j ≡ r (mod m) in [0, g], with 0 <= r < m
    if r > g {
        BigInt::zero()
    } else {
        (&g - &r).div_floor(&m) + 1
    }
}

/// Solutions of `a·j ≡ b (mod m)` as a residue class, if any. `m >= 1`.
fn solve_congruence(a: &BigInt, b: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let a = a.mod_floor(m);
    let b = b.mod_floor(m);
    if a.is_zero() {
        return if b.is_zero() { Some((BigInt::zero(), BigInt::from(1))) } else { None };
    }
    let e = a.extended_gcd(m);
    let d = e.gcd;
    if !(&b % &d).is_zero() {
        return None;
    }
    let m1 = m / &d;
    // (a/d) * x ≡ 1 (mod m/d), with x = e.x
    let r = ((&b / &d) * e.x).mod_floor(&m1);
    Some((r, m1))
}

/// Intersection of two residue classes, if nonempty.
fn combine_congruences(c1: &(BigInt, BigInt), c2: &(BigInt, BigInt)) -> Option<(BigInt, BigInt)> {
    let (r1, m1) = c1;
    let (r2, m2) = c2;
    let e = m1.extended_gcd(m2);
    let g = &e.gcd;
    let diff = r2 - r1;
    if !(&diff % g).is_zero() {
        return None;
    }
    let lcm = m1 / g * m2;
    let t = ((diff / g) * &e.x).mod_floor(&(m2 / g));
    let r = (r1 + m1 * t).mod_floor(&lcm);
    Some((r, lcm))
}

/// Is `|det U| = 1` for the integer matrix `U = [[a, b], [c, d]]`?
pub fn is_unimodular(a: i64, b: i64, c: i64, d: i64) -> bool {
    (a as i128 * d as i128 - b as i128 * c as i128).abs() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn pt(x: i64, y: i64) -> RatPoint {
        RatPoint::from_ints(x, y)
    }

    #[test]
    fn cross_products() {
        assert_eq!(LatticeVec::new(1, 0).cross(&LatticeVec::new(0, 1)), BigInt::from(1));
        assert_eq!(LatticeVec::new(2, 3).cross(&LatticeVec::new(4, 6)), BigInt::zero());
        assert_eq!(LatticeVec::new(-3, 2).cross(&LatticeVec::new(-2, 2)), BigInt::from(-2));
    }

    #[test]
    fn doubled_areas() {
        assert_eq!(doubled_area(&pt(0, 0), &pt(1, 0), &pt(0, 1)), rat(1, 1));
        assert_eq!(doubled_area(&pt(0, 0), &pt(2, 0), &pt(1, 5)), rat(10, 1));
        assert_eq!(doubled_area(&pt(0, 0), &pt(1, 1), &pt(2, 2)), rat(0, 1));
    }

    #[test]
    fn segment_counts() {
        assert_eq!(segment_lattice_count(&pt(0, 0), &pt(4, 6), 1), BigInt::from(3));
        assert_eq!(segment_lattice_count(&pt(0, 0), &pt(1, 1), 5), BigInt::from(6));
        let p = RatPoint::new(rat(1, 3), rat(0, 1));
        let q = RatPoint::new(rat(2, 3), rat(0, 1));
        assert_eq!(segment_lattice_count(&p, &q, 2), BigInt::from(1));
        // single segment (0,0)->(1,0) at n=7 carries 8 nodes
        assert_eq!(segment_lattice_count(&pt(0, 0), &pt(1, 0), 7), BigInt::from(8));
    }

    #[test]
    fn segment_count_matches_brute_force() {
        // brute-force over k/n steps on a few rational segments
        let cases = [
            (RatPoint::new(rat(1, 2), rat(1, 3)), RatPoint::new(rat(7, 2), rat(7, 3)), 6u64),
            (RatPoint::new(rat(0, 1), rat(0, 1)), RatPoint::new(rat(5, 7), rat(3, 7)), 7),
            (RatPoint::new(rat(-1, 2), rat(2, 1)), RatPoint::new(rat(3, 2), rat(-2, 1)), 4),
            (RatPoint::new(rat(1, 5), rat(1, 5)), RatPoint::new(rat(1, 5), rat(9, 5)), 5),
        ];
        for (p, q, n) in cases {
            let d = &q - &p;
            // Any lattice point on these segments is p + (j/2520)·d; the
            // parametrization is injective, so hits count once each.
            let mut expected = 0;
            let k = 2520;
            for j in 0..=k {
                let t = rat(j, k);
                let cand = &p + &d.scale(&t);
                if cand.in_lattice(n) {
                    expected += 1;
                }
            }
            assert_eq!(
                segment_lattice_count(&p, &q, n),
                BigInt::from(expected),
                "segment {p} -> {q}, n = {n}"
            );
        }
    }
}
