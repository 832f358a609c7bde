//! Counting vector pairs with a fixed pseudoscalar product.
//!
//! `M(Ω₁, Ω₂; m; n)` counts pairs `x₁ ∈ nΩ₁ ∩ Z²`, `x₂ ∈ nΩ₂ ∩ Z²` with
//! `x₁ × x₂ = m`. Two exact routes are provided: a double loop over the
//! materialized point sets, and a per-`x₁` clip of the solution line
//! `x₂ = x₂⁰ + t·x₁/gcd(x₁)` against the target domain. Their results agree
//! exactly; the asymptotic prediction comes from the chord-profile integral.
//!
//! Domains are finite unions of origin-vertex triangles. Membership
//! convention, fixed across every counter in this module: the two boundary
//! rays of each triangle are excluded, the outer edge is included. This is
//! the convention of the model triangle `{0 < y < x <= a}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::enumeration::{lattice_points_in_triangle, sort_by_girth_then_angle, vectors_up_to_girth, VectorClass};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::geometry::{LatticeVec, RatPoint};
use crate::num::{rat_from_f64, to_f64, Rat};

/// One origin-vertex triangle of a star domain, with `U × V > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarTriangle {
    u: RatPoint,
    v: RatPoint,
}

impl StarTriangle {
    pub fn u(&self) -> &RatPoint {
        &self.u
    }

    pub fn v(&self) -> &RatPoint {
        &self.v
    }
}

/// A bounded plane region given as a finite union of origin-vertex
/// triangles with pairwise interior-disjoint angular sectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarDomain {
    tris: Vec<StarTriangle>,
}

impl StarDomain {
    /// Validates positive areas and pairwise interior-disjointness. The
    /// triangle `(O, U, V)` is reoriented so `U × V > 0`.
    pub fn new(tris: Vec<(RatPoint, RatPoint)>) -> Result<StarDomain> {
        if tris.is_empty() {
            return Err(Error::InvalidInput("empty star domain".into()));
        }
        let mut out = Vec::with_capacity(tris.len());
        for (u, v) in tris {
            let cr = u.to_vec().cross(&v.to_vec());
            if cr.is_zero() {
                return Err(Error::InvalidInput("degenerate star triangle".into()));
            }
            let (u, v) = if cr.is_negative() { (v, u) } else { (u, v) };
            out.push(StarTriangle { u, v });
        }
        for i in 0..out.len() {
            for j in i + 1..out.len() {
                if sectors_overlap(&out[i], &out[j]) {
                    return Err(Error::InvalidInput(format!(
                        "star triangles {i} and {j} have overlapping sectors"
                    )));
                }
            }
        }
        Ok(StarDomain { tris: out })
    }

    /// The model triangle `{(x, y) : 0 < y < x <= a}`.
    pub fn model_triangle(a: &Rat) -> Result<StarDomain> {
        if !a.is_positive() {
            return Err(Error::InvalidInput("triangle scale must be positive".into()));
        }
        StarDomain::new(vec![(
            RatPoint::new(a.clone(), Rat::zero()),
            RatPoint::new(a.clone(), a.clone()),
        )])
    }

    /// An origin-star fan over consecutive boundary points.
    pub fn fan(points: &[RatPoint]) -> Result<StarDomain> {
        if points.len() < 2 {
            return Err(Error::InvalidInput("fan needs at least two points".into()));
        }
        StarDomain::new(
            points
                .windows(2)
                .map(|w| (w[0].clone(), w[1].clone()))
                .collect(),
        )
    }

    pub fn triangles(&self) -> &[StarTriangle] {
        &self.tris
    }

    pub fn scale(&self, k: &Rat) -> StarDomain {
        let scale_pt = |p: &RatPoint| RatPoint::new(&p.x * k, &p.y * k);
        StarDomain {
            tris: self
                .tris
                .iter()
                .map(|t| StarTriangle { u: scale_pt(&t.u), v: scale_pt(&t.v) })
                .collect(),
        }
    }

    /// Image under an integer matrix with `|det| = 1`.
    pub fn transform_unimodular(&self, u: [[i64; 2]; 2]) -> Result<StarDomain> {
        StarDomain::new(
            self.tris
                .iter()
                .map(|t| {
                    (
                        crate::frame::map_point(u, &t.u),
                        crate::frame::map_point(u, &t.v),
                    )
                })
                .collect(),
        )
    }

    /// Doubled area (exact); the sector triangles are interior-disjoint.
    pub fn doubled_area(&self) -> Rat {
        self.tris
            .iter()
            .fold(Rat::zero(), |acc, t| acc + t.u.to_vec().cross(&t.v.to_vec()))
    }

    /// Exact membership under the module's boundary convention.
    pub fn contains(&self, p: &RatPoint) -> bool {
        let pv = p.to_vec();
        self.tris.iter().any(|t| {
            let w = t.u.to_vec().cross(&t.v.to_vec());
            let alpha_num = pv.cross(&t.v.to_vec());
            let beta_num = t.u.to_vec().cross(&pv);
            alpha_num.is_positive()
                && beta_num.is_positive()
                && alpha_num + beta_num <= w
        })
    }

    /// Largest `|coordinate|` over the generating points.
    pub fn max_coord(&self) -> Rat {
        self.tris
            .iter()
            .flat_map(|t| [&t.u.x, &t.u.y, &t.v.x, &t.v.y])
            .map(|c| c.abs())
            .max()
            .expect("nonempty domain")
    }
}

fn same_ray(a: &RatPoint, b: &RatPoint) -> bool {
    a.to_vec().cross(&b.to_vec()).is_zero() && a.to_vec().dot(&b.to_vec()).is_positive()
}

fn strictly_inside_sector(x: &RatPoint, t: &StarTriangle) -> bool {
    t.u.to_vec().cross(&x.to_vec()).is_positive() && x.to_vec().cross(&t.v.to_vec()).is_positive()
}

fn sectors_overlap(a: &StarTriangle, b: &StarTriangle) -> bool {
    same_ray(&a.u, &b.u)
        || strictly_inside_sector(&b.u, a)
        || strictly_inside_sector(&b.v, a)
        || strictly_inside_sector(&a.u, b)
        || strictly_inside_sector(&a.v, b)
}

/// Integer-cleared membership data for one triangle of `nΩ`:
/// `w ∈ nT ⟺ w×V″ > 0 ∧ U″×w > 0 ∧ M(w×V″ + U″×w) <= K`.
struct ScaledTri {
    ux: i128,
    uy: i128,
    vx: i128,
    vy: i128,
    m: i128,
    k: i128,
}

impl ScaledTri {
    fn new(t: &StarTriangle, n: u64) -> ScaledTri {
        let den = t.u.x.denom().lcm(t.u.y.denom());
        let den = den.lcm(&t.v.x.denom().lcm(t.v.y.denom()));
        let m_rat = Rat::from_integer(den.clone());
        let as_i128 = |x: &Rat| -> i128 {
            (x * &m_rat)
                .to_integer()
                .to_i128()
                .expect("domain coordinates overflow the fast-counter range")
        };
        let (ux, uy, vx, vy) = (as_i128(&t.u.x), as_i128(&t.u.y), as_i128(&t.v.x), as_i128(&t.v.y));
        let w = ux * vy - uy * vx;
        debug_assert!(w > 0);
        let m = den.to_i128().expect("denominator overflow");
        ScaledTri { ux, uy, vx, vy, m, k: (n as i128) * w }
    }

    fn contains(&self, x: i128, y: i128) -> bool {
        let p = x * self.vy - y * self.vx;
        if p <= 0 {
            return false;
        }
        let q = self.ux * y - self.uy * x;
        if q <= 0 {
            return false;
        }
        self.m * (p + q) <= self.k
    }

    /// Number of integer `t` with `x0 + t·s ∈ nT`.
    fn count_on_line(&self, x0: (i128, i128), s: (i128, i128)) -> u64 {
        // p(t) = (x0 + t s) × V″, q(t) = U″ × (x0 + t s), both > 0,
        // and M(p + q) <= K
        let p0 = x0.0 * self.vy - x0.1 * self.vx;
        let p1 = s.0 * self.vy - s.1 * self.vx;
        let q0 = self.ux * x0.1 - self.uy * x0.0;
        let q1 = self.ux * s.1 - self.uy * s.0;
        let mut lo: Option<i128> = None;
        let mut hi: Option<i128> = None;
        // a + t·b > 0
        for (a, b) in [(p0, p1), (q0, q1)] {
            if b == 0 {
                if a <= 0 {
                    return 0;
                }
            } else if b > 0 {
                let bound = div_floor_i128(-a, b) + 1;
                lo = Some(lo.map_or(bound, |l| l.max(bound)));
            } else {
                let bound = div_ceil_i128(-a, b) - 1;
                hi = Some(hi.map_or(bound, |h| h.min(bound)));
            }
        }
        // r0 + t·r1 <= K
        let r0 = self.m * (p0 + q0);
        let r1 = self.m * (p1 + q1);
        if r1 == 0 {
            if r0 > self.k {
                return 0;
            }
        } else if r1 > 0 {
            let bound = div_floor_i128(self.k - r0, r1);
            hi = Some(hi.map_or(bound, |h| h.min(bound)));
        } else {
            let bound = div_ceil_i128(self.k - r0, r1);
            lo = Some(lo.map_or(bound, |l| l.max(bound)));
        }
        match (lo, hi) {
            (Some(l), Some(h)) if l <= h => (h - l + 1) as u64,
            (Some(_), Some(_)) => 0,
            // the line constraints never leave t unbounded on both sides:
            // the domain is bounded, so a missing bound means no solutions
            // unless all constraints were constant and satisfiable, which
            // the area bound rules out for a nonzero direction
            _ => 0,
        }
    }
}

fn div_floor_i128(a: i128, b: i128) -> i128 {
    let q = a / b;
    if a % b != 0 && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil_i128(a: i128, b: i128) -> i128 {
    let q = a / b;
    if a % b != 0 && ((a < 0) == (b < 0)) {
        q + 1
    } else {
        q
    }
}

/// All integer points of `nΩ`.
pub fn lattice_points_in_domain(omega: &StarDomain, n: u64) -> Vec<(i64, i64)> {
    let n_rat = Rat::from_integer(BigInt::from(n));
    let origin = RatPoint::new(Rat::zero(), Rat::zero());
    let mut out = Vec::new();
    for t in &omega.tris {
        let st = ScaledTri::new(t, n);
        let pu = RatPoint::new(&t.u.x * &n_rat, &t.u.y * &n_rat);
        let pv = RatPoint::new(&t.v.x * &n_rat, &t.v.y * &n_rat);
        for cand in lattice_points_in_triangle(&origin, &pu, &pv) {
            let x = cand.x.to_i64().expect("point overflows i64");
            let y = cand.y.to_i64().expect("point overflows i64");
            if st.contains(x as i128, y as i128) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Reference counter: materialize both point sets and test every pair.
/// Exact; quadratic, intended for small `n`.
pub fn count_pairs_bruteforce(
    omega1: &StarDomain,
    omega2: &StarDomain,
    m: i64,
    n: u64,
) -> u64 {
    let pts1 = lattice_points_in_domain(omega1, n);
    let pts2 = lattice_points_in_domain(omega2, n);
    let m = m as i128;
    pts1.par_iter()
        .map(|&(a, b)| {
            let (a, b) = (a as i128, b as i128);
            pts2.iter()
                .filter(|&&(c, d)| a * (d as i128) - b * (c as i128) == m)
                .count() as u64
        })
        .sum()
}

/// Fast exact counter: for each `x₁` the solutions of `x₁ × x₂ = m` form a
/// lattice line, clipped against `nΩ₂` triangle by triangle.
pub fn count_pairs_fast(omega1: &StarDomain, omega2: &StarDomain, m: i64, n: u64) -> u64 {
    if m == 0 {
        // pairs on a common ray are not what this machinery is for
        return 0;
    }
    let pts1 = lattice_points_in_domain(omega1, n);
    let scaled2: Vec<ScaledTri> = omega2.tris.iter().map(|t| ScaledTri::new(t, n)).collect();
    let m = m as i128;
    pts1.par_iter()
        .map(|&(a, b)| {
            let (a, b) = (a as i128, b as i128);
            let e = a.extended_gcd(&b);
            let g = e.gcd;
            debug_assert!(g > 0);
            if m % g != 0 {
                return 0u64;
            }
            let lam = m / g;
            // a·y₂ − b·x₂ = m with x₂⁰ = −e.y·λ, y₂⁰ = e.x·λ
            let x0 = (-e.y * lam, e.x * lam);
            let s = (a / g, b / g);
            scaled2.iter().map(|t| t.count_on_line(x0, s)).sum()
        })
        .sum()
}

/// Divisor sum `σ(m)`.
pub fn divisor_sigma(m: u64) -> u64 {
    assert!(m >= 1);
    let mut s = 0;
    for d in 1..=m {
        if m.is_multiple_of(d) {
            s += d;
        }
    }
    s
}

/// Total length of `Ω ∩ {y = tan(φ)·x}` (the full line through the origin).
pub fn chord_profile(omega: &StarDomain, phi: f64) -> f64 {
    let d = (phi.cos(), phi.sin());
    let mut total = 0.0;
    for t in &omega.tris {
        let (ux, uy) = t.u.to_f64();
        let (vx, vy) = t.v.to_f64();
        let w = ux * vy - uy * vx;
        for dir in [d, (-d.0, -d.1)] {
            let a = dir.0 * vy - dir.1 * vx; // d × V
            let b = ux * dir.1 - uy * dir.0; // U × d
            if a > 0.0 && b > 0.0 {
                total += w / (a + b);
            }
        }
    }
    total
}

/// `∫₀^π l(Ω₁,φ)·l(Ω₂,φ) dφ` by adaptive Simpson quadrature with mandatory
/// breakpoints at every ray angle of both domains.
pub fn profile_integral(omega1: &StarDomain, omega2: &StarDomain, tol: f64) -> f64 {
    assert!(tol > 0.0);
    let mut brk = vec![0.0, std::f64::consts::PI];
    for om in [omega1, omega2] {
        for t in &om.tris {
            for p in [&t.u, &t.v] {
                let (x, y) = p.to_f64();
                let mut a = y.atan2(x);
                if a < 0.0 {
                    a += std::f64::consts::PI;
                }
                if a >= std::f64::consts::PI {
                    a -= std::f64::consts::PI;
                }
                if a > 0.0 && a < std::f64::consts::PI {
                    brk.push(a);
                }
            }
        }
    }
    brk.sort_by(f64::total_cmp);
    brk.dedup_by(|a, b| (*a - *b).abs() < 1e-13);

    let f = |phi: f64| chord_profile(omega1, phi) * chord_profile(omega2, phi);
    let mut total = 0.0;
    for w in brk.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a < 1e-13 {
            continue;
        }
        let eps = tol * (b - a) / std::f64::consts::PI;
        total += adaptive_simpson(&f, a, b, eps);
    }
    total
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(f, a, b, fa, fm, fb, whole, eps, 50)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        left + right + delta / 15.0
    } else {
        simpson_rec(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
            + simpson_rec(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
    }
}

/// Asymptotic prediction `σ(|m|)/|m| · ζ(2)⁻¹ · ∫ l₁l₂ dφ · n²`.
pub fn prediction(omega1: &StarDomain, omega2: &StarDomain, m: i64, n: u64) -> f64 {
    prediction_with_tol(omega1, omega2, m, n, 1e-9)
}

pub fn prediction_with_tol(
    omega1: &StarDomain,
    omega2: &StarDomain,
    m: i64,
    n: u64,
    tol: f64,
) -> f64 {
    assert!(m != 0);
    let mm = m.unsigned_abs();
    let zeta2_inv = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
    divisor_sigma(mm) as f64 / mm as f64
        * zeta2_inv
        * profile_integral(omega1, omega2, tol)
        * (n as f64)
        * (n as f64)
}

/// Count and prediction for pairs with a fixed pseudoscalar product whose
/// girth pair falls in a scaled domain.
#[derive(Debug, Clone)]
pub struct PairCount {
    pub m: i64,
    /// Scale `N` of the domain.
    pub n: u64,
    pub count: u64,
    pub prediction: f64,
}

/// Counts pairs `x, y ∈ An ∩ Z²` with `x × y = m` and `([x], [y]) ∈ NΩ`,
/// exactly. `Ω` must be a star domain inside the open first quadrant. The
/// prediction is `c(m)·S·N²·S(Ω)` with `c(m) = σ(|m|)/(2ζ(2)|m|)` and
/// `S(Ω)` the doubled area; the doubled-area convention makes the constant
/// consistent with the pair-count prediction on girth sublevel triangles.
pub fn special_point_count(
    f: &Frame,
    m: i64,
    n_scale: u64,
    omega: &StarDomain,
) -> Result<PairCount> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be nonzero".into()));
    }
    // generators in the closed first quadrant put the membership region
    // (open rays excluded, so the axes themselves are never hit) inside the
    // open quadrant
    for t in &omega.tris {
        for p in [&t.u, &t.v] {
            if p.x.is_negative() || p.y.is_negative() {
                return Err(Error::InvalidInput(
                    "girth-space domain must lie in the first quadrant".into(),
                ));
            }
        }
    }
    let n_rat = Rat::from_integer(BigInt::from(n_scale));
    let xmax = omega
        .tris
        .iter()
        .flat_map(|t| [&t.u.x, &t.v.x])
        .max()
        .expect("nonempty domain")
        .clone();
    let bound = &xmax * &n_rat;
    let xs = vectors_up_to_girth(f, &bound, VectorClass::All);
    let m_big = BigInt::from(m);

    let count: u64 = xs
        .par_iter()
        .map(|(x, gx)| {
            let g = x.content();
            if !(&m_big % &g).is_zero() {
                return 0u64;
            }
            let e = x.x.extended_gcd(&x.y);
            debug_assert_eq!(e.gcd, g);
            let lam = &m_big / &g;
            // x × y = m: y⁰ = (−e.y·λ, e.x·λ), step x/g
            let y0 = LatticeVec::new(-&e.y * &lam, &e.x * &lam);
            let step = x.primitive();
            let (t1_0, t2_0) = f.cone_coords(&y0.to_rat());
            let (t1_s, t2_s) = f.cone_coords(&step.to_rat());
            let g0 = &t1_0 + &t2_0;
            let gw = &t1_s + &t2_s;
            debug_assert!(gw.is_positive());

            let xi = gx / &n_rat;
            let mut total = 0u64;
            for t in &omega.tris {
                // q-interval of the slice {q : (ξ, q) ∈ T}, then mapped to
                // integer t through [y(t)]/N = (g0 + t·gw)/N
                let mut iv = TInterval::default();
                let w = t.u.to_vec().cross(&t.v.to_vec());
                // α > 0: −V.x·q + ξ·V.y > 0
                iv.add_gt(-&t.v.x, &xi * &t.v.y);
                // β > 0: U.x·q − U.y·ξ > 0
                iv.add_gt(t.u.x.clone(), -(&t.u.y * &xi));
                // α + β <= 1: (U.x − V.x)·q + ξ(V.y − U.y) − W <= 0
                iv.add_le(&t.u.x - &t.v.x, &xi * (&t.v.y - &t.u.y) - &w);
                // in-angle: t1(y), t2(y) >= 0
                iv.add_ge_t(t1_s.clone(), t1_0.clone());
                iv.add_ge_t(t2_s.clone(), t2_0.clone());
                total += iv.count(&g0, &gw, &n_rat);
            }
            total
        })
        .sum();

    let s_f = to_f64(f.doubled_area());
    let zeta2 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
    let mm = m.unsigned_abs();
    let c_m = divisor_sigma(mm) as f64 / (2.0 * zeta2 * mm as f64);
    let prediction =
        c_m * s_f * (n_scale as f64) * (n_scale as f64) * to_f64(&omega.doubled_area());
    Ok(PairCount { m, n: n_scale, count, prediction })
}

/// Rational constraints on the slice variable `q` (strict/nonstrict), plus
/// integer constraints directly on `t`; `q = (g0 + t·gw)/N` with `gw > 0`.
#[derive(Default)]
struct TInterval {
    q_lo: Option<(Rat, bool)>, // (bound, strict)
    q_hi: Option<(Rat, bool)>,
    empty: bool,
    t_lo: Option<BigInt>,
    t_hi: Option<BigInt>,
}

impl TInterval {
    /// `a·q + b > 0`
    fn add_gt(&mut self, a: Rat, b: Rat) {
        if a.is_zero() {
            if !b.is_positive() {
                self.empty = true;
            }
            return;
        }
        let bound = -&b / &a;
        if a.is_positive() {
            self.raise_lo(bound, true);
        } else {
            self.lower_hi(bound, true);
        }
    }

    /// `a·q + b <= 0`
    fn add_le(&mut self, a: Rat, b: Rat) {
        if a.is_zero() {
            if b.is_positive() {
                self.empty = true;
            }
            return;
        }
        let bound = -&b / &a;
        if a.is_positive() {
            self.lower_hi(bound, false);
        } else {
            self.raise_lo(bound, false);
        }
    }

    /// `a·t + b >= 0` directly on `t`
    fn add_ge_t(&mut self, a: Rat, b: Rat) {
        if a.is_zero() {
            if b.is_negative() {
                self.empty = true;
            }
            return;
        }
        let bound = -&b / &a;
        if a.is_positive() {
            let t = bound.ceil().to_integer();
            self.t_lo = Some(self.t_lo.clone().map_or(t.clone(), |c| c.max(t)));
        } else {
            let t = bound.floor().to_integer();
            self.t_hi = Some(self.t_hi.clone().map_or(t.clone(), |c| c.min(t)));
        }
    }

    fn raise_lo(&mut self, bound: Rat, strict: bool) {
        match &self.q_lo {
            Some((b, s)) if *b > bound || (*b == bound && (*s || !strict)) => {}
            _ => self.q_lo = Some((bound, strict)),
        }
    }

    fn lower_hi(&mut self, bound: Rat, strict: bool) {
        match &self.q_hi {
            Some((b, s)) if *b < bound || (*b == bound && (*s || !strict)) => {}
            _ => self.q_hi = Some((bound, strict)),
        }
    }

    /// Number of integers `t` satisfying everything, where `q(t) = (g0 + t·gw)/N`.
    fn count(&self, g0: &Rat, gw: &Rat, n: &Rat) -> u64 {
        if self.empty {
            return 0;
        }
        let mut lo = self.t_lo.clone();
        let mut hi = self.t_hi.clone();
        if let Some((qb, strict)) = &self.q_lo {
            // (g0 + t·gw)/N > qb  (or >=)
            let bound = (qb * n - g0) / gw;
            let t = if *strict {
                bound.floor().to_integer() + 1
            } else {
                bound.ceil().to_integer()
            };
            lo = Some(lo.map_or(t.clone(), |c| c.max(t)));
        }
        if let Some((qb, strict)) = &self.q_hi {
            let bound = (qb * n - g0) / gw;
            let t = if *strict {
                bound.ceil().to_integer() - 1
            } else {
                bound.floor().to_integer()
            };
            hi = Some(hi.map_or(t.clone(), |c| c.min(t)));
        }
        match (lo, hi) {
            (Some(l), Some(h)) if l <= h => ((h - l) + 1u32).to_u64().unwrap_or(0),
            _ => 0,
        }
    }
}

/// Counts translation classes of corner pairs `(u, v) = (PQ, QR)` with both
/// edges in `An ∩ Z²`, `[PR] <= M(n/S)^{1/3}`, doubled area `0 < u×v <= m`,
/// and ABC-radius in the open window `2n/S·(t1, t2)`.
pub fn triangle_census(f: &Frame, n: u64, m: u64, m_girth: f64, t1: f64, t2: f64) -> Result<u64> {
    if !(0.0 < t1 && t1 < t2) {
        return Err(Error::InvalidInput("need 0 < t1 < t2".into()));
    }
    if m == 0 {
        return Err(Error::InvalidInput(
            "m = 0 forces degenerate triangles".into(),
        ));
    }
    let s = f.doubled_area();
    let r_f = m_girth * (n as f64 / to_f64(s)).cbrt();
    let r = rat_from_f64(r_f).ok_or_else(|| Error::InvalidInput("bad girth bound".into()))?;
    if !r.is_positive() {
        return Ok(0);
    }
    let mut vecs = vectors_up_to_girth(f, &r, VectorClass::All);
    sort_by_girth_then_angle(&mut vecs);

    // radius window: A1·c < [u][v][u+v] < A2·c for c = u×v
    let n_rat = Rat::from_integer(BigInt::from(n));
    let four = Rat::from_integer(4.into());
    let a1 = &four * &n_rat * rat_from_f64(t1).unwrap() / s;
    let a2 = &four * &n_rat * rat_from_f64(t2).unwrap() / s;
    let m_big = BigInt::from(m);

    let count = vecs
        .par_iter()
        .enumerate()
        .map(|(i, (u, gu))| {
            let mut local = 0u64;
            let budget = &r - gu;
            for (j, (v, gv)) in vecs.iter().enumerate() {
                if gv > &budget {
                    break;
                }
                if i == j {
                    continue;
                }
                let c = u.cross(v);
                if !c.is_positive() || c > m_big {
                    continue;
                }
                let c_rat = Rat::from_integer(c);
                let product = gu * gv * (gu + gv);
                if &a1 * &c_rat < product && product < &a2 * &c_rat {
                    local += 1;
                }
            }
            local
        })
        .sum();
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn tri(a: i64) -> StarDomain {
        StarDomain::model_triangle(&rat(a, 1)).unwrap()
    }

    #[test]
    fn model_triangle_membership() {
        let t = tri(1);
        assert!(t.contains(&RatPoint::new(rat(1, 2), rat(1, 4))));
        assert!(t.contains(&RatPoint::new(rat(1, 1), rat(1, 2)))); // outer edge included
        assert!(!t.contains(&RatPoint::new(rat(1, 2), rat(0, 1)))); // ray y=0 excluded
        assert!(!t.contains(&RatPoint::new(rat(1, 2), rat(1, 2)))); // ray y=x excluded
        assert!(!t.contains(&RatPoint::new(rat(2, 1), rat(1, 2))));
        assert_eq!(t.doubled_area(), rat(1, 1));
    }

    #[test]
    fn sector_overlap_is_rejected() {
        let bad = StarDomain::new(vec![
            (RatPoint::from_ints(2, 0), RatPoint::from_ints(2, 2)),
            (RatPoint::from_ints(3, 1), RatPoint::from_ints(1, 3)),
        ]);
        assert!(bad.is_err());
        let ok = StarDomain::new(vec![
            (RatPoint::from_ints(2, 0), RatPoint::from_ints(2, 2)),
            (RatPoint::from_ints(2, 2), RatPoint::from_ints(0, 2)),
        ]);
        assert!(ok.is_ok());
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(divisor_sigma(1), 1);
        assert_eq!(divisor_sigma(6), 12);
        assert_eq!(divisor_sigma(12), 28);
    }

    #[test]
    fn point_sets_match_naive_membership() {
        let om = StarDomain::new(vec![
            (RatPoint::from_ints(2, 0), RatPoint::from_ints(2, 1)),
            (RatPoint::new(rat(2, 1), rat(1, 1)), RatPoint::new(rat(1, 1), rat(3, 2))),
        ])
        .unwrap();
        let n = 7;
        let pts = lattice_points_in_domain(&om, n);
        let n_rat = rat(n as i64, 1);
        let mut expected = Vec::new();
        for x in -20..=20i64 {
            for y in -20..=20i64 {
                let p = RatPoint::new(rat(x, 1) / &n_rat, rat(y, 1) / &n_rat);
                if om.contains(&p) {
                    expected.push((x, y));
                }
            }
        }
        let mut got = pts.clone();
        got.sort_unstable();
        expected.sort_unstable();
        assert_eq!(got, expected);
    }

    #[test]
    fn fast_counter_agrees_with_bruteforce_smoke() {
        let om1 = tri(1);
        let om2 = tri(1);
        for n in [3u64, 10, 17] {
            for m in [1i64, 2, -1, 4] {
                assert_eq!(
                    count_pairs_fast(&om1, &om2, m, n),
                    count_pairs_bruteforce(&om1, &om2, m, n),
                    "n={n}, m={m}"
                );
            }
        }
    }

    #[test]
    fn antisymmetry_under_swap_and_negation() {
        let om1 = tri(1);
        let om2 = StarDomain::new(vec![(
            RatPoint::from_ints(1, 1),
            RatPoint::new(rat(1, 2), rat(3, 2)),
        )])
        .unwrap();
        for m in [1i64, 2, 3] {
            assert_eq!(
                count_pairs_fast(&om1, &om2, m, 12),
                count_pairs_fast(&om2, &om1, -m, 12)
            );
        }
    }

    #[test]
    fn chord_profile_of_model_triangle() {
        let t = tri(1);
        let phi = std::f64::consts::PI / 8.0;
        assert!((chord_profile(&t, phi) - 1.0 / phi.cos()).abs() < 1e-12);
        assert_eq!(chord_profile(&t, 1.2), 0.0); // outside angular support
        let t3 = tri(3);
        assert!((chord_profile(&t3, phi) - 3.0 / phi.cos()).abs() < 1e-12);
    }

    #[test]
    fn profile_integral_triangle_case() {
        // the closed form for the model pair is a1·a2
        let i11 = profile_integral(&tri(1), &tri(1), 1e-10);
        assert!((i11 - 1.0).abs() < 1e-8, "integral = {i11}");
        let i23 = profile_integral(&tri(2), &tri(3), 1e-10);
        assert!((i23 - 6.0).abs() < 1e-7, "integral = {i23}");
        // disjoint angular supports
        let up = StarDomain::new(vec![(
            RatPoint::from_ints(0, 1),
            RatPoint::from_ints(-1, 1),
        )])
        .unwrap();
        assert!(profile_integral(&tri(1), &up, 1e-10).abs() < 1e-12);
    }

    #[test]
    fn prediction_scales() {
        let p1 = prediction(&tri(1), &tri(1), 1, 100);
        let expected = 6.0 / (std::f64::consts::PI * std::f64::consts::PI) * 1e4;
        assert!((p1 - expected).abs() < 1e-3 * expected);
        assert_eq!(
            prediction(&tri(1), &tri(1), 1, 100),
            prediction(&tri(1), &tri(1), -1, 100)
        );
        let p2 = prediction(&tri(1), &tri(2), 1, 100);
        assert!((p2 - 2.0 * p1).abs() < 1e-6 * p2);
    }

    #[test]
    fn special_points_smoke() {
        let f = Frame::unit();
        let omega = StarDomain::new(vec![
            (RatPoint::from_ints(1, 1), RatPoint::new(rat(1, 2), rat(1, 1))),
        ])
        .unwrap();
        let pc = special_point_count(&f, 1, 30, &omega).unwrap();
        // brute-force the same count over vector pairs
        let r = rat(40, 1);
        let xs = vectors_up_to_girth(&f, &r, VectorClass::All);
        let n_rat = rat(30, 1);
        let mut expected = 0u64;
        for (x, gx) in &xs {
            for (y, gy) in &xs {
                if x.cross(y) == BigInt::from(1)
                    && omega.contains(&RatPoint::new(gx / &n_rat, gy / &n_rat))
                {
                    expected += 1;
                }
            }
        }
        assert_eq!(pc.count, expected);
        assert!(pc.prediction > 0.0);
    }

    #[test]
    fn special_points_in_an_unreachable_domain() {
        // a sliver far from any girth pair of the coarse lattice: no hits
        let f = Frame::unit();
        let omega = StarDomain::new(vec![(
            RatPoint::new(rat(1, 1), rat(1, 100)),
            RatPoint::new(rat(1, 1), rat(2, 100)),
        )])
        .unwrap();
        let pc = special_point_count(&f, 1, 1, &omega).unwrap();
        assert_eq!(pc.count, 0);
    }

    #[test]
    fn census_window_shrinks_to_zero() {
        let f = Frame::unit();
        let c_wide = triangle_census(&f, 500, 2, 2.0, 0.5, 2.0).unwrap();
        let c_narrow = triangle_census(&f, 500, 2, 2.0, 0.9, 1.1).unwrap();
        let c_tiny = triangle_census(&f, 500, 2, 2.0, 0.999, 1.001).unwrap();
        assert!(c_narrow <= c_wide);
        assert!(c_tiny <= c_narrow);
        assert!(triangle_census(&f, 500, 2, 2.0, 1.0, 0.5).is_err());
        assert!(triangle_census(&f, 500, 0, 2.0, 0.5, 2.0).is_err());
    }
}
