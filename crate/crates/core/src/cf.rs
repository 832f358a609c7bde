//! Continued fractions, basic triangles and the noses stretch.
//!
//! A *basic* triangle has the origin as one vertex, integer vertices `A`,
//! `B` and doubled area 1. Consecutive continued-fraction convergents
//! `(q_k, p_k)`, `(q_{k+1}, p_{k+1})` of a slope `α` span basic triangles
//! whose outer edge crosses the ray `y = αx`; stretching the long side by
//! repeatedly adding the short one walks the crossing into nearly isoceles,
//! sharp-apex triangles. Ray sign tests are exact (interval slopes with
//! rational endpoints); only the metric suitability conditions use floats.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::LatticeVec;
use crate::num::{rat_from_f64, Rat};

/// The ray `y = αx`, `x > 0`, with the slope known to lie in `[lo, hi]`.
/// Exact rational slopes have `lo == hi`.
#[derive(Debug, Clone)]
pub struct Ray {
    lo: Rat,
    hi: Rat,
}

impl Ray {
    pub fn exact(alpha: Rat) -> Result<Ray> {
        if !alpha.is_positive() {
            return Err(Error::InvalidInput("slope must be positive".into()));
        }
        Ok(Ray { lo: alpha.clone(), hi: alpha })
    }

    /// Wraps a double with a one-ulp uncertainty interval, so downstream
    /// sign tests never silently trust the last bits.
    pub fn from_f64(alpha: f64) -> Result<Ray> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidInput("slope must be positive and finite".into()));
        }
        let a = rat_from_f64(alpha).ok_or_else(|| Error::InvalidInput("bad slope".into()))?;
        let u = rat_from_f64((alpha * f64::EPSILON).abs().max(f64::MIN_POSITIVE))
            .expect("finite ulp");
        let lo = &a - &u;
        if !lo.is_positive() {
            return Err(Error::InvalidInput("slope too close to zero".into()));
        }
        Ok(Ray { lo, hi: a + u })
    }

    pub fn bounds(&self) -> (&Rat, &Rat) {
        (&self.lo, &self.hi)
    }

    /// `+1` strictly above the ray line, `-1` strictly below, `None` when on
    /// it or not decidable within the slope interval.
    pub fn side_of(&self, v: &LatticeVec) -> Option<i8> {
        let x = Rat::from_integer(v.x.clone());
        let y = Rat::from_integer(v.y.clone());
        let lo = &self.lo * &x;
        let hi = &self.hi * &x;
        let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        if y > hi {
            Some(1)
        } else if y < lo {
            Some(-1)
        } else {
            None
        }
    }
}

/// A lattice triangle `O A B` of doubled area 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicTriangle {
    a: LatticeVec,
    b: LatticeVec,
}

impl BasicTriangle {
    pub fn new(a: LatticeVec, b: LatticeVec) -> Result<BasicTriangle> {
        if a.cross(&b).abs() != BigInt::one() {
            return Err(Error::InvalidInput("doubled area must be 1".into()));
        }
        Ok(BasicTriangle { a, b })
    }

    pub fn a(&self) -> &LatticeVec {
        &self.a
    }

    pub fn b(&self) -> &LatticeVec {
        &self.b
    }

    /// Euclidean side ratio `min(|OA|,|OB|) / max(|OA|,|OB|)` in `(0, 1]`.
    pub fn side_ratio(&self) -> f64 {
        let na = norm(&self.a);
        let nb = norm(&self.b);
        na.min(nb) / na.max(nb)
    }

    /// Apex angle at the origin, radians.
    pub fn apex_angle(&self) -> f64 {
        let dot = to_f64_prod(&self.a.x, &self.b.x) + to_f64_prod(&self.a.y, &self.b.y);
        // |OA × OB| = 1 for a basic triangle
        1.0f64.atan2(dot)
    }

    /// Does the open ray pass through the triangle's interior? Exact: the
    /// ray from the origin meets the interior iff `A` and `B` lie strictly
    /// on opposite sides of the ray line (both in the right half-plane).
    pub fn ray_crosses_interior(&self, ray: &Ray) -> bool {
        if self.a.x.is_negative() || self.b.x.is_negative() {
            return false;
        }
        matches!(
            (ray.side_of(&self.a), ray.side_of(&self.b)),
            (Some(sa), Some(sb)) if sa != sb
        )
    }
}

fn norm(v: &LatticeVec) -> f64 {
    let x = v.x.to_f64().unwrap_or(f64::MAX);
    let y = v.y.to_f64().unwrap_or(f64::MAX);
    x.hypot(y)
}

fn to_f64_prod(a: &BigInt, b: &BigInt) -> f64 {
    (a * b).to_f64().unwrap_or(f64::MAX)
}

/// Partial quotients and convergents of a slope in `(0, 1)`:
/// `α = 1/(a₁ + 1/(a₂ + …))`, convergents `(p_k, q_k)` from `k = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub quotients: Vec<BigInt>,
    pub convergents: Vec<(BigInt, BigInt)>,
}

enum ExpandStop {
    /// Rational input fully expanded.
    Terminated,
    /// Requested depth reached.
    Depth,
    /// The slope interval no longer determines the next quotient.
    Ambiguous,
}

fn expand_state(ray: &Ray, depth: usize) -> (ContinuedFraction, ExpandStop) {
    let mut lo = ray.lo.clone();
    let mut hi = ray.hi.clone();
    let mut quotients = Vec::new();
    let mut convergents = Vec::new();
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p_cur, mut q_cur) = (BigInt::zero(), BigInt::one());
    loop {
        if quotients.len() == depth {
            return (ContinuedFraction { quotients, convergents }, ExpandStop::Depth);
        }
        if hi.is_zero() {
            return (ContinuedFraction { quotients, convergents }, ExpandStop::Terminated);
        }
        if !lo.is_positive() {
            // the interval does not exclude termination here
            return (ContinuedFraction { quotients, convergents }, ExpandStop::Ambiguous);
        }
        // x = 1/α ∈ [1/hi, 1/lo]
        let x_lo = hi.recip();
        let x_hi = lo.recip();
        let a = x_lo.floor().to_integer();
        if x_hi >= Rat::from_integer(&a + 1) {
            return (ContinuedFraction { quotients, convergents }, ExpandStop::Ambiguous);
        }
        let a_rat = Rat::from_integer(a.clone());
        let new_lo = &x_lo - &a_rat;
        let new_hi = &x_hi - &a_rat;
        lo = new_lo;
        hi = new_hi;
        let p_next = &a * &p_cur + &p_prev;
        let q_next = &a * &q_cur + &q_prev;
        quotients.push(a);
        convergents.push((p_next.clone(), q_next.clone()));
        (p_prev, q_prev) = (p_cur, q_cur);
        (p_cur, q_cur) = (p_next, q_next);
    }
}

/// Expands a slope in `(0, 1)` to at most `depth` partial quotients.
/// Rational slopes terminate exactly; interval slopes fail with a
/// precision error once the next quotient is no longer determined.
pub fn cf_expand(ray: &Ray, depth: usize) -> Result<ContinuedFraction> {
    if ray.hi >= Rat::one() {
        return Err(Error::InvalidInput("slope must be below 1".into()));
    }
    let (cf, stop) = expand_state(ray, depth);
    match stop {
        ExpandStop::Ambiguous => Err(Error::PrecisionExhausted { safe_depth: cf.quotients.len() }),
        _ => Ok(cf),
    }
}

/// Walks the fan `B_i = B + i·A` until the open segment `B_{i-1} B_i`
/// crosses the ray, and returns the basic triangle `O B_{i-1} B_i`. The
/// crossing index is solved directly; `A` and `B` must lie strictly on
/// opposite sides of the ray.
pub fn noses_stretch(a: &LatticeVec, b: &LatticeVec, ray: &Ray) -> Result<BasicTriangle> {
    if a.cross(b).abs() != BigInt::one() {
        return Err(Error::InvalidInput("input triangle is not basic".into()));
    }
    if a.x.is_negative() || b.x.is_negative() {
        return Err(Error::InvalidInput("fan must lie in the right half-plane".into()));
    }
    let (sa, sb) = match (ray.side_of(a), ray.side_of(b)) {
        (Some(sa), Some(sb)) => (sa, sb),
        _ => return Err(Error::NoCrossing),
    };
    if sa == sb {
        return Err(Error::NoCrossing);
    }
    // f(i) = y_b + i·y_a − α(x_b + i·x_a) changes sign at
    // i* = (α·x_b − y_b) / (y_a − α·x_a); both factors keep a fixed sign
    // over the slope interval.
    let xa = Rat::from_integer(a.x.clone());
    let ya = Rat::from_integer(a.y.clone());
    let xb = Rat::from_integer(b.x.clone());
    let yb = Rat::from_integer(b.y.clone());
    let mut lo_i: Option<Rat> = None;
    let mut hi_i: Option<Rat> = None;
    for alpha in [&ray.lo, &ray.hi] {
        for beta in [&ray.lo, &ray.hi] {
            let num = alpha * &xb - &yb;
            let den = &ya - beta * &xa;
            let q = num / den;
            lo_i = Some(lo_i.map_or(q.clone(), |c: Rat| c.min(q.clone())));
            hi_i = Some(hi_i.map_or(q.clone(), |c: Rat| c.max(q)));
        }
    }
    let (lo_i, hi_i) = (lo_i.unwrap(), hi_i.unwrap());
    if !lo_i.is_positive() {
        return Err(Error::NoCrossing);
    }
    if lo_i.is_integer() && lo_i == hi_i {
        return Err(Error::Configuration("ray passes through a lattice node".into()));
    }
    let f_lo = lo_i.floor().to_integer();
    let f_hi = hi_i.floor().to_integer();
    if f_lo != f_hi {
        return Err(Error::Construction(
            "slope interval too wide to locate the crossing segment".into(),
        ));
    }
    let i = f_lo + 1;
    let prev = LatticeVec::new(&b.x + (&i - 1) * &a.x, &b.y + (&i - 1) * &a.y);
    let next = LatticeVec::new(&b.x + &i * &a.x, &b.y + &i * &a.y);
    let tri = BasicTriangle::new(prev, next).expect("stretch preserves the basic area");
    debug_assert!(tri.ray_crosses_interior(ray));
    Ok(tri)
}

/// A triangle passing the ε-suitability conditions, with its metrics.
#[derive(Debug, Clone)]
pub struct SuitableTriangle {
    pub triangle: BasicTriangle,
    pub side_ratio: f64,
    pub apex_angle: f64,
    /// Index of the convergent pair that produced it.
    pub convergent_index: usize,
}

/// Searches for a basic triangle whose interior meets the ray, with side
/// ratio within `eps` of 1 and apex angle below `eps`. Scans convergent
/// pairs with denominators up to `search_bound`, testing the raw pair and
/// both stretch directions. `None` when nothing qualifies within the bound.
pub fn find_suitable(ray: &Ray, eps: f64, search_bound: u64) -> Result<Option<SuitableTriangle>> {
    if !(0.0 < eps && eps < 1.0) {
        return Err(Error::InvalidInput("eps must be in (0, 1)".into()));
    }
    if ray.hi >= Rat::one() {
        return Err(Error::InvalidInput("slope must be below 1".into()));
    }
    let (cf, _) = expand_state(ray, 300);
    // prepend the 0th convergent 0/1 so the very first fan participates
    let mut points: Vec<LatticeVec> = vec![LatticeVec::new(1, 0)];
    points.extend(
        cf.convergents
            .iter()
            .map(|(p, q)| LatticeVec::new(q.clone(), p.clone())),
    );
    let bound = BigInt::from(search_bound);

    for k in 0..points.len().saturating_sub(1) {
        let a = &points[k];
        let b = &points[k + 1];
        if b.x > bound {
            break;
        }
        let mut candidates: Vec<BasicTriangle> = Vec::new();
        if let Ok(t) = BasicTriangle::new(a.clone(), b.clone()) {
            candidates.push(t);
        }
        if let Ok(t) = noses_stretch(a, b, ray) {
            candidates.push(t);
        }
        if let Ok(t) = noses_stretch(b, a, ray) {
            candidates.push(t);
        }
        for tri in candidates {
            if !tri.ray_crosses_interior(ray) {
                continue;
            }
            let ratio = tri.side_ratio();
            let angle = tri.apex_angle();
            if 1.0 - ratio < eps && angle < eps {
                return Ok(Some(SuitableTriangle {
                    triangle: tri,
                    side_ratio: ratio,
                    apex_angle: angle,
                    convergent_index: k,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn expands_rationals_exactly() {
        let ray = Ray::exact(rat(2, 5)).unwrap();
        let cf = cf_expand(&ray, 10).unwrap();
        assert_eq!(cf.quotients, vec![BigInt::from(2), BigInt::from(2)]);
        assert_eq!(
            cf.convergents,
            vec![
                (BigInt::from(1), BigInt::from(2)),
                (BigInt::from(2), BigInt::from(5)),
            ]
        );
    }

    #[test]
    fn golden_ratio_conjugate_is_all_ones() {
        let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
        let ray = Ray::from_f64(phi).unwrap();
        let cf = cf_expand(&ray, 20).unwrap();
        assert!(cf.quotients.iter().all(|a| *a == BigInt::one()));
        // convergent denominators are Fibonacci numbers
        let q: Vec<u64> = cf
            .convergents
            .iter()
            .map(|(_, q)| q.to_u64().unwrap())
            .collect();
        assert_eq!(&q[..6], &[1, 2, 3, 5, 8, 13]);
    }

    #[test]
    fn interval_expansion_stops_before_lying() {
        let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
        let ray = Ray::from_f64(phi).unwrap();
        // far beyond the precision of one double
        match cf_expand(&ray, 200) {
            Err(Error::PrecisionExhausted { safe_depth }) => {
                assert!((20..200).contains(&safe_depth));
            }
            other => panic!("expected precision exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn consecutive_convergents_are_unimodular() {
        let ray = Ray::exact(rat(355, 1130)).unwrap(); // π/10-ish rational
        let cf = cf_expand(&ray, 30).unwrap();
        for w in cf.convergents.windows(2) {
            let det = &w[0].0 * &w[1].1 - &w[1].0 * &w[0].1;
            assert_eq!(det.abs(), BigInt::one());
        }
        let qs: Vec<_> = cf.convergents.iter().map(|(_, q)| q.clone()).collect();
        for w in qs.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn stretch_returns_basic_crossing_triangle() {
        let ray = Ray::exact(rat(2, 7)).unwrap();
        let a = LatticeVec::new(1, 0);
        let b = LatticeVec::new(1, 1);
        let tri = noses_stretch(&a, &b, &ray).unwrap();
        assert_eq!(tri.a().cross(tri.b()).abs(), BigInt::one());
        assert!(tri.ray_crosses_interior(&ray));
        // 2/7 lies between y/x slopes of the returned pair
        let slope = |v: &LatticeVec| rat(v.y.to_i64().unwrap(), v.x.to_i64().unwrap());
        let (s1, s2) = (slope(tri.a()), slope(tri.b()));
        let (lo, hi) = if s1 < s2 { (s1, s2) } else { (s2, s1) };
        assert!(lo < rat(2, 7) && rat(2, 7) < hi);
    }

    #[test]
    fn stretch_crossing_index_is_monotone_in_slope() {
        let a = LatticeVec::new(1, 0);
        let b = LatticeVec::new(1, 1);
        // smaller slope => the crossing happens deeper along the fan
        let mut last_x = BigInt::zero();
        for denom in [7i64, 9, 11, 15] {
            let ray = Ray::exact(rat(2, denom)).unwrap();
            let tri = noses_stretch(&a, &b, &ray).unwrap();
            assert!(tri.b().x >= last_x);
            last_x = tri.b().x.clone();
        }
    }

    #[test]
    fn stretch_rejects_bad_input() {
        let ray = Ray::exact(rat(1, 2)).unwrap();
        assert!(noses_stretch(&LatticeVec::new(2, 0), &LatticeVec::new(0, 1), &ray).is_err());
        // both on the same side
        assert!(matches!(
            noses_stretch(&LatticeVec::new(1, 1), &LatticeVec::new(2, 3), &ray),
            Err(Error::NoCrossing)
        ));
        // ray through a node of the segment fan
        let hit = Ray::exact(rat(1, 3)).unwrap();
        let r = noses_stretch(&LatticeVec::new(1, 0), &LatticeVec::new(1, 1), &hit);
        assert!(r.is_err());
    }

    #[test]
    fn finds_suitable_triangle_for_inverse_sqrt2() {
        let ray = Ray::from_f64(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        let found = find_suitable(&ray, 0.3, 1_000_000).unwrap();
        let s = found.expect("1/sqrt(2) admits suitable triangles via stretching");
        assert_eq!(s.triangle.a().cross(s.triangle.b()).abs(), BigInt::one());
        assert!(1.0 - s.side_ratio < 0.3);
        assert!(s.apex_angle < 0.3);
        assert!(s.triangle.ray_crosses_interior(&ray));
    }
}
