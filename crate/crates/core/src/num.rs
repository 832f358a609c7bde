//! Small helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

/// `p/q` from machine integers.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Exact rational value of a finite `f64`.
///
/// Every finite double is a dyadic rational, so no rounding is involved.
pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_float(x)
}

/// Rounds to the nearest `f64`. Fine for display and for feeding cube roots;
/// never used inside exact predicates.
pub fn to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Cube root of the `f64` image of an exact rational.
pub fn cbrt(x: &Rat) -> f64 {
    to_f64(x).cbrt()
}

/// Largest integer `<= x`.
pub fn floor_int(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

/// Smallest integer `>= x`.
pub fn ceil_int(x: &Rat) -> BigInt {
    x.ceil().to_integer()
}

/// Parses `p/q`, a plain integer, or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rat::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        if frac.is_empty() {
            return Some(Rat::from_integer(int_part));
        }
        let digits: BigInt = frac.parse().ok()?;
        if digits.is_negative() {
            return None;
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = Rat::new(digits, scale);
        let whole = Rat::from_integer(int_part);
        return Some(if neg { whole - frac_part } else { whole + frac_part });
    }
    let p: BigInt = s.parse().ok()?;
    Some(Rat::from_integer(p))
}

/// Renders an exact rational as `p` or `p/q`.
pub fn format_rational(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 2 / 6 ").unwrap(), rat(1, 3));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&rat(4, 2)), "2");
        assert_eq!(format_rational(&rat(-3, 9)), "-1/3");
    }
}
