//! Parsers for the command-line mini-grammars: frames, star domains,
//! slopes, series and admissible sets.

use lcl_core::cf::Ray;
use lcl_core::curve::Admissible;
use lcl_core::equidist::StarDomain;
use lcl_core::geometry::RatPoint;
use lcl_core::num::{parse_rational, Rat};
use lcl_core::Frame;

/// `Ax,Ay,Bx,By,Cx,Cy` with rational coordinates.
pub fn parse_frame(s: &str) -> Result<Frame, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 6 {
        return Err(format!("frame needs 6 coordinates, got {}", parts.len()));
    }
    let mut vals = Vec::with_capacity(6);
    for p in &parts {
        vals.push(parse_rational(p).ok_or_else(|| format!("bad coordinate {p:?}"))?);
    }
    let a = RatPoint::new(vals[0].clone(), vals[1].clone());
    let b = RatPoint::new(vals[2].clone(), vals[3].clone());
    let c = RatPoint::new(vals[4].clone(), vals[5].clone());
    Frame::new(a, b, c).map_err(|e| e.to_string())
}

/// `tri:a` for the model triangle `{0 < y < x <= a}`, or
/// `poly:x1,y1;x2,y2;…` for an origin-star fan over the listed points.
pub fn parse_domain(s: &str) -> Result<StarDomain, String> {
    if let Some(a) = s.strip_prefix("tri:") {
        let a = parse_rational(a).ok_or_else(|| format!("bad triangle scale {a:?}"))?;
        return StarDomain::model_triangle(&a).map_err(|e| e.to_string());
    }
    if let Some(rest) = s.strip_prefix("poly:") {
        let mut points = Vec::new();
        for chunk in rest.split(';') {
            let (x, y) = chunk
                .split_once(',')
                .ok_or_else(|| format!("bad fan point {chunk:?}"))?;
            let x = parse_rational(x).ok_or_else(|| format!("bad coordinate {x:?}"))?;
            let y = parse_rational(y).ok_or_else(|| format!("bad coordinate {y:?}"))?;
            points.push(RatPoint::new(x, y));
        }
        return StarDomain::fan(&points).map_err(|e| e.to_string());
    }
    Err(format!("unknown domain spec {s:?}; use tri:a or poly:…"))
}

/// A slope in `(0, 1)`: exact rationals stay exact, decimals too; anything
/// else is rejected rather than silently rounded.
pub fn parse_ray(s: &str) -> Result<Ray, String> {
    let alpha = parse_rational(s).ok_or_else(|| format!("bad slope {s:?}"))?;
    if !(alpha > Rat::from_integer(0.into()) && alpha < Rat::from_integer(1.into())) {
        return Err("slope must lie strictly between 0 and 1".into());
    }
    Ray::exact(alpha).map_err(|e| e.to_string())
}

/// `geometric:R` (terms R, R², …) or `list:c1,c2,…`.
pub fn parse_series(s: &str, stages: usize) -> Result<Vec<f64>, String> {
    if let Some(r) = s.strip_prefix("geometric:") {
        let r: f64 = r.parse().map_err(|_| format!("bad ratio {r:?}"))?;
        if !(r > 0.0 && r < 1.0) {
            return Err("geometric ratio must lie in (0, 1)".into());
        }
        let mut out = Vec::with_capacity(stages);
        let mut term = r;
        for _ in 0..stages {
            out.push(term);
            term *= r;
        }
        return Ok(out);
    }
    if let Some(rest) = s.strip_prefix("list:") {
        let terms: Result<Vec<f64>, _> = rest.split(',').map(str::parse::<f64>).collect();
        let terms = terms.map_err(|e| format!("bad series list: {e}"))?;
        if terms.len() < stages {
            return Err(format!("series list has {} terms, need {stages}", terms.len()));
        }
        return Ok(terms);
    }
    Err(format!("unknown series spec {s:?}; use geometric:R or list:…"))
}

/// `all` or `list:q1,q2,…`.
pub fn parse_admissible(s: &str) -> Result<Admissible, String> {
    if s == "all" {
        return Ok(Admissible::All);
    }
    if let Some(rest) = s.strip_prefix("list:") {
        let qs: Result<Vec<u64>, _> = rest.split(',').map(str::parse::<u64>).collect();
        return Ok(Admissible::List(qs.map_err(|e| format!("bad admissible list: {e}"))?));
    }
    Err(format!("unknown admissible spec {s:?}; use all or list:…"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_frames() {
        let f = parse_frame("0,0,0,1,1,0").unwrap();
        assert_eq!(*f.doubled_area(), Rat::from_integer(1.into()));
        assert!(parse_frame("0,0,1,1").is_err());
        assert!(parse_frame("0,0,1,1,2,2").is_err()); // collinear
        assert!(parse_frame("1/2,0,0,1,x,0").is_err());
    }

    #[test]
    fn parses_domains() {
        assert!(parse_domain("tri:1").is_ok());
        assert!(parse_domain("tri:3/2").is_ok());
        assert!(parse_domain("poly:2,0;2,2;0,2").is_ok());
        assert!(parse_domain("disc:1").is_err());
    }

    #[test]
    fn parses_series_and_admissible() {
        assert_eq!(parse_series("geometric:0.5", 3).unwrap(), vec![0.5, 0.25, 0.125]);
        assert_eq!(parse_series("list:0.5,0.3,0.2", 2).unwrap().len(), 3);
        assert!(parse_series("geometric:1.5", 2).is_err());
        assert!(matches!(parse_admissible("all").unwrap(), Admissible::All));
        assert!(matches!(parse_admissible("list:4,9,25").unwrap(), Admissible::List(_)));
        assert!(parse_admissible("odd").is_err());
    }
}
