//! Versioned JSON representations of the structured artifacts.
//!
//! Exact rationals serialize as `{num, den}` pairs of decimal strings, so
//! readers never face integer-width surprises. The schema documents live in
//! `schemas/` at the repository root; `schema_version` is bumped on any
//! incompatible change.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chain::BrokenLine;
use crate::curve::{Curve, Stage};
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::geometry::{LatticeVec, RatPoint};
use crate::num::Rat;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatJson {
    pub num: String,
    pub den: String,
}

impl RatJson {
    pub fn from_rat(r: &Rat) -> RatJson {
        RatJson { num: r.numer().to_string(), den: r.denom().to_string() }
    }

    pub fn to_rat(&self) -> Result<Rat> {
        let num = BigInt::from_str(&self.num)
            .map_err(|e| Error::InvalidInput(format!("bad numerator: {e}")))?;
        let den = BigInt::from_str(&self.den)
            .map_err(|e| Error::InvalidInput(format!("bad denominator: {e}")))?;
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(Rat::new(num, den))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointJson {
    pub x: RatJson,
    pub y: RatJson,
}

impl PointJson {
    pub fn from_point(p: &RatPoint) -> PointJson {
        PointJson { x: RatJson::from_rat(&p.x), y: RatJson::from_rat(&p.y) }
    }

    pub fn to_point(&self) -> Result<RatPoint> {
        Ok(RatPoint::new(self.x.to_rat()?, self.y.to_rat()?))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeVecJson {
    pub x: String,
    pub y: String,
}

impl LatticeVecJson {
    pub fn from_vec(v: &LatticeVec) -> LatticeVecJson {
        LatticeVecJson { x: v.x.to_string(), y: v.y.to_string() }
    }

    pub fn to_vec(&self) -> Result<LatticeVec> {
        let x = BigInt::from_str(&self.x)
            .map_err(|e| Error::InvalidInput(format!("bad x: {e}")))?;
        let y = BigInt::from_str(&self.y)
            .map_err(|e| Error::InvalidInput(format!("bad y: {e}")))?;
        Ok(LatticeVec { x, y })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameJson {
    pub a: PointJson,
    pub b: PointJson,
    pub c: PointJson,
}

impl FrameJson {
    pub fn from_frame(f: &Frame) -> FrameJson {
        FrameJson {
            a: PointJson::from_point(f.a()),
            b: PointJson::from_point(f.b()),
            c: PointJson::from_point(f.c()),
        }
    }

    pub fn to_frame(&self) -> Result<Frame> {
        Frame::new(self.a.to_point()?, self.b.to_point()?, self.c.to_point()?)
    }
}

/// A broken line with its frame and certificate data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BrokenLineJson {
    pub schema_version: u32,
    pub frame: FrameJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    pub vertices: Vec<PointJson>,
    pub intermediate_count: u64,
}

impl BrokenLineJson {
    pub fn from_line(line: &BrokenLine) -> BrokenLineJson {
        BrokenLineJson {
            schema_version: SCHEMA_VERSION,
            frame: FrameJson::from_frame(line.frame()),
            n: line.lattice_density(),
            vertices: line.vertices().iter().map(PointJson::from_point).collect(),
            intermediate_count: line.intermediate_count() as u64,
        }
    }

    pub fn to_line(&self) -> Result<BrokenLine> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported schema version {}",
                self.schema_version
            )));
        }
        let frame = self.frame.to_frame()?;
        let vertices: Result<Vec<RatPoint>> =
            self.vertices.iter().map(PointJson::to_point).collect();
        Ok(BrokenLine::from_vertices(frame, vertices?, self.n))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StageJson {
    pub q: u64,
    pub c: f64,
    pub certified_count: u64,
    pub frame: FrameJson,
    pub chain_vertices: Vec<PointJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveJson {
    pub schema_version: u32,
    pub stages: Vec<StageJson>,
    pub global_vertices: Vec<PointJson>,
}

impl CurveJson {
    pub fn from_curve(curve: &Curve) -> CurveJson {
        CurveJson {
            schema_version: SCHEMA_VERSION,
            stages: curve
                .stages
                .iter()
                .map(|s| StageJson {
                    q: s.q,
                    c: s.c,
                    certified_count: s.certified_count,
                    frame: FrameJson::from_frame(&s.frame),
                    chain_vertices: s.chain.vertices().iter().map(PointJson::from_point).collect(),
                })
                .collect(),
            global_vertices: curve
                .global_vertices
                .iter()
                .map(PointJson::from_point)
                .collect(),
        }
    }

    /// Rebuilds the curve, re-verifying every chain and every certificate.
    pub fn to_curve(&self) -> Result<Curve> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidInput(format!(
                "unsupported schema version {}",
                self.schema_version
            )));
        }
        let mut stages = Vec::with_capacity(self.stages.len());
        for (i, s) in self.stages.iter().enumerate() {
            let frame = s.frame.to_frame()?;
            let vertices: Result<Vec<RatPoint>> =
                s.chain_vertices.iter().map(PointJson::to_point).collect();
            let chain = BrokenLine::from_vertices(frame.clone(), vertices?, Some(s.q));
            chain.verify().map_err(|v| {
                Error::InvalidInput(format!("stage {i} chain invalid: {v}"))
            })?;
            stages.push(Stage {
                frame,
                chain,
                q: s.q,
                c: s.c,
                certified_count: s.certified_count,
            });
        }
        let global_vertices: Result<Vec<RatPoint>> =
            self.global_vertices.iter().map(PointJson::to_point).collect();
        let curve = Curve { stages, global_vertices: global_vertices? };
        curve.check_certificates()?;
        Ok(curve)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuitableTriangleJson {
    pub schema_version: u32,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<LatticeVecJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<LatticeVecJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub apex_angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergent_index: Option<usize>,
}

impl SuitableTriangleJson {
    pub fn not_found() -> SuitableTriangleJson {
        SuitableTriangleJson {
            schema_version: SCHEMA_VERSION,
            found: false,
            a: None,
            b: None,
            side_ratio: None,
            apex_angle: None,
            convergent_index: None,
        }
    }

    pub fn from_suitable(s: &crate::cf::SuitableTriangle) -> SuitableTriangleJson {
        SuitableTriangleJson {
            schema_version: SCHEMA_VERSION,
            found: true,
            a: Some(LatticeVecJson::from_vec(s.triangle.a())),
            b: Some(LatticeVecJson::from_vec(s.triangle.b())),
            side_ratio: Some(s.side_ratio),
            apex_angle: Some(s.apex_angle),
            convergent_index: Some(s.convergent_index),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::build_chain;
    use crate::curve::{synthesize, Admissible};

    #[test]
    fn broken_line_round_trips() {
        let f = Frame::unit();
        let line = build_chain(&f, 2000, 0.05).unwrap();
        let json = BrokenLineJson::from_line(&line);
        let text = serde_json::to_string(&json).unwrap();
        let back: BrokenLineJson = serde_json::from_str(&text).unwrap();
        let line2 = back.to_line().unwrap();
        assert_eq!(line.vertices(), line2.vertices());
        assert_eq!(line2.verify(), Ok(()));
    }

    #[test]
    fn curve_round_trips_with_verification() {
        let curve = synthesize(&[0.5, 0.25], &Admissible::All, 2).unwrap();
        let json = CurveJson::from_curve(&curve);
        let text = serde_json::to_string_pretty(&json).unwrap();
        let back: CurveJson = serde_json::from_str(&text).unwrap();
        let curve2 = back.to_curve().unwrap();
        assert_eq!(curve.global_vertices, curve2.global_vertices);
    }

    #[test]
    fn tampered_curves_are_rejected() {
        let curve = synthesize(&[0.5], &Admissible::All, 1).unwrap();
        let mut json = CurveJson::from_curve(&curve);
        json.stages[0].certified_count *= 100;
        assert!(json.to_curve().is_err());
    }
}
