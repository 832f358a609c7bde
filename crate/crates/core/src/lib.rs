//! Exact lattice geometry of convex curves.
//!
//! Everything is built around a fixed oriented triangle ("frame") and the
//! girth functional it induces on vectors. On top of that sit:
//!
//! * [`geometry`] — exact integer/rational planar primitives,
//! * [`frame`] — frames, girths, angle membership, triangle radii,
//! * [`enumeration`] — integer vectors of the frame angle ordered by girth,
//! * [`chain`] — convex broken lines on a shallow lattice and the
//!   girth-greedy extremal construction,
//! * [`kgon`] — minimal-area convex lattice polygon search,
//! * [`affine`] — generalized affine length of broken lines,
//! * [`equidist`] — counting vector pairs with a fixed pseudoscalar product,
//! * [`cf`] — continued fractions, basic triangles, noses stretch,
//! * [`curve`] — multi-stage convex curves carrying many lattice points.
//!
//! All geometric predicates are decided in exact rational arithmetic;
//! floating point enters only through cube roots, metric (Euclidean)
//! quantities and quadrature. The `book/` directory of the repository walks
//! through the concepts chapter by chapter; its code snippets compile
//! against this crate and run as doc-tests.

pub mod affine;
pub mod cf;
pub mod chain;
pub mod curve;
pub mod enumeration;
pub mod equidist;
pub mod error;
pub mod frame;
pub mod geometry;
pub mod jsonio;
pub mod kgon;
pub mod num;

pub use error::Error;
pub use frame::Frame;
pub use geometry::{LatticeVec, RatPoint, RatVec};
pub use num::{parse_rational, Rat};

#[cfg(doctest)]
mod book;
