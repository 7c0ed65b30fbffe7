//! Hyperbolic geometry in the hyperboloid model.
//!
//! The crate is `no_std` (it needs `alloc`). It covers the angle of
//! parallelism and the classification of lines, horocycles and horospheres
//! with their flat charts, right-triangle identities of hyperbolic and
//! spherical trigonometry, a small registry of spaces and maps between
//! them, disk projections, figure scenes and seeded verification suites.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod figures;
pub mod horosphere;
pub mod minkowski;
pub mod parallels;
pub mod projection;
pub mod sample;
pub mod sphere;
pub mod tol;
pub mod trig;
pub mod units;
pub mod verify;

pub use error::{GeomError, Result};
pub use minkowski::{Curvature, Geodesic, HPoint, IdealPoint, MVec};
