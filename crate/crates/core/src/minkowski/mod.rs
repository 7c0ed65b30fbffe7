//! The hyperboloid model of H² and H³ with curvature radius r.

mod geodesic;
mod isometry;
mod point;
mod vector;

pub use geodesic::{angle_at, angle_between, drop_perpendicular, Foot, Geodesic};
pub use isometry::Isometry;
pub use point::{distance, Curvature, HPoint, IdealPoint, Tangent};
pub use vector::{det, mdot, MVec};

pub(crate) use vector::{complete_basis, reject};
