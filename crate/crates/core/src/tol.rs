//! Numerical tolerances shared across modules.

/// On-sheet and orthogonality tests, relative to r² (or 1 for unit vectors).
pub const SHEET: f64 = 1e-9;
/// Ideal points compare equal when their ξ0 = 1 representatives differ by less than this.
pub const IDEAL: f64 = 1e-9;
/// Slack allowed below 1 for acosh arguments before they count as invalid.
pub const ACOSH_CLAMP: f64 = 1e-12;
/// A point closer than this (relative to r) to a line is taken to lie on it.
pub const ON_LINE: f64 = 1e-10;
/// Smallest separation of vectors treated as distinct.
pub const DISTINCT: f64 = 1e-12;
