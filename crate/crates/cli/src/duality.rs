//! Report for the `duality` command: one right triangle in detail, then the
//! accordance and Euclidean-limit sweeps.

use anyhow::Result;
use lobachevsky_core::sample;
use lobachevsky_core::trig::{
    accordance_check, euclidean_limit_fit, hyperbolic_right_residuals, imaginary_substitution,
    synthesize_right_triangle, IdentityResiduals,
};
use lobachevsky_core::verify::Check;
use lobachevsky_core::Curvature;
use serde::Serialize;

pub const SUBSTITUTION_TOL: f64 = 1e-12;
pub const ACCORDANCE_TOL: f64 = 1e-9;
/// Allowed distance of the fitted exponent from 2.
pub const EXPONENT_TOL: f64 = 0.1;
pub const LIMIT_RADII: [f64; 4] = [10.0, 30.0, 100.0, 300.0];

#[derive(Clone, Debug, Serialize)]
pub struct TriangleReport {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub angle_a: f64,
    pub angle_b: f64,
    pub angle_c: f64,
    pub residuals: IdentityResiduals,
    pub substitution_factors: [&'static str; 4],
    pub substitution_residuals: [f64; 4],
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    pub radii: Vec<f64>,
    pub pythagorean_defect: Vec<f64>,
    pub exponent: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub seed: u64,
    pub r: f64,
    pub triangle: TriangleReport,
    pub accordance_triangles: usize,
    pub accordance_max: IdentityResiduals,
    pub limit: LimitReport,
    pub checks: Vec<Check>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs the report for legs `a`, `b` (in units of `r`).
pub fn run(a: f64, b: f64, samples: usize, k: Curvature, seed: u64, tol: Option<f64>) -> Result<DualityReport> {
    let mut rng = sample::rng(seed);
    let r = k.r();
    let t = synthesize_right_triangle(a * r, b * r, k, &mut rng)?;
    let residuals = hyperbolic_right_residuals(&t)?;
    // the substitution is stated for the unit model
    let unit = synthesize_right_triangle(a, b, Curvature::UNIT, &mut rng)?;
    let sub = imaginary_substitution(unit.a, unit.b, unit.c, unit.angle_a, unit.angle_b);
    let acc = accordance_check(samples, k, &mut rng)?;
    let fit = euclidean_limit_fit(a, b, &LIMIT_RADII, &mut rng)?;
    let checks = vec![
        Check::new("triangle-identities", residuals.max_abs(), tol.unwrap_or(ACCORDANCE_TOL)),
        Check::new("imaginary-substitution", sub.max(), tol.unwrap_or(SUBSTITUTION_TOL)),
        Check::new("accordance", acc.worst(), tol.unwrap_or(ACCORDANCE_TOL)),
        Check::new("euclidean-limit-exponent", (fit.exponent - 2.0).abs(), tol.unwrap_or(EXPONENT_TOL)),
    ];
    Ok(DualityReport {
        seed,
        r,
        triangle: TriangleReport {
            a: t.a,
            b: t.b,
            c: t.c,
            angle_a: t.angle_a,
            angle_b: t.angle_b,
            angle_c: t.angle_c,
            residuals,
            substitution_factors: sub.factors,
            substitution_residuals: sub.residuals,
        },
        accordance_triangles: acc.triangles,
        accordance_max: acc.max,
        limit: LimitReport {
            radii: fit.points.iter().map(|p| p.0).collect(),
            pythagorean_defect: fit.points.iter().map(|p| p.1).collect(),
            exponent: fit.exponent,
        },
        checks,
    })
}
