//! Right-triangle trigonometry of the hyperbolic and spherical geometries.
//!
//! For a right triangle with legs `a`, `b`, hypotenuse `c`, right angle `C`
//! and angles `A`, `B` opposite `a`, `b`, the four identities used here are
//!
//! ```text
//!            hyperbolic (radius r)           spherical (radius R)
//! (1)  cosh c = cosh a cosh b             cos c = cos a cos b
//! (2)  sinh a = sinh c sin A              sin a = sin c sin A
//! (3)  tanh b = tanh c cos A              tan b = tan c cos A
//! (4)  cos A  = cosh a sin B              cos A = cos a sin B
//! ```
//!
//! with sides divided by the radius. Substituting `a → ia` (and so on) in
//! the spherical column gives the hyperbolic one, up to a factor of `i` in
//! (2) and (3).

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
// Needed without std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::error::{GeomError, Result};
use crate::minkowski::{angle_at, Curvature, HPoint};
use crate::parallels::angle_of_parallelism;
use crate::{sample, sphere};

/// Deviation of a measured right angle accepted by the residual functions.
pub const RIGHT_ANGLE_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Geometry {
    Hyperbolic(Curvature),
    /// Sphere of the given radius.
    Spherical(f64),
    Euclidean,
}

/// Sides and angles of a triangle; `angle_c` is opposite `c`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TriangleMeasurements {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub angle_a: f64,
    pub angle_b: f64,
    pub angle_c: f64,
    pub geometry: Geometry,
}

/// Residuals of identities (1)-(4), in that order.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IdentityResiduals {
    pub cosine: f64,
    pub sine: f64,
    pub tangent: f64,
    pub angle: f64,
}

impl IdentityResiduals {
    pub const NAMES: [&'static str; 4] = ["cosine", "sine", "tangent", "angle"];

    pub fn as_array(&self) -> [f64; 4] {
        [self.cosine, self.sine, self.tangent, self.angle]
    }

    pub fn max_abs(&self) -> f64 {
        self.as_array().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Componentwise maximum of absolute values.
    pub fn worst(&self, other: &IdentityResiduals) -> IdentityResiduals {
        IdentityResiduals {
            cosine: self.cosine.abs().max(other.cosine.abs()),
            sine: self.sine.abs().max(other.sine.abs()),
            tangent: self.tangent.abs().max(other.tangent.abs()),
            angle: self.angle.abs().max(other.angle.abs()),
        }
    }
}

fn check_right(t: &TriangleMeasurements) -> Result<()> {
    if (t.angle_c - FRAC_PI_2).abs() > RIGHT_ANGLE_TOL {
        return Err(GeomError::WrongGeometry("the angle opposite c is not a right angle"));
    }
    Ok(())
}

pub fn hyperbolic_right_residuals(t: &TriangleMeasurements) -> Result<IdentityResiduals> {
    let Geometry::Hyperbolic(k) = t.geometry else {
        return Err(GeomError::WrongGeometry("expected a hyperbolic triangle"));
    };
    check_right(t)?;
    let r = k.r();
    let (a, b, c) = (t.a / r, t.b / r, t.c / r);
    Ok(IdentityResiduals {
        cosine: c.cosh() - a.cosh() * b.cosh(),
        sine: a.sinh() - c.sinh() * t.angle_a.sin(),
        tangent: b.tanh() - c.tanh() * t.angle_a.cos(),
        angle: t.angle_a.cos() - a.cosh() * t.angle_b.sin(),
    })
}

/// Spherical counterparts. Identity (3) is evaluated with its denominators
/// cleared, `sin b cos c - cos b sin c cos A`, so that legs of length
/// `πR/2` stay finite.
pub fn spherical_right_residuals(t: &TriangleMeasurements) -> Result<IdentityResiduals> {
    let Geometry::Spherical(radius) = t.geometry else {
        return Err(GeomError::WrongGeometry("expected a spherical triangle"));
    };
    check_right(t)?;
    for side in [t.a, t.b, t.c] {
        if !(side > 0.0 && side < PI * radius) {
            return Err(GeomError::OutOfRange { what: "spherical side", value: side });
        }
    }
    let (a, b, c) = (t.a / radius, t.b / radius, t.c / radius);
    Ok(IdentityResiduals {
        cosine: c.cos() - a.cos() * b.cos(),
        sine: a.sin() - c.sin() * t.angle_a.sin(),
        tangent: b.sin() * c.cos() - b.cos() * c.sin() * t.angle_a.cos(),
        angle: t.angle_a.cos() - a.cos() * t.angle_b.sin(),
    })
}

/// Per-identity comparison of the spherical identities at imaginary sides
/// with the hyperbolic identities at real sides (unit radius).
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Substitution {
    /// `spherical(ia, ib, ic) = factor · hyperbolic(a, b, c)` with these factors.
    pub factors: [&'static str; 4],
    /// `|spherical(ia, ib, ic) - factor · hyperbolic(a, b, c)|` per identity.
    pub residuals: [f64; 4],
}

impl Substitution {
    pub fn max(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, x| m.max(*x))
    }
}

/// Evaluates the spherical identities at sides `(ia, ib, ic)` with complex
/// trigonometry and compares each with the hyperbolic one at `(a, b, c)`.
pub fn imaginary_substitution(a: f64, b: f64, c: f64, angle_a: f64, angle_b: f64) -> Substitution {
    let i = Complex64::i();
    let (za, zb, zc) = (i * a, i * b, i * c);
    let (ca, sb_angle) = (Complex64::from(angle_a.cos()), Complex64::from(angle_b.sin()));
    let sa_angle = Complex64::from(angle_a.sin());
    let spherical = [
        zc.cos() - za.cos() * zb.cos(),
        za.sin() - zc.sin() * sa_angle,
        zb.tan() - zc.tan() * ca,
        ca - za.cos() * sb_angle,
    ];
    let hyperbolic = [
        c.cosh() - a.cosh() * b.cosh(),
        a.sinh() - c.sinh() * angle_a.sin(),
        b.tanh() - c.tanh() * angle_a.cos(),
        angle_a.cos() - a.cosh() * angle_b.sin(),
    ];
    let factors = [Complex64::from(1.0), i, i, Complex64::from(1.0)];
    let mut residuals = [0.0; 4];
    for k in 0..4 {
        residuals[k] = (spherical[k] - factors[k] * hyperbolic[k]).norm();
    }
    Substitution { factors: ["1", "i", "i", "1"], residuals }
}

/// Builds a right triangle in the model: legs `a`, `b` laid off from a
/// random vertex `C` along perpendicular directions, then measures every
/// side and angle with the metric of the model.
pub fn synthesize_right_triangle<R: Rng + ?Sized>(
    a: f64,
    b: f64,
    k: Curvature,
    rng: &mut R,
) -> Result<TriangleMeasurements> {
    let vc = sample::point(2, k, 1.5 * k.r(), rng);
    let u = sample::tangent(&vc, rng).vector();
    let w = vc.to_tangent(&(sample::tangent(&vc, rng).vector()));
    let v = w - u * w.m(&u);
    let n = v.space_norm();
    if !(n > 1e-3) {
        return synthesize_right_triangle(a, b, k, rng);
    }
    let v = v * (1.0 / n);
    let vb = vc.exp(&u, a);
    let va = vc.exp(&v, b);
    measure_hyperbolic(&va, &vb, &vc)
}

/// Sides and angles of the hyperbolic triangle `ABC`.
pub fn measure_hyperbolic(va: &HPoint, vb: &HPoint, vc: &HPoint) -> Result<TriangleMeasurements> {
    Ok(TriangleMeasurements {
        a: vb.distance(vc)?,
        b: va.distance(vc)?,
        c: va.distance(vb)?,
        angle_a: angle_at(va, vb, vc)?,
        angle_b: angle_at(vb, va, vc)?,
        angle_c: angle_at(vc, va, vb)?,
        geometry: Geometry::Hyperbolic(va.curvature()),
    })
}

/// A random right triangle on the sphere of radius `radius`, constructed
/// and measured in R³.
pub fn spherical_right_triangle<R: Rng + ?Sized>(
    a: f64,
    b: f64,
    radius: f64,
    rng: &mut R,
) -> TriangleMeasurements {
    let vc = sphere::random_point(radius, rng);
    let (u, v) = sphere::random_tangent_pair(vc, rng);
    let vb = sphere::exp(vc, u, a, radius);
    let va = sphere::exp(vc, v, b, radius);
    TriangleMeasurements {
        a: sphere::great_circle_distance(vb, vc, radius),
        b: sphere::great_circle_distance(va, vc, radius),
        c: sphere::great_circle_distance(va, vb, radius),
        angle_a: sphere::angle_at(va, vb, vc),
        angle_b: sphere::angle_at(vb, va, vc),
        angle_c: sphere::angle_at(vc, va, vb),
        geometry: Geometry::Spherical(radius),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AccordanceReport {
    pub triangles: usize,
    pub r: f64,
    /// Largest absolute residual of each identity.
    pub max: IdentityResiduals,
}

impl AccordanceReport {
    pub fn worst(&self) -> f64 {
        self.max.max_abs()
    }
}

/// Synthesizes `n` right triangles with legs uniform in `[0.1, 2] r` and
/// evaluates the hyperbolic identities on their measured sides and angles.
pub fn accordance_check<R: Rng + ?Sized>(n: usize, k: Curvature, rng: &mut R) -> Result<AccordanceReport> {
    let r = k.r();
    let mut max = IdentityResiduals::default();
    for _ in 0..n {
        let a = rng.gen_range(0.1..=2.0) * r;
        let b = rng.gen_range(0.1..=2.0) * r;
        let t = synthesize_right_triangle(a, b, k, rng)?;
        max = max.worst(&hyperbolic_right_residuals(&t)?);
    }
    Ok(AccordanceReport { triangles: n, r, max })
}

/// `|sin Π(d) cosh(d/r) - 1|`.
pub fn parallelism_identity_check(d: f64, k: Curvature) -> Result<f64> {
    let pi_d = angle_of_parallelism(d, k)?;
    Ok((pi_d.sin() * (d / k.r()).cosh() - 1.0).abs())
}

/// Result of [`euclidean_limit_fit`].
#[derive(Clone, Debug, PartialEq)]
pub struct LimitFit {
    /// `(r, |c² - a² - b²|)` for each radius.
    pub points: Vec<(f64, f64)>,
    /// Least-squares `p` in `residual ~ C r^(-p)`.
    pub exponent: f64,
}

/// Measures the Pythagorean defect of a right triangle with fixed legs in
/// models of growing radius and fits its decay exponent in `r`.
pub fn euclidean_limit_fit<R: Rng + ?Sized>(
    a: f64,
    b: f64,
    radii: &[f64],
    rng: &mut R,
) -> Result<LimitFit> {
    let mut points = Vec::with_capacity(radii.len());
    for &r in radii {
        let t = synthesize_right_triangle(a, b, Curvature::new(r)?, rng)?;
        points.push((r, (t.c * t.c - t.a * t.a - t.b * t.b).abs()));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|(r, e)| (r.ln(), e.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    Ok(LimitFit { points, exponent: -sxy / sxx })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn hyp(a: f64, b: f64, c: f64, aa: f64, bb: f64) -> TriangleMeasurements {
        TriangleMeasurements {
            a,
            b,
            c,
            angle_a: aa,
            angle_b: bb,
            angle_c: FRAC_PI_2,
            geometry: Geometry::Hyperbolic(Curvature::UNIT),
        }
    }

    #[test]
    fn unit_legs() {
        let mut rng = sample::rng(1);
        let t = synthesize_right_triangle(1.0, 1.0, Curvature::UNIT, &mut rng).unwrap();
        assert_abs_diff_eq!(t.c, 1.513_374_006_596_504, epsilon = 1e-12);
        assert_abs_diff_eq!(t.c, (1f64.cosh() * 1f64.cosh()).acosh(), epsilon = 1e-12);
        assert!(hyperbolic_right_residuals(&t).unwrap().max_abs() < 1e-10);
    }

    #[test]
    fn degenerate_leg_limit() {
        let b: f64 = 0.8;
        // a -> 0: c -> b, A -> 0, B -> π/2
        let t = hyp(0.0, b, b, 0.0, FRAC_PI_2);
        let res = hyperbolic_right_residuals(&t).unwrap();
        assert!(res.max_abs() < 1e-15, "{res:?}");
    }

    #[test]
    fn wrong_tags_rejected() {
        let mut t = hyp(1.0, 1.0, 1.5, 0.5, 0.5);
        t.geometry = Geometry::Spherical(1.0);
        assert!(hyperbolic_right_residuals(&t).is_err());
        t.geometry = Geometry::Hyperbolic(Curvature::UNIT);
        assert!(spherical_right_residuals(&t).is_err());
        t.angle_c = 1.0;
        assert!(hyperbolic_right_residuals(&t).is_err());
    }

    #[test]
    fn hyperbolic_identity_one_tends_to_pythagoras() {
        let (a, b, c) = (0.7, 1.1, 1.9);
        for r in [10.0, 100.0, 1000.0] {
            let k = Curvature::new(r).unwrap();
            let t = TriangleMeasurements { geometry: Geometry::Hyperbolic(k), ..hyp(a, b, c, 0.3, 0.3) };
            let scaled = hyperbolic_right_residuals(&t).unwrap().cosine * r * r;
            let lead = (c * c - a * a - b * b) / 2.0;
            assert!((scaled - lead).abs() < 2.0 / (r * r), "r={r}: {scaled} vs {lead}");
        }
    }

    #[test]
    fn spherical_octant_and_small_limit() {
        let q = FRAC_PI_2;
        let t = TriangleMeasurements {
            a: q,
            b: q,
            c: q,
            angle_a: q,
            angle_b: q,
            angle_c: q,
            geometry: Geometry::Spherical(1.0),
        };
        assert!(spherical_right_residuals(&t).unwrap().max_abs() < 1e-15);
        let t = TriangleMeasurements { a: 4.0, ..t };
        assert!(spherical_right_residuals(&t).is_err());
        let mut rng = sample::rng(4);
        let tiny = spherical_right_triangle(1e-4, 1e-4, 1.0, &mut rng);
        assert!(spherical_right_residuals(&tiny).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn cos_of_imaginary() {
        let z = Complex64::new(0.0, 1.0).cos();
        assert_abs_diff_eq!(z.re, 1f64.cosh(), epsilon = 1e-15);
        assert_abs_diff_eq!(z.im, 0.0);
        let s = imaginary_substitution(1.0, 1.0, 1.5133740, 0.9, 0.9);
        assert_eq!(s.factors, ["1", "i", "i", "1"]);
        assert!(s.residuals[0] < 1e-15);
    }

    #[test]
    fn parallelism_identity_grid() {
        let k = Curvature::UNIT;
        assert!(parallelism_identity_check(1.0, k).unwrap() < 1e-14);
        assert_eq!(parallelism_identity_check(0.0, k).unwrap(), 0.0);
        for i in 0..=200 {
            let d = 0.01 * (1000f64).powf(i as f64 / 200.0);
            assert!(parallelism_identity_check(d, k).unwrap() < 1e-12, "d={d}");
        }
    }

    #[test]
    fn pythagorean_defect_decays_quadratically() {
        let mut rng = sample::rng(9);
        let fit = euclidean_limit_fit(1.0, 1.0, &[10.0, 30.0, 100.0, 300.0], &mut rng).unwrap();
        assert!((1.9..=2.1).contains(&fit.exponent), "{fit:?}");
    }
}
