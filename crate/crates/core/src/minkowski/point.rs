// Needed without std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use super::vector::{check_same_len, MVec};
use crate::error::{GeomError, Result};
use crate::tol;

/// Radius of curvature r of the model; sectional curvature is -1/r².
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Curvature(f64);

impl Curvature {
    pub const UNIT: Curvature = Curvature(1.0);

    pub fn new(r: f64) -> Result<Self> {
        if r.is_finite() && r > 0.0 {
            Ok(Curvature(r))
        } else {
            Err(GeomError::InvalidCurvature(r))
        }
    }

    #[inline]
    pub fn r(self) -> f64 {
        self.0
    }

    /// The base `a` of the general law tan(α/2) = a^(-d) for this radius.
    pub fn parallelism_base(self) -> f64 {
        (1.0 / self.0).exp()
    }
}

impl Default for Curvature {
    fn default() -> Self {
        Curvature::UNIT
    }
}

/// A point on the upper sheet `<x, x> = -r²`, `x0 > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HPoint {
    x: MVec,
    k: Curvature,
}

impl HPoint {
    /// Validates `x` against the sheet equation and snaps it onto the sheet.
    pub fn new(x: MVec, k: Curvature) -> Result<Self> {
        let r2 = k.r() * k.r();
        let residual = (x.m2() + r2).abs() / r2;
        if !x.is_finite() || residual > tol::SHEET || x[0] <= 0.0 {
            return Err(GeomError::OffSheet { residual });
        }
        Ok(HPoint::snap(x, k))
    }

    /// Lifts spatial coordinates `(x1, .., xn)` to the sheet.
    pub fn from_spatial(spatial: &[f64], k: Curvature) -> Result<Self> {
        let r = k.r();
        let s2: f64 = spatial.iter().map(|v| v * v).sum();
        let mut xs = [0.0; 4];
        xs[0] = (r * r + s2).sqrt();
        if spatial.len() + 1 > 4 {
            return Err(GeomError::UnsupportedDimension(spatial.len() + 1));
        }
        xs[1..=spatial.len()].copy_from_slice(spatial);
        let x = MVec::from_slice(&xs[..spatial.len() + 1])?;
        Ok(HPoint { x, k })
    }

    /// The model origin `(r, 0, .., 0)` of H^n.
    pub fn origin(n: usize, k: Curvature) -> Result<Self> {
        if !(2..=3).contains(&n) {
            return Err(GeomError::UnsupportedDimension(n + 1));
        }
        Ok(HPoint { x: MVec::axis(n + 1, 0) * k.r(), k })
    }

    /// Rescales a timelike vector onto the upper sheet.
    pub(crate) fn from_timelike(v: MVec, k: Curvature) -> Result<Self> {
        let q = v.m2();
        if !(q < 0.0) || !v.is_finite() {
            return Err(GeomError::Degenerate("vector is not timelike"));
        }
        let s = k.r() / (-q).sqrt();
        let s = if v[0] < 0.0 { -s } else { s };
        Ok(HPoint { x: v * s, k })
    }

    /// Re-projects a vector that is already on the sheet up to rounding.
    pub(crate) fn snap(x: MVec, k: Curvature) -> Self {
        let q = x.m2();
        let s = k.r() / (-q).sqrt();
        HPoint { x: x * s, k }
    }

    /// Wraps a vector that is on the sheet by construction. Used where
    /// renormalising would lose precision (far from the origin `<x,x>` is a
    /// difference of huge terms).
    pub(crate) fn from_exact(x: MVec, k: Curvature) -> Self {
        HPoint { x, k }
    }

    #[inline]
    pub fn coords(&self) -> MVec {
        self.x
    }

    #[inline]
    pub fn curvature(&self) -> Curvature {
        self.k
    }

    #[inline]
    pub fn r(&self) -> f64 {
        self.k.r()
    }

    /// Hyperbolic dimension n.
    #[inline]
    pub fn dim(&self) -> usize {
        self.x.hdim()
    }

    /// `|<x,x> + r²| / r²`.
    pub fn sheet_residual(&self) -> f64 {
        let r2 = self.r() * self.r();
        (self.x.m2() + r2).abs() / r2
    }

    pub(crate) fn check_compatible(&self, other: &HPoint) -> Result<()> {
        check_same_len(&self.x, &other.x)?;
        if self.k != other.k {
            return Err(GeomError::CurvatureMismatch { left: self.r(), right: other.r() });
        }
        Ok(())
    }

    /// Hyperbolic distance `r acosh(-<p,q>/r²)`.
    pub fn distance(&self, other: &HPoint) -> Result<f64> {
        distance(self, other)
    }

    /// Unit tangent at `self` pointing toward `other`.
    pub fn direction_to(&self, other: &HPoint) -> Result<MVec> {
        self.check_compatible(other)?;
        let r2 = self.r() * self.r();
        let v = other.x + self.x * (self.x.m(&other.x) / r2);
        let n = v.space_norm();
        if n <= tol::DISTINCT * self.r() {
            return Err(GeomError::Degenerate("coincident points"));
        }
        Ok(v * (1.0 / n))
    }

    /// Projects an arbitrary vector onto the tangent space at this point.
    pub fn to_tangent(&self, v: &MVec) -> MVec {
        let r2 = self.r() * self.r();
        *v + self.x * (self.x.m(v) / r2)
    }

    /// Exponential map: follow the unit tangent `v` for signed length `s`.
    pub fn exp(&self, v: &MVec, s: f64) -> HPoint {
        let r = self.r();
        let t = s / r;
        HPoint::snap(self.x * t.cosh() + *v * (r * t.sinh()), self.k)
    }
}

/// Hyperbolic distance between two points of the same model.
///
/// Evaluated as `2r asinh(|p - q|_M / 2r)`, which equals `r acosh(-<p,q>/r²)`
/// and keeps full precision for nearby points.
pub fn distance(p: &HPoint, q: &HPoint) -> Result<f64> {
    p.check_compatible(q)?;
    let r = p.r();
    let c = -p.x.m(&q.x) / (r * r);
    if !(c >= 1.0 - tol::ACOSH_CLAMP) {
        return Err(GeomError::OffSheet { residual: 1.0 - c });
    }
    let chord = (p.x - q.x).space_norm();
    Ok(2.0 * r * (chord / (2.0 * r)).asinh())
}

/// A unit spacelike vector tangent to the sheet at `base`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tangent {
    base: HPoint,
    v: MVec,
}

impl Tangent {
    pub fn new(base: HPoint, v: MVec) -> Result<Self> {
        check_same_len(&base.coords(), &v)?;
        let ortho = base.coords().m(&v).abs() / base.r();
        let unit = (v.m2() - 1.0).abs();
        let residual = ortho.max(unit);
        if !v.is_finite() || residual > tol::SHEET {
            return Err(GeomError::InvalidTangent { residual });
        }
        // remove rounding-level drift
        let w = base.to_tangent(&v);
        Ok(Tangent { base, v: w * (1.0 / w.space_norm()) })
    }

    /// Normalises an arbitrary vector after projecting it to the tangent space.
    pub fn from_any(base: HPoint, v: MVec) -> Result<Self> {
        check_same_len(&base.coords(), &v)?;
        let w = base.to_tangent(&v);
        let n = w.space_norm();
        if !(n > tol::DISTINCT) {
            return Err(GeomError::Degenerate("zero tangent"));
        }
        Ok(Tangent { base, v: w * (1.0 / n) })
    }

    pub(crate) fn unchecked(base: HPoint, v: MVec) -> Self {
        Tangent { base, v }
    }

    #[inline]
    pub fn base(&self) -> HPoint {
        self.base
    }

    #[inline]
    pub fn vector(&self) -> MVec {
        self.v
    }
}

/// A point at infinity: a future null direction normalised to ξ0 = 1.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IdealPoint {
    xi: MVec,
}

impl IdealPoint {
    pub fn new(v: MVec) -> Result<Self> {
        if !v.is_finite() || !(v[0] > 0.0) {
            return Err(GeomError::NotNull { residual: f64::NAN });
        }
        let xi = v * (1.0 / v[0]);
        let residual = xi.m2().abs();
        if residual > tol::SHEET {
            return Err(GeomError::NotNull { residual });
        }
        Ok(IdealPoint::from_null(xi))
    }

    /// The ideal point in spatial direction `dir` (any nonzero vector of length n).
    pub fn from_direction(dir: &[f64]) -> Result<Self> {
        let n: f64 = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(n > 0.0) || dir.len() < 2 || dir.len() > 3 {
            return Err(GeomError::Degenerate("bad direction"));
        }
        let mut xs = [1.0; 4];
        for (i, d) in dir.iter().enumerate() {
            xs[i + 1] = d / n;
        }
        Ok(IdealPoint { xi: MVec::from_slice(&xs[..dir.len() + 1])? })
    }

    /// Gauge-fixes a future null vector; the spatial part is renormalised to unit length.
    pub(crate) fn from_null(v: MVec) -> Self {
        let mut xi = v * (1.0 / v[0]);
        let s = xi.spatial().iter().map(|x| x * x).sum::<f64>().sqrt();
        for i in 1..xi.len() {
            xi[i] /= s;
        }
        IdealPoint { xi }
    }

    #[inline]
    pub fn vector(&self) -> MVec {
        self.xi
    }

    /// Max-norm distance between the ξ0 = 1 representatives.
    pub fn gap(&self, other: &IdealPoint) -> f64 {
        if self.xi.len() != other.xi.len() {
            return f64::INFINITY;
        }
        (self.xi - other.xi).max_abs()
    }

    pub fn approx_eq(&self, other: &IdealPoint, eps: f64) -> bool {
        self.gap(other) < eps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn distance_identity_and_closed_form() {
        let k = Curvature::UNIT;
        let p = HPoint::origin(2, k).unwrap();
        assert_eq!(distance(&p, &p).unwrap(), 0.0);
        let q = HPoint::new(MVec::new3(1f64.cosh(), 1f64.sinh(), 0.0), k).unwrap();
        assert_abs_diff_eq!(distance(&p, &q).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn distance_scales_with_radius() {
        // x -> 2x carries the r = 1 model onto the r = 2 model
        let k1 = Curvature::UNIT;
        let k2 = Curvature::new(2.0).unwrap();
        let p = HPoint::from_spatial(&[0.3, -0.7], k1).unwrap();
        let q = HPoint::from_spatial(&[1.1, 0.4], k1).unwrap();
        let p2 = HPoint::new(p.coords() * 2.0, k2).unwrap();
        let q2 = HPoint::new(q.coords() * 2.0, k2).unwrap();
        let d1 = distance(&p, &q).unwrap();
        let d2 = distance(&p2, &q2).unwrap();
        assert_abs_diff_eq!(d2, 2.0 * d1, epsilon = 1e-12);
    }

    #[test]
    fn distance_rejects_mixed_models() {
        let p = HPoint::origin(2, Curvature::UNIT).unwrap();
        let q = HPoint::origin(2, Curvature::new(2.0).unwrap()).unwrap();
        assert!(matches!(distance(&p, &q), Err(GeomError::CurvatureMismatch { .. })));
        let s = HPoint::origin(3, Curvature::UNIT).unwrap();
        assert!(matches!(distance(&p, &s), Err(GeomError::DimensionMismatch { .. })));
    }

    #[test]
    fn off_sheet_points_rejected() {
        let k = Curvature::UNIT;
        assert!(HPoint::new(MVec::new3(1.1, 0.0, 0.0), k).is_err());
        assert!(HPoint::new(MVec::new3(-1.0, 0.0, 0.0), k).is_err());
        assert!(Curvature::new(0.0).is_err());
        assert!(Curvature::new(f64::INFINITY).is_err());
    }

    #[test]
    fn ideal_point_gauge() {
        let xi = IdealPoint::new(MVec::new3(2.0, 2.0, 0.0)).unwrap();
        assert_eq!(xi.vector(), MVec::new3(1.0, 1.0, 0.0));
        assert!(IdealPoint::new(MVec::new3(1.0, 0.5, 0.0)).is_err());
        assert!(IdealPoint::new(MVec::new3(-1.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn unit_base_matches_radius() {
        assert_abs_diff_eq!(Curvature::UNIT.parallelism_base(), core::f64::consts::E);
    }
}
