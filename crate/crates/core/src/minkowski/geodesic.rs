use core::f64::consts::PI;

// Needed without std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use super::point::{Curvature, HPoint, IdealPoint, Tangent};
use super::vector::{check_same_len, MVec};
use crate::error::{GeomError, Result};
use crate::tol;

/// A complete geodesic `x(s) = base cosh(s/r) + r dir sinh(s/r)`, parametrised by arc length.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Geodesic {
    dir: Tangent,
}

impl Geodesic {
    pub fn new(dir: Tangent) -> Self {
        Geodesic { dir }
    }

    pub fn from_parts(base: HPoint, dir: MVec) -> Result<Self> {
        Ok(Geodesic { dir: Tangent::new(base, dir)? })
    }

    /// The geodesic with `point_at(0) = p` and `point_at(d(p, q)) = q`.
    pub fn through(p: &HPoint, q: &HPoint) -> Result<Self> {
        let v = p.direction_to(q)?;
        Ok(Geodesic { dir: Tangent::unchecked(*p, v) })
    }

    /// The geodesic running from ideal point `from` to ideal point `to`.
    ///
    /// Its base point is the "midpoint" `r (ξ1 + ξ2) / sqrt(-2<ξ1,ξ2>)`.
    pub fn between_ideal(from: &IdealPoint, to: &IdealPoint, k: Curvature) -> Result<Self> {
        let a = to.vector();
        let b = from.vector();
        check_same_len(&a, &b)?;
        let q = -2.0 * a.m(&b);
        if !(q > tol::DISTINCT) {
            return Err(GeomError::Degenerate("coincident ideal points"));
        }
        let s = q.sqrt();
        let base = HPoint::snap((a + b) * (k.r() / s), k);
        let dir = (a - b) * (1.0 / s);
        let w = base.to_tangent(&dir);
        Ok(Geodesic { dir: Tangent::unchecked(base, w * (1.0 / w.space_norm())) })
    }

    #[inline]
    pub fn base(&self) -> HPoint {
        self.dir.base()
    }

    #[inline]
    pub fn dir(&self) -> MVec {
        self.dir.vector()
    }

    #[inline]
    pub fn tangent(&self) -> Tangent {
        self.dir
    }

    #[inline]
    pub fn curvature(&self) -> Curvature {
        self.base().curvature()
    }

    #[inline]
    pub fn r(&self) -> f64 {
        self.base().r()
    }

    pub fn dim(&self) -> usize {
        self.base().dim()
    }

    pub fn point_at(&self, s: f64) -> HPoint {
        self.base().exp(&self.dir(), s)
    }

    /// Unit tangent of the curve at parameter `s`.
    pub fn tangent_at(&self, s: f64) -> MVec {
        let t = s / self.r();
        self.base().coords() * (t.sinh() / self.r()) + self.dir() * t.cosh()
    }

    /// Same carrier, opposite orientation.
    pub fn reversed(&self) -> Geodesic {
        Geodesic { dir: Tangent::unchecked(self.base(), -self.dir()) }
    }

    /// Re-bases the geodesic at `point_at(s)` keeping the orientation.
    pub fn rebased(&self, s: f64) -> Geodesic {
        let base = self.point_at(s);
        let v = base.to_tangent(&self.tangent_at(s));
        Geodesic { dir: Tangent::unchecked(base, v * (1.0 / v.space_norm())) }
    }

    /// Forward (s → +∞) and backward (s → -∞) ideal endpoints.
    pub fn ideal_endpoints(&self) -> (IdealPoint, IdealPoint) {
        let b = self.base().coords();
        let v = self.dir() * self.r();
        (IdealPoint::from_null(b + v), IdealPoint::from_null(b - v))
    }

    pub fn forward_end(&self) -> IdealPoint {
        self.ideal_endpoints().0
    }

    pub fn backward_end(&self) -> IdealPoint {
        self.ideal_endpoints().1
    }

    /// Coefficients `(C, S)` of the projection of `x` onto the plane of the
    /// geodesic, so that the projection is `C base + r S dir`.
    fn plane_coeffs(&self, x: &MVec) -> (f64, f64) {
        let r = self.r();
        let c = -x.m(&self.base().coords()) / (r * r);
        let s = x.m(&self.dir()) / r;
        (c, s)
    }

    /// Arc-length parameter of the point of the geodesic nearest to `p`.
    pub fn param_of(&self, p: &HPoint) -> f64 {
        let (c, s) = self.plane_coeffs(&p.coords());
        self.r() * (s / (c * c - s * s).sqrt()).asinh()
    }

    /// Whether `p` lies on the carrier within `tol::ON_LINE`.
    pub fn contains(&self, p: &HPoint) -> bool {
        self.distance_to(p).map(|d| d <= tol::ON_LINE * self.r().max(1.0)).unwrap_or(false)
    }

    /// Distance from a point to the carrier.
    pub fn distance_to(&self, p: &HPoint) -> Result<f64> {
        Ok(drop_perpendicular(p, self)?.distance)
    }
}

/// Foot of a perpendicular dropped from a point to a geodesic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Foot {
    pub point: HPoint,
    /// Arc-length parameter of the foot along the geodesic.
    pub param: f64,
    /// Distance from the dropped point to the foot.
    pub distance: f64,
    /// Set when the point already lies on the geodesic; `point` is then the input point.
    pub degenerate: bool,
}

/// Drops a perpendicular from `p` to `l` and returns its foot.
pub fn drop_perpendicular(p: &HPoint, l: &Geodesic) -> Result<Foot> {
    p.check_compatible(&l.base())?;
    let r = l.r();
    let x = p.coords();
    let b = l.base().coords();
    let d = l.dir();
    let c = -x.m(&b) / (r * r);
    let s = x.m(&d) / r;
    let proj = b * c + d * (r * s);
    let perp = (x - proj).space_norm();
    let distance = r * (perp / r).asinh();
    let param = r * (s / (c * c - s * s).sqrt()).asinh();
    if distance <= tol::ON_LINE * r.max(1.0) {
        return Ok(Foot { point: *p, param, distance: 0.0, degenerate: true });
    }
    let point = HPoint::from_timelike(proj, p.curvature())?;
    Ok(Foot { point, param, distance, degenerate: false })
}

/// Angle at `p` between the geodesics toward `q1` and `q2`, in `[0, π]`.
pub fn angle_at(p: &HPoint, q1: &HPoint, q2: &HPoint) -> Result<f64> {
    let t1 = p.direction_to(q1)?;
    let t2 = p.direction_to(q2)?;
    Ok(angle_between(&t1, &t2))
}

/// Angle between two spacelike vectors of a positive-definite subspace
/// (e.g. two tangents at one point).
pub fn angle_between(t1: &MVec, t2: &MVec) -> f64 {
    let u1 = *t1 * (1.0 / t1.space_norm());
    let u2 = *t2 * (1.0 / t2.space_norm());
    let a = 2.0 * (u1 - u2).space_norm().atan2((u1 + u2).space_norm());
    a.clamp(0.0, PI)
}
