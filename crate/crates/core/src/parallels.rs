//! Parallels in the hyperbolic plane and space.
//!
//! Through a point `P` off a line `l` pass exactly two boundary lines that
//! separate the lines meeting `l` from those that do not. Each makes the
//! angle of parallelism Π(d) with the perpendicular `PS`, where `d = |PS|`
//! and `tan(Π/2) = exp(-d/r)`. A boundary parallel shares one ideal
//! endpoint with `l`.
//!
//! Side labels are a fixed convention. In H² a boundary parallel through `P`
//! sharing the ideal point ξ with `l` is [`Side::Left`] when
//! `det[P, S, ξ] > 0` (S the foot of the perpendicular from `P`). In H³ a
//! line does not separate space, so the label only records whether ξ is the
//! forward end of `l`.

use core::f64::consts::{FRAC_PI_2, PI};

// Needed without std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{GeomError, Result};
use crate::minkowski::{
    angle_at, det, drop_perpendicular, reject, Curvature, Geodesic, HPoint, IdealPoint, MVec,
    Tangent,
};
use crate::tol;

/// Π(d) = 2 atan(exp(-d/r)).
pub fn angle_of_parallelism(d: f64, k: Curvature) -> Result<f64> {
    if !(d >= 0.0) || !d.is_finite() {
        return Err(GeomError::OutOfRange { what: "distance", value: d });
    }
    Ok(2.0 * (-d / k.r()).exp().atan())
}

/// The same law written for an arbitrary base: 2 atan(a^(-d)), `a > 1`.
pub fn angle_of_parallelism_general(d: f64, a: f64) -> Result<f64> {
    if !(d >= 0.0) || !d.is_finite() {
        return Err(GeomError::OutOfRange { what: "distance", value: d });
    }
    if !(a > 1.0) || !a.is_finite() {
        return Err(GeomError::OutOfRange { what: "base a", value: a });
    }
    Ok(2.0 * a.powf(-d).atan())
}

/// Which of the two boundary parallels a line is; see the module docs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Side {
    Left,
    Right,
}

/// Mutual position of two distinct lines.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LineRelation {
    /// The lines meet at `point`.
    Secant { point: HPoint },
    /// The lines share exactly one ideal endpoint.
    ///
    /// `near_tangent` is set when the endpoint test was inconclusive and the
    /// lines were classified as parallel because their polars are within
    /// rounding of the parallel configuration.
    BoundaryParallel { side: Side, shared: IdealPoint, near_tangent: bool },
    /// Neither meeting nor parallel; `feet` are the ends of the common perpendicular.
    Ultraparallel { feet: (HPoint, HPoint), distance: f64 },
}

impl LineRelation {
    pub fn kind_name(&self) -> &'static str {
        match self {
            LineRelation::Secant { .. } => "secant",
            LineRelation::BoundaryParallel { side: Side::Left, .. } => "boundary-parallel-left",
            LineRelation::BoundaryParallel { side: Side::Right, .. } => "boundary-parallel-right",
            LineRelation::Ultraparallel { .. } => "ultraparallel",
        }
    }

    pub fn is_boundary_parallel(&self) -> bool {
        matches!(self, LineRelation::BoundaryParallel { .. })
    }
}

/// Side label of a boundary parallel through `p` (with foot `foot` on `l`) sharing `xi`.
fn side_label(p: &HPoint, foot: &HPoint, xi: &IdealPoint, l: &Geodesic) -> Side {
    let positive = if p.dim() == 2 {
        det(&[p.coords(), foot.coords(), xi.vector()]) > 0.0
    } else {
        let t = l.tangent_at(l.param_of(foot));
        xi.vector().m(&t) > 0.0
    };
    if positive {
        Side::Left
    } else {
        Side::Right
    }
}

/// Classifies two lines as secant, boundary parallel or ultraparallel.
pub fn classify(l1: &Geodesic, l2: &Geodesic) -> Result<LineRelation> {
    l1.base().check_compatible(&l2.base())?;
    let (f1, b1) = l1.ideal_endpoints();
    let (f2, b2) = l2.ideal_endpoints();
    let same = |a: &IdealPoint, b: &IdealPoint| a.approx_eq(b, tol::IDEAL);
    if (same(&f1, &f2) && same(&b1, &b2)) || (same(&f1, &b2) && same(&b1, &f2)) {
        return Err(GeomError::Degenerate("identical carriers"));
    }
    let shared = [f1, b1]
        .into_iter()
        .find(|a| same(a, &f2) || same(a, &b2));
    if let Some(xi) = shared {
        return Ok(parallel_relation(l1, l2, xi, false));
    }

    let r = l1.r();
    let e0 = l1.base().coords() * (1.0 / r);
    let e1 = l1.dir();
    let g0 = l2.base().coords() * (1.0 / r);
    let g1 = l2.dir();

    // third basis vector of the span of both planes, orthogonal to l1's plane
    let w0 = reject(&g0, &[e0, e1]);
    let w1 = reject(&g1, &[e0, e1]);
    let w = if w0.space_norm() >= w1.space_norm() { w0 } else { w1 };
    let wn = w.space_norm();
    if !(wn > tol::DISTINCT) {
        return Err(GeomError::Degenerate("identical carriers"));
    }
    let w = w * (1.0 / wn);

    let skew = l1.dim() == 3 && {
        let o0 = reject(&g0, &[e0, e1, w]).space_norm();
        let o1 = reject(&g1, &[e0, e1, w]).space_norm();
        o0.max(o1) > tol::SHEET
    };
    if skew {
        return skew_perpendicular(l1, l2, [e0, e1], [g0, g1]);
    }

    // unit normal of l2's plane inside the common 3-space
    let n2 = [e0, e1, w]
        .iter()
        .map(|v| reject(v, &[g0, g1]))
        .fold(MVec::zero(e0.len()), |best, v| {
            if v.space_norm() > best.space_norm() {
                v
            } else {
                best
            }
        });
    let n2 = n2 * (1.0 / n2.space_norm());
    let kappa = w.m(&n2);
    let a = -n2.m(&e0);
    let b = n2.m(&e1);

    if (kappa.abs() - 1.0).abs() < tol::DISTINCT {
        let xi = nearest_shared(&[f1, b1], &[f2, b2]);
        return Ok(parallel_relation(l1, l2, xi, true));
    }
    if kappa.abs() < 1.0 {
        let point = HPoint::from_timelike(e0 * b + e1 * a, l1.curvature())?;
        Ok(LineRelation::Secant { point })
    } else {
        let p1 = HPoint::from_timelike(e0 * a + e1 * b, l1.curvature())?;
        let p2 = HPoint::from_timelike(w - n2 * kappa, l1.curvature())?;
        let distance = p1.distance(&p2)?;
        Ok(LineRelation::Ultraparallel { feet: (p1, p2), distance })
    }
}

fn nearest_shared(a: &[IdealPoint; 2], b: &[IdealPoint; 2]) -> IdealPoint {
    let mut best = (f64::INFINITY, a[0]);
    for x in a {
        for y in b {
            let g = x.gap(y);
            if g < best.0 {
                best = (g, *x);
            }
        }
    }
    best.1
}

fn parallel_relation(l1: &Geodesic, l2: &Geodesic, xi: IdealPoint, near: bool) -> LineRelation {
    let p = l2.base();
    let side = match drop_perpendicular(&p, l1) {
        Ok(foot) if !foot.degenerate => side_label(&p, &foot.point, &xi, l1),
        _ => Side::Left,
    };
    LineRelation::BoundaryParallel { side, shared: xi, near_tangent: near }
}

/// Common perpendicular of two non-coplanar lines in H³.
///
/// The foot on `l1` is the timelike eigenvector of the composition of the
/// Minkowski projections onto the two planes, restricted to `l1`'s plane.
fn skew_perpendicular(
    l1: &Geodesic,
    l2: &Geodesic,
    e: [MVec; 2],
    g: [MVec; 2],
) -> Result<LineRelation> {
    let c = |i: usize, j: usize| e[i].m(&g[j]);
    let mut t = [[0.0; 2]; 2];
    for j in 0..2 {
        t[0][j] = c(j, 0) * c(0, 0) - c(j, 1) * c(0, 1);
        t[1][j] = -c(j, 0) * c(1, 0) + c(j, 1) * c(1, 1);
    }
    let tr = t[0][0] + t[1][1];
    let dt = t[0][0] * t[1][1] - t[0][1] * t[1][0];
    let disc = tr * tr / 4.0 - dt;
    if disc < 0.0 {
        return Err(GeomError::Degenerate("no common perpendicular"));
    }
    let mut best: Option<(f64, f64)> = None;
    for lam in [tr / 2.0 + disc.sqrt(), tr / 2.0 - disc.sqrt()] {
        let cand = [(t[0][1], lam - t[0][0]), (lam - t[1][1], t[1][0])];
        for (al, be) in cand {
            let q = -al * al + be * be;
            let scale = al * al + be * be;
            if scale > 0.0 && q < -1e-6 * scale {
                best = Some((al, be));
            }
        }
    }
    let (al, be) = best.ok_or(GeomError::Degenerate("no timelike eigenvector"))?;
    let mut p1 = HPoint::from_timelike(e[0] * al + e[1] * be, l1.curvature())?;
    let mut p2 = drop_perpendicular(&p1, l2)?.point;
    for _ in 0..3 {
        p1 = drop_perpendicular(&p2, l1)?.point;
        p2 = drop_perpendicular(&p1, l2)?.point;
    }
    let distance = p1.distance(&p2)?;
    Ok(LineRelation::Ultraparallel { feet: (p1, p2), distance })
}

/// How far a classification's witness is from being valid: the distance of
/// a secant point from both lines, the gap between the shared ideal point and
/// the nearest endpoints of both lines, or the offsets from both lines and
/// from a right angle of the common perpendicular.
pub fn witness_residual(l1: &Geodesic, l2: &Geodesic, rel: &LineRelation) -> Result<f64> {
    match rel {
        LineRelation::Secant { point } => Ok(l1.distance_to(point)?.max(l2.distance_to(point)?)),
        LineRelation::BoundaryParallel { shared, .. } => {
            let gap = |l: &Geodesic| {
                let (f, b) = l.ideal_endpoints();
                f.gap(shared).min(b.gap(shared))
            };
            Ok(gap(l1).max(gap(l2)))
        }
        LineRelation::Ultraparallel { feet, distance } => {
            if !(*distance > 0.0) {
                return Ok(f64::INFINITY);
            }
            let (p1, p2) = feet;
            let on = l1.distance_to(p1)?.max(l2.distance_to(p2)?);
            let t1 = l1.tangent_at(l1.param_of(p1));
            let t2 = l2.tangent_at(l2.param_of(p2));
            let right1 = p1.direction_to(p2)?.m(&t1).abs();
            let right2 = p2.direction_to(p1)?.m(&t2).abs();
            Ok(on.max(right1).max(right2))
        }
    }
}

/// The unique line through `p` with ideal endpoint `xi` (oriented toward `xi`).
pub fn pencil_of(xi: &IdealPoint, p: &HPoint) -> Result<Geodesic> {
    let v = xi.vector();
    if v.len() != p.coords().len() {
        return Err(GeomError::DimensionMismatch { left: v.len(), right: p.coords().len() });
    }
    // v = r ξ / c - p / r with c = -<ξ,p>: unit, tangent at p, and p + r v ∝ ξ
    // exactly, unlike projecting ξ onto the tangent space at a far point.
    let r = p.r();
    let c = -v.m(&p.coords());
    if !(c > 0.0) {
        return Err(GeomError::Degenerate("ideal point not future null"));
    }
    let dir = v * (r / c) - p.coords() * (1.0 / r);
    Ok(Geodesic::new(Tangent::unchecked(*p, dir)))
}

/// The two boundary parallels through a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryParallels {
    pub left: Geodesic,
    pub right: Geodesic,
    /// Foot `S` of the perpendicular from the point to the line.
    pub foot: HPoint,
    /// `|PS|`.
    pub distance: f64,
}

/// The two lines through `p` that share one ideal endpoint each with `l`.
pub fn boundary_parallels(p: &HPoint, l: &Geodesic) -> Result<BoundaryParallels> {
    let foot = drop_perpendicular(p, l)?;
    if foot.degenerate {
        return Err(GeomError::Degenerate("point lies on the line"));
    }
    let (fwd, back) = l.ideal_endpoints();
    let g_fwd = pencil_of(&fwd, p)?;
    let g_back = pencil_of(&back, p)?;
    let (left, right) = match side_label(p, &foot.point, &fwd, l) {
        Side::Left => (g_fwd, g_back),
        Side::Right => (g_back, g_fwd),
    };
    Ok(BoundaryParallels { left, right, foot: foot.point, distance: foot.distance })
}

/// Ray geometry at `p` used by the secant/non-secant oracle.
struct RayFan {
    p: HPoint,
    toward_foot: MVec,
    across: MVec,
    normal: MVec,
}

impl RayFan {
    fn new(p: &HPoint, l: &Geodesic) -> Result<RayFan> {
        let foot = drop_perpendicular(p, l)?;
        if foot.degenerate {
            return Err(GeomError::Degenerate("point lies on the line"));
        }
        let r = p.r();
        let s = foot.point;
        let toward_foot = p.direction_to(&s)?;
        let t_s = l.tangent_at(foot.param);
        let v = p.to_tangent(&t_s);
        let v = v - toward_foot * v.m(&toward_foot);
        let across = v * (1.0 / v.space_norm());
        let normal = reject(&p.coords(), &[s.coords() * (1.0 / r), t_s]);
        let normal = normal * (1.0 / normal.space_norm());
        Ok(RayFan { p: *p, toward_foot, across, normal })
    }

    /// Whether the ray leaving `p` at angle `theta` from `PS` meets the line.
    ///
    /// The ray `P cosh(s/r) + r u sinh(s/r)` crosses the plane of the line
    /// where `tanh(s/r) = -<P,n> / (r <u,n>)`; it meets the line iff that
    /// ratio lies in `(0, 1)`.
    fn meets(&self, theta: f64) -> bool {
        let (sn, cs) = theta.sin_cos();
        let u = self.toward_foot * cs + self.across * sn;
        let pn = self.p.coords().m(&self.normal);
        let un = u.m(&self.normal);
        un < 0.0 && self.p.r() * (-un) > pn
    }
}

/// Boundary angle between secants and non-secants through `p`, found by
/// bisection on the ray angle measured from the perpendicular `PS`.
///
/// Uses only ray/plane incidence; it never evaluates the closed-form Π(d).
pub fn secant_boundary_oracle(p: &HPoint, l: &Geodesic, tolerance: f64) -> Result<f64> {
    if !(tolerance > 0.0) {
        return Err(GeomError::OutOfRange { what: "tolerance", value: tolerance });
    }
    let fan = RayFan::new(p, l)?;
    let mut lo = tolerance.min(FRAC_PI_2 / 4.0);
    let mut hi = FRAC_PI_2 - lo;
    if fan.meets(hi) {
        return Ok(hi);
    }
    if !fan.meets(lo) {
        return Ok(lo);
    }
    for _ in 0..60 {
        if hi - lo <= tolerance {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if fan.meets(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Line through `p` making angle `theta` with the perpendicular `PS` to `l`
/// (on the forward side of `l`).
pub fn ray_line(p: &HPoint, l: &Geodesic, theta: f64) -> Result<Geodesic> {
    let fan = RayFan::new(p, l)?;
    let (sn, cs) = theta.sin_cos();
    Ok(Geodesic::new(Tangent::from_any(*p, fan.toward_foot * cs + fan.across * sn)?))
}

/// A line lying inside the angle `ABC` and meeting neither side: the line
/// joining the ideal ends of the rays `BA` and `BC`.
pub fn line_avoiding_angle(b: &HPoint, a: &HPoint, c: &HPoint) -> Result<Geodesic> {
    let angle = angle_at(b, a, c)?;
    if angle <= tol::ON_LINE || angle >= PI - tol::ON_LINE {
        return Err(GeomError::Degenerate("collinear angle"));
    }
    let xa = Geodesic::through(b, a)?.forward_end();
    let xc = Geodesic::through(b, c)?.forward_end();
    Geodesic::between_ideal(&xa, &xc, b.curvature())
}

/// Whether `x` lies strictly inside the angle `ABC` (in the plane of the angle).
pub fn strictly_inside_angle(b: &HPoint, a: &HPoint, c: &HPoint, x: &HPoint) -> Result<bool> {
    let side_normal = |toward: &HPoint, other: &HPoint| -> Result<MVec> {
        let d = b.direction_to(toward)?;
        let n = reject(&other.coords(), &[b.coords() * (1.0 / b.r()), d]);
        let len = n.space_norm();
        if !(len > tol::DISTINCT) {
            return Err(GeomError::Degenerate("collinear angle"));
        }
        Ok(n * (1.0 / len))
    };
    let n_ba = side_normal(a, c)?;
    let n_bc = side_normal(c, a)?;
    let v = x.coords();
    Ok(v.m(&n_ba) > 0.0 && v.m(&n_bc) > 0.0)
}

/// Standard configuration: `l` is the geodesic through the origin along
/// `e1`, and `p` lies at distance `d` from it along `e2`.
pub fn configuration_at_distance(d: f64, n: usize, k: Curvature) -> Result<(HPoint, Geodesic)> {
    let o = HPoint::origin(n, k)?;
    let l = Geodesic::from_parts(o, MVec::axis(n + 1, 1))?;
    let p = o.exp(&MVec::axis(n + 1, 2), d);
    Ok((p, l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::Isometry;
    use crate::sample;
    use approx::assert_abs_diff_eq;
    use core::f64::consts::LN_2;

    #[test]
    fn pi_examples() {
        let k = Curvature::UNIT;
        assert_eq!(angle_of_parallelism(0.0, k).unwrap(), FRAC_PI_2);
        assert_abs_diff_eq!(angle_of_parallelism(LN_2, k).unwrap(), 0.927_295_218, epsilon = 1e-9);
        let a1 = angle_of_parallelism(1.0, k).unwrap();
        // sin Π(d) cosh d = 1, from tan(Π/2) = e^-d
        assert_abs_diff_eq!(a1.sin() * 1f64.cosh(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a1, 0.705_026_844, epsilon = 1e-9);
        assert!(angle_of_parallelism(-0.1, k).is_err());
    }

    #[test]
    fn general_base_examples() {
        let e = core::f64::consts::E;
        let k = Curvature::UNIT;
        for d in [0.0, 0.3, 2.0] {
            assert_abs_diff_eq!(
                angle_of_parallelism_general(d, e).unwrap(),
                angle_of_parallelism(d, k).unwrap(),
                epsilon = 1e-15
            );
        }
        assert_abs_diff_eq!(
            angle_of_parallelism_general(1.0, 2.0).unwrap(),
            2.0 * 0.5f64.atan(),
            epsilon = 1e-15
        );
        assert!(angle_of_parallelism_general(1.0, 1.0).is_err());
        assert!(angle_of_parallelism_general(1.0, 0.5).is_err());
    }

    #[test]
    fn secant_through_common_point() {
        let mut rng = sample::rng(1);
        for n in [2, 3] {
            let k = Curvature::new(1.4).unwrap();
            let x = sample::point(n, k, 2.0, &mut rng);
            let l1 = Geodesic::new(sample::tangent(&x, &mut rng)).rebased(0.3);
            let l2 = Geodesic::new(sample::tangent(&x, &mut rng)).rebased(-1.1);
            match classify(&l1, &l2).unwrap() {
                LineRelation::Secant { point } => {
                    assert!(point.distance(&x).unwrap() < 1e-9, "n = {n}");
                }
                other => panic!("expected secant, got {other:?}"),
            }
        }
    }

    #[test]
    fn identical_carriers_rejected() {
        let (_, l) = configuration_at_distance(1.0, 2, Curvature::UNIT).unwrap();
        assert!(classify(&l, &l.rebased(2.0)).is_err());
        assert!(classify(&l, &l.reversed()).is_err());
    }

    #[test]
    fn ultraparallel_feet_are_perpendicular() {
        let k = Curvature::UNIT;
        let (p, l) = configuration_at_distance(1.2, 2, k).unwrap();
        // perpendicular to PS at P: Euclid's parallel, ultraparallel here
        let m = ray_line(&p, &l, FRAC_PI_2).unwrap();
        match classify(&l, &m).unwrap() {
            LineRelation::Ultraparallel { feet, distance } => {
                assert_abs_diff_eq!(distance, 1.2, epsilon = 1e-12);
                check_common_perpendicular(&l, &m, feet);
            }
            other => panic!("expected ultraparallel, got {other:?}"),
        }
    }

    fn check_common_perpendicular(l1: &Geodesic, l2: &Geodesic, feet: (HPoint, HPoint)) {
        assert!(l1.contains(&feet.0) && l2.contains(&feet.1));
        let o1 = l1.point_at(l1.param_of(&feet.0) + 1.0);
        let o2 = l2.point_at(l2.param_of(&feet.1) + 1.0);
        assert_abs_diff_eq!(angle_at(&feet.0, &feet.1, &o1).unwrap(), FRAC_PI_2, epsilon = 1e-9);
        assert_abs_diff_eq!(angle_at(&feet.1, &feet.0, &o2).unwrap(), FRAC_PI_2, epsilon = 1e-9);
    }

    #[test]
    fn skew_lines_in_space() {
        let k = Curvature::new(0.8).unwrap();
        let o = HPoint::origin(3, k).unwrap();
        let l1 = Geodesic::from_parts(o, MVec::axis(4, 1)).unwrap();
        let q = o.exp(&MVec::axis(4, 3), 0.9);
        let d = q.to_tangent(&(MVec::axis(4, 1) + MVec::axis(4, 2)));
        let l2 = Geodesic::from_parts(q, d * (1.0 / d.space_norm())).unwrap().rebased(0.4);
        match classify(&l1, &l2).unwrap() {
            LineRelation::Ultraparallel { feet, distance } => {
                assert_abs_diff_eq!(distance, 0.9, epsilon = 1e-10);
                check_common_perpendicular(&l1, &l2, feet);
            }
            other => panic!("expected ultraparallel, got {other:?}"),
        }
    }

    #[test]
    fn boundary_parallels_round_trip() {
        let mut rng = sample::rng(9);
        for n in [2, 3] {
            for _ in 0..20 {
                let k = Curvature::new(0.5 + 2.0 * rand::Rng::gen::<f64>(&mut rng)).unwrap();
                let iso = Isometry::random(n, 1.5, &mut rng);
                let d = 0.05 + 3.0 * rand::Rng::gen::<f64>(&mut rng);
                let (p, l) = configuration_at_distance(d * k.r(), n, k).unwrap();
                let (p, l) = (iso.apply(&p), iso.apply_geodesic(&l).rebased(0.7));
                let bp = boundary_parallels(&p, &l).unwrap();
                let pi = angle_of_parallelism(bp.distance, k).unwrap();
                for (g, want) in [(bp.left, Side::Left), (bp.right, Side::Right)] {
                    let measured = angle_at(&p, &bp.foot, &g.point_at(1.0)).unwrap();
                    assert_abs_diff_eq!(measured, pi, epsilon = 1e-10);
                    match classify(&l, &g).unwrap() {
                        LineRelation::BoundaryParallel { side, .. } => assert_eq!(side, want),
                        other => panic!("expected parallel, got {other:?}"),
                    }
                }
                // the two parallels lie on opposite sides of PS
                let total = angle_at(&p, &bp.left.point_at(1.0), &bp.right.point_at(1.0)).unwrap();
                assert_abs_diff_eq!(total, 2.0 * pi, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn parallels_merge_in_the_flat_limit() {
        let d = 1.0;
        let mut last = 0.0;
        for r in [1.0, 10.0, 100.0, 1e4] {
            let k = Curvature::new(r).unwrap();
            let (p, l) = configuration_at_distance(d, 2, k).unwrap();
            let bp = boundary_parallels(&p, &l).unwrap();
            let a = angle_at(&p, &bp.foot, &bp.left.point_at(1.0)).unwrap();
            assert!(a > last);
            last = a;
        }
        assert!(FRAC_PI_2 - last < 1e-3);
    }

    #[test]
    fn oracle_matches_closed_form() {
        let k = Curvature::UNIT;
        let (p, l) = configuration_at_distance(LN_2, 2, k).unwrap();
        let theta = secant_boundary_oracle(&p, &l, 1e-8).unwrap();
        assert_abs_diff_eq!(theta, 0.927_295_218, epsilon = 1e-8);
        assert!(secant_boundary_oracle(&p, &l, 0.0).is_err());
        assert!(secant_boundary_oracle(&l.point_at(0.3), &l, 1e-8).is_err());
    }

    #[test]
    fn oracle_monotone_and_limits() {
        let k = Curvature::UNIT;
        let mut last = FRAC_PI_2;
        for i in 0..24 {
            let d = 0.01 * 1.3f64.powi(i);
            let (p, l) = configuration_at_distance(d, 2, k).unwrap();
            let t = secant_boundary_oracle(&p, &l, 1e-10).unwrap();
            assert!(t < last);
            last = t;
        }
        let (p, l) = configuration_at_distance(1e-6, 2, k).unwrap();
        assert!(FRAC_PI_2 - secant_boundary_oracle(&p, &l, 1e-10).unwrap() < 1e-5);
    }

    #[test]
    fn lines_between_parallel_and_perpendicular_do_not_meet() {
        let k = Curvature::UNIT;
        let (p, l) = configuration_at_distance(0.8, 2, k).unwrap();
        let pi = angle_of_parallelism(0.8, k).unwrap();
        for i in 1..20 {
            let theta = pi + (FRAC_PI_2 - pi) * f64::from(i) / 20.0;
            let m = ray_line(&p, &l, theta).unwrap();
            assert!(matches!(classify(&l, &m).unwrap(), LineRelation::Ultraparallel { .. }));
            let below = ray_line(&p, &l, pi * f64::from(i) / 20.0).unwrap();
            assert!(matches!(classify(&l, &below).unwrap(), LineRelation::Secant { .. }));
        }
    }

    #[test]
    fn avoiding_line_symmetric_for_symmetric_angle() {
        let k = Curvature::UNIT;
        let b = HPoint::origin(2, k).unwrap();
        let a = HPoint::from_spatial(&[1.0, 1.0], k).unwrap();
        let c = HPoint::from_spatial(&[1.0, -1.0], k).unwrap();
        let g = line_avoiding_angle(&b, &a, &c).unwrap();
        // bisector is the x1 axis; the line crosses it perpendicularly at its base
        assert_abs_diff_eq!(g.base().coords()[2], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(g.dir()[1], 0.0, epsilon = 1e-15);
        for s in [-3.0, -0.2, 0.0, 1.0, 4.0] {
            let x = g.point_at(s);
            assert!(strictly_inside_angle(&b, &a, &c, &x).unwrap());
        }
        let la = Geodesic::through(&b, &a).unwrap();
        assert!(classify(&la, &g).unwrap().is_boundary_parallel());
    }

    #[test]
    fn avoiding_line_for_tiny_angle() {
        let k = Curvature::UNIT;
        let b = HPoint::origin(2, k).unwrap();
        let a = b.exp(&MVec::new3(0.0, 1.0, 0.0), 1.0);
        let c = b.exp(&MVec::new3(0.0, 0.01f64.cos(), 0.01f64.sin()), 1.0);
        let g = line_avoiding_angle(&b, &a, &c).unwrap();
        for i in 0..=100 {
            let x = g.point_at(-6.0 + 12.0 * f64::from(i) / 100.0);
            assert!(strictly_inside_angle(&b, &a, &c, &x).unwrap());
        }
        assert!(line_avoiding_angle(&b, &a, &b.exp(&MVec::new3(0.0, 1.0, 0.0), 2.0)).is_err());
    }

    #[test]
    fn pencil_contains_ideal_point() {
        let k = Curvature::new(2.5).unwrap();
        let xi = IdealPoint::from_direction(&[0.3, -1.0, 0.2]).unwrap();
        let p = HPoint::from_spatial(&[1.0, 2.0, -0.5], k).unwrap();
        let g = pencil_of(&xi, &p).unwrap();
        assert!(g.forward_end().approx_eq(&xi, 1e-12));
        assert_eq!(g.base(), p);
    }
}
