//! Horocycles (H²) and horospheres (H³).
//!
//! A horosphere centred at the ideal point ξ is the level set
//! `{x : -<x, ξ> = s r}` of the Busemann function toward ξ. It is orthogonal
//! to every line of the pencil ending at ξ, and its induced metric is flat:
//! the parabolic chart
//!
//! ```text
//! embed(u) = p + Σ uᵢ eᵢ + |u|² / (2r²) · ξ̂,    ξ̂ = ξ r / s
//! ```
//!
//! is an isometry from Euclidean coordinates onto the surface. Straight
//! chart lines are horocycles cut out by planes through ξ.

use alloc::vec::Vec;
use core::f64::consts::PI;

// Needed without std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::error::{GeomError, Result};
use crate::minkowski::{
    angle_at, angle_between, complete_basis, distance, reject, Curvature, HPoint, IdealPoint, MVec,
};
use crate::sample;

/// Relative tolerance for surface membership.
pub const ON_SURFACE: f64 = 1e-9;

/// A point of a chart. H² charts use only the first coordinate.
pub type ChartPoint = [f64; 2];

/// The horosphere `{x : -<x, ξ> = level r}`.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Horosphere {
    xi: IdealPoint,
    level: f64,
    k: Curvature,
}

impl Horosphere {
    pub fn new(xi: IdealPoint, level: f64, k: Curvature) -> Result<Self> {
        if !(level > 0.0) || !level.is_finite() {
            return Err(GeomError::OutOfRange { what: "horosphere level", value: level });
        }
        Ok(Horosphere { xi, level, k })
    }

    /// The horosphere centred at `xi` passing through `p`.
    pub fn through(p: &HPoint, xi: &IdealPoint) -> Result<Self> {
        if p.coords().len() != xi.vector().len() {
            return Err(GeomError::DimensionMismatch {
                left: p.coords().len(),
                right: xi.vector().len(),
            });
        }
        let level = -p.coords().m(&xi.vector()) / p.r();
        Horosphere::new(*xi, level, p.curvature())
    }

    pub fn xi(&self) -> IdealPoint {
        self.xi
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn curvature(&self) -> Curvature {
        self.k
    }

    pub fn r(&self) -> f64 {
        self.k.r()
    }

    pub fn dim(&self) -> usize {
        self.xi.vector().hdim()
    }

    /// Null vector ξ̂ along ξ scaled so that `-<x, ξ̂> = r²` on the surface.
    pub fn scaled_null(&self) -> MVec {
        self.xi.vector() * (self.r() / self.level)
    }

    /// Busemann level `-<x, ξ> / r` of an arbitrary point.
    pub fn level_of(&self, x: &HPoint) -> f64 {
        -x.coords().m(&self.xi.vector()) / x.r()
    }

    /// Relative deviation of `x` from the surface.
    pub fn residual(&self, x: &HPoint) -> f64 {
        (self.level_of(x) / self.level - 1.0).abs()
    }

    pub fn contains(&self, x: &HPoint) -> bool {
        x.curvature() == self.k
            && x.coords().len() == self.xi.vector().len()
            && self.residual(x) <= ON_SURFACE
    }

    fn check_on(&self, x: &HPoint) -> Result<()> {
        if x.coords().len() != self.xi.vector().len() {
            return Err(GeomError::DimensionMismatch {
                left: x.coords().len(),
                right: self.xi.vector().len(),
            });
        }
        if x.curvature() != self.k {
            return Err(GeomError::CurvatureMismatch { left: x.r(), right: self.r() });
        }
        let residual = self.residual(x);
        if residual > ON_SURFACE {
            return Err(GeomError::OffSurface { residual });
        }
        Ok(())
    }

    /// The standard chart: based where the line from the model origin toward
    /// ξ crosses the surface, frame completed from the coordinate axes.
    pub fn chart(&self) -> HoroChart {
        let r = self.r();
        let n = self.dim();
        let xi = self.xi.vector();
        let o = MVec::axis(n + 1, 0) * r;
        let mut d = xi;
        d[0] = 0.0;
        // -<o cosh(t/r) + r d sinh(t/r), ξ> = r exp(-t/r)
        let t = -r * self.level.ln();
        let base = HPoint::snap(o * (t / r).cosh() + d * (r * (t / r).sinh()), self.k);
        let null = self.scaled_null();
        let q0 = base.coords() * (1.0 / r);
        let q1 = (null - base.coords()) * (1.0 / r);
        let found = complete_basis(&[q0, q1]);
        let mut frame = [MVec::zero(n + 1); 2];
        frame[..found.len()].copy_from_slice(&found);
        HoroChart { h: *self, base, frame }
    }

    /// Length of the shortest path within the surface.
    pub fn intrinsic_distance(&self, x: &HPoint, y: &HPoint) -> Result<f64> {
        self.check_on(x)?;
        self.check_on(y)?;
        let c = self.chart();
        let (a, b) = (c.coords_of(x), c.coords_of(y));
        Ok(chart_distance(a, b))
    }

    /// Point of the surface on the plane through `x`, `y` and ξ, at
    /// parameter `lambda` (0 at `x`, 1 at `y`). Does not use a chart.
    ///
    /// With `z = (1-λ) x + λ y + γ ξ̂`, staying on the surface forces
    /// `γ = λ(1-λ)(r² + <x,y>) / r²`.
    fn section_point(&self, x: &MVec, y: &MVec, lambda: f64) -> HPoint {
        let r2 = self.r() * self.r();
        let gamma = lambda * (1.0 - lambda) * (r2 + x.m(y)) / r2;
        let z = *x * (1.0 - lambda) + *y * lambda + self.scaled_null() * gamma;
        HPoint::from_exact(z, self.k)
    }

    /// Sum of ambient distances along a `segments`-piece polyline inscribed
    /// in the horocycle from `x` to `y`.
    pub fn polyline_length(&self, x: &HPoint, y: &HPoint, segments: usize) -> Result<f64> {
        self.check_on(x)?;
        self.check_on(y)?;
        let (xv, yv) = (x.coords(), y.coords());
        let mut prev = *x;
        let mut total = 0.0;
        for i in 1..=segments.max(1) {
            let next = self.section_point(&xv, &yv, i as f64 / segments.max(1) as f64);
            total += distance(&prev, &next)?;
            prev = next;
        }
        Ok(total)
    }

    /// Path-length oracle for the intrinsic distance: polylines of 64, 128
    /// and 256 chords, extrapolated twice (chord error is even in 1/N).
    pub fn discretized_distance(&self, x: &HPoint, y: &HPoint) -> Result<f64> {
        let l1 = self.polyline_length(x, y, 64)?;
        let l2 = self.polyline_length(x, y, 128)?;
        let l3 = self.polyline_length(x, y, 256)?;
        let r1 = (4.0 * l2 - l1) / 3.0;
        let r2 = (4.0 * l3 - l2) / 3.0;
        Ok((16.0 * r2 - r1) / 15.0)
    }

    /// Unit tangent at `x` of the pencil line running toward ξ.
    pub fn pencil_direction(&self, x: &HPoint) -> MVec {
        let v = x.to_tangent(&self.xi.vector());
        v * (1.0 / v.space_norm())
    }
}

/// Euclidean distance of chart coordinates.
pub fn chart_distance(a: ChartPoint, b: ChartPoint) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

/// A flat chart of a horosphere.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HoroChart {
    h: Horosphere,
    base: HPoint,
    frame: [MVec; 2],
}

impl HoroChart {
    pub fn horosphere(&self) -> Horosphere {
        self.h
    }

    pub fn base(&self) -> HPoint {
        self.base
    }

    /// Chart dimension: 1 for horocycles, 2 for horospheres.
    pub fn dim(&self) -> usize {
        self.h.dim() - 1
    }

    pub fn frame(&self) -> &[MVec] {
        &self.frame[..self.dim()]
    }

    fn vec_of(&self, u: ChartPoint) -> MVec {
        let r = self.h.r();
        let mut x = self.base.coords();
        let mut q = 0.0;
        for (e, ui) in self.frame().iter().zip(u) {
            x += *e * ui;
            q += ui * ui;
        }
        x + self.h.scaled_null() * (q / (2.0 * r * r))
    }

    pub fn embed(&self, u: ChartPoint) -> HPoint {
        HPoint::from_exact(self.vec_of(u), self.h.k)
    }

    /// Chart coordinates `uᵢ = <x, eᵢ>` of a point of the surface.
    pub fn coords_of(&self, x: &HPoint) -> ChartPoint {
        let mut u = [0.0; 2];
        for (ui, e) in u.iter_mut().zip(self.frame()) {
            *ui = x.coords().m(e);
        }
        u
    }

    /// Derivative of `embed` at `u` in chart direction `v`.
    pub fn push_forward(&self, u: ChartPoint, v: ChartPoint) -> MVec {
        let r = self.h.r();
        let mut w = MVec::zero(self.base.coords().len());
        let mut dot = 0.0;
        for (i, e) in self.frame().iter().enumerate() {
            w += *e * v[i];
            dot += u[i] * v[i];
        }
        w + self.h.scaled_null() * (dot / (r * r))
    }

    /// The chart based at `embed(u0)` obtained by a parabolic translation:
    /// `recentered(u0).embed(u) = embed(u0 + u)`.
    pub fn recentered(&self, u0: ChartPoint) -> HoroChart {
        let r = self.h.r();
        let null = self.h.scaled_null();
        let mut frame = self.frame;
        for (i, e) in frame.iter_mut().enumerate().take(self.dim()) {
            *e = *e + null * (u0[i] / (r * r));
        }
        HoroChart { h: self.h, base: self.embed(u0), frame }
    }

    /// Largest deviation of the frame from the chart conditions:
    /// `<eᵢ,eⱼ> = δᵢⱼ`, `<eᵢ,p> = 0`, `<eᵢ,ξ̂> = 0`, `-<p,ξ̂> = r²`.
    pub fn frame_residual(&self) -> f64 {
        let r = self.h.r();
        let p = self.base.coords();
        let null = self.h.scaled_null();
        let mut worst = (-p.m(&null) / (r * r) - 1.0).abs();
        for (i, e) in self.frame().iter().enumerate() {
            for (j, f) in self.frame().iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((e.m(f) - target).abs());
            }
            worst = worst.max(e.m(&p).abs() / r).max(e.m(&null).abs() / r);
        }
        worst
    }

    /// Unit normal (within the tangent space) of the surface at `embed(u)`,
    /// from central-difference surface tangents.
    pub fn fd_normal(&self, u: ChartPoint, step: f64) -> MVec {
        let x = self.embed(u);
        let mut basis = Vec::with_capacity(3);
        basis.push(x.coords() * (1.0 / self.h.r()));
        for i in 0..self.dim() {
            let mut up = u;
            let mut dn = u;
            up[i] += step;
            dn[i] -= step;
            let t = (self.vec_of(up) - self.vec_of(dn)) * (0.5 / step);
            let t = reject(&t, &basis);
            basis.push(t * (1.0 / t.space_norm()));
        }
        let n = complete_basis(&basis);
        n[0]
    }

    /// `1 - |cos|` of the angle between the surface normal at `embed(u)` and
    /// the pencil line through that point.
    pub fn normal_deviation(&self, u: ChartPoint) -> f64 {
        let x = self.embed(u);
        let n = self.fd_normal(u, 1e-4);
        let t = self.h.pencil_direction(&x);
        1.0 - n.m(&t).abs()
    }
}

/// A segment of a straight chart line, i.e. an arc of a horocycle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HorocycleArc {
    chart: HoroChart,
    start: ChartPoint,
    end: ChartPoint,
}

impl HorocycleArc {
    pub fn chart(&self) -> &HoroChart {
        &self.chart
    }

    pub fn start(&self) -> ChartPoint {
        self.start
    }

    pub fn end(&self) -> ChartPoint {
        self.end
    }

    /// Chart point at parameter `t` (0 at `start`, 1 at `end`; any real `t`
    /// continues along the full horocycle).
    pub fn chart_at(&self, t: f64) -> ChartPoint {
        [
            self.start[0] + t * (self.end[0] - self.start[0]),
            self.start[1] + t * (self.end[1] - self.start[1]),
        ]
    }

    pub fn point_at(&self, t: f64) -> HPoint {
        self.chart.embed(self.chart_at(t))
    }

    /// Ambient tangent vector `d/dt point_at(t)`.
    pub fn tangent_at(&self, t: f64) -> MVec {
        let v = [self.end[0] - self.start[0], self.end[1] - self.start[1]];
        self.chart.push_forward(self.chart_at(t), v)
    }

    pub fn length(&self) -> f64 {
        chart_distance(self.start, self.end)
    }

    /// Unit normal of the plane through the arc and ξ. `None` in H², where
    /// that plane is the whole plane.
    pub fn section_normal(&self) -> Option<MVec> {
        if self.chart.dim() < 2 {
            return None;
        }
        let r = self.chart.h.r();
        let x0 = self.point_at(0.0).coords();
        let w = self.tangent_at(0.0);
        let q0 = x0 * (1.0 / r);
        let q1 = w * (1.0 / w.space_norm());
        let q2 = reject(&self.chart.h.scaled_null(), &[q0, q1]);
        let q2 = q2 * (1.0 / q2.space_norm());
        Some(complete_basis(&[q0, q1, q2])[0])
    }

    /// Largest `|<x, n>| / |x|` over `samples` points with `t` in `[-2, 3]`:
    /// zero when the arc lies in one linear 3-flat containing ξ.
    pub fn section_residual(&self, samples: usize) -> f64 {
        let Some(n) = self.section_normal() else {
            return 0.0;
        };
        let mut worst: f64 = n.m(&self.chart.h.xi().vector()).abs();
        for i in 0..samples {
            let t = -2.0 + 5.0 * i as f64 / (samples.max(2) - 1) as f64;
            let x = self.point_at(t).coords();
            worst = worst.max(x.m(&n).abs() / x.euclid_norm());
        }
        worst
    }
}

/// The horocycle through chart point `point` in chart direction `direction`,
/// as the arc from `point` to `point + direction`.
pub fn horocycle_section(
    chart: &HoroChart,
    point: ChartPoint,
    direction: ChartPoint,
) -> Result<HorocycleArc> {
    let mut dir = direction;
    if chart.dim() < 2 {
        dir[1] = 0.0;
    }
    if !(dir[0].hypot(dir[1]) > 0.0) {
        return Err(GeomError::Degenerate("zero chart direction"));
    }
    let end = [point[0] + dir[0], point[1] + dir[1]];
    Ok(HorocycleArc { chart: *chart, start: point, end })
}

/// Parameter where the horocycle `moving` crosses the plane of `fixed`, from
/// the affine function `t ↦ <moving(t), n>`. `None` if it never does.
pub fn crossing(fixed: &HorocycleArc, moving: &HorocycleArc) -> Option<(f64, HPoint)> {
    let n = fixed.section_normal()?;
    let (x0, x1) = (moving.point_at(0.0).coords(), moving.point_at(1.0).coords());
    let (f0, f1) = (x0.m(&n), x1.m(&n));
    let slope = f1 - f0;
    // rounding in the two products, not the values themselves, sets the noise floor
    let noise = 1e-12 * (x0.euclid_norm() + x1.euclid_norm()) * n.euclid_norm();
    if slope.abs() <= noise {
        return None;
    }
    let t = -f0 / slope;
    Some((t, moving.point_at(t)))
}

/// Minimal hyperbolic distance from sampled points of `moving` (t in
/// `[-span, span]`) to the plane of `fixed`.
pub fn min_plane_distance(fixed: &HorocycleArc, moving: &HorocycleArc, span: f64) -> f64 {
    let Some(n) = fixed.section_normal() else {
        return 0.0;
    };
    let r = fixed.chart.h.r();
    (0..=64)
        .map(|i| -span + 2.0 * span * i as f64 / 64.0)
        .map(|t| r * (moving.point_at(t).coords().m(&n).abs() / r).asinh())
        .fold(f64::INFINITY, f64::min)
}

/// Outcome of [`verify_ap`].
#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ApReport {
    pub samples: usize,
    pub failures: usize,
    /// Smallest distance between a drawn parallel and the plane of its line.
    pub min_separation: f64,
    /// Largest surface/plane residual of the crossings found for perturbed parallels.
    pub max_crossing_residual: f64,
}

/// Number of candidate directions tried through the point in [`verify_ap`].
const AP_FAN: usize = 180;

/// Checks the parallel axiom on a horosphere of H³.
///
/// For each sample a random chart line `L` and a point `P` off it are drawn.
/// In the chart, exactly one direction of a fan through `P` (which contains
/// the direction of `L`) must miss `L`. On the surface, the embedded parallel
/// must keep away from the plane of `L`, and the parallel turned by 1e-3 rad
/// must cross `L` at a point of both the surface and the plane.
pub fn verify_ap<R: Rng + ?Sized>(h: &Horosphere, samples: usize, rng: &mut R) -> Result<ApReport> {
    if h.dim() != 3 {
        return Err(GeomError::WrongGeometry("the parallel axiom check needs a horosphere of H³"));
    }
    let chart = h.chart();
    let mut report = ApReport { samples, min_separation: f64::INFINITY, ..ApReport::default() };
    for _ in 0..samples {
        let a = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let phi: f64 = rng.gen_range(-PI..PI);
        let v = [phi.cos(), phi.sin()];
        let off: f64 = rng.gen_range(0.1..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let along: f64 = rng.gen_range(-2.0..2.0);
        let p = [a[0] + along * v[0] - off * v[1], a[1] + along * v[1] + off * v[0]];
        let line = horocycle_section(&chart, a, v)?;

        let mut misses = 0;
        let offset = rng.gen_range(0..AP_FAN);
        for j in 0..AP_FAN {
            let theta = phi + PI * ((j + offset) % AP_FAN) as f64 / AP_FAN as f64;
            let w = [theta.cos(), theta.sin()];
            if (v[0] * w[1] - v[1] * w[0]).abs() <= 1e-12 {
                misses += 1;
            }
        }

        let parallel = horocycle_section(&chart, p, v)?;
        let separation = min_plane_distance(&line, &parallel, 50.0);
        let parallel_meets = crossing(&line, &parallel).is_some();

        let tilted = horocycle_section(&chart, p, [(phi + 1e-3).cos(), (phi + 1e-3).sin()])?;
        let crossing_ok = match crossing(&line, &tilted) {
            Some((_, x)) => {
                let n = line.section_normal().expect("H³ section");
                let res = (x.coords().m(&n).abs() / x.coords().euclid_norm()).max(h.residual(&x));
                report.max_crossing_residual = report.max_crossing_residual.max(res);
                res < 1e-6
            }
            None => false,
        };

        report.min_separation = report.min_separation.min(separation);
        if misses != 1 || parallel_meets || !(separation > 1e-3) || !crossing_ok {
            report.failures += 1;
        }
    }
    Ok(report)
}

/// Measurements of a triangle drawn on a horosphere with horocycle sides.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HoroTriangle {
    /// Side lengths opposite the three vertices.
    pub sides: [f64; 3],
    /// Surface angles at the three vertices.
    pub angles: [f64; 3],
    /// `|Σ angles - π|`.
    pub angle_sum_residual: f64,
    /// Worst `|c² - a² - b² + 2ab cos C|` over the three vertices.
    pub cosine_law_residual: f64,
    /// Angle sum of the triangle on the same vertices with ambient geodesic sides.
    pub ambient_angle_sum: f64,
}

/// Smallest chart area accepted by [`euclidean_triangle_check`].
pub const MIN_TRIANGLE_AREA: f64 = 1e-6;

/// Measures a horocyclic triangle on the surface and compares it with
/// Euclidean trigonometry. Angles come from the embedded tangents of the
/// sides, side lengths from the intrinsic metric.
pub fn euclidean_triangle_check(
    chart: &HoroChart,
    u: [ChartPoint; 3],
) -> Result<HoroTriangle> {
    if chart.dim() < 2 {
        return Err(GeomError::WrongGeometry("triangles need a horosphere of H³"));
    }
    let area = 0.5
        * ((u[1][0] - u[0][0]) * (u[2][1] - u[0][1]) - (u[2][0] - u[0][0]) * (u[1][1] - u[0][1]))
            .abs();
    if !(area > MIN_TRIANGLE_AREA) {
        return Err(GeomError::Degenerate("triangle area below threshold"));
    }
    let h = chart.horosphere();
    let x = u.map(|c| chart.embed(c));
    let mut sides = [0.0; 3];
    let mut angles = [0.0; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        sides[i] = h.intrinsic_distance(&x[j], &x[k])?;
        let to_j = horocycle_section(chart, u[i], [u[j][0] - u[i][0], u[j][1] - u[i][1]])?;
        let to_k = horocycle_section(chart, u[i], [u[k][0] - u[i][0], u[k][1] - u[i][1]])?;
        angles[i] = angle_between(&to_j.tangent_at(0.0), &to_k.tangent_at(0.0));
    }
    let angle_sum_residual = (angles.iter().sum::<f64>() - PI).abs();
    let mut cosine_law_residual: f64 = 0.0;
    for i in 0..3 {
        let (a, b, c) = (sides[(i + 1) % 3], sides[(i + 2) % 3], sides[i]);
        let res = (c * c - a * a - b * b + 2.0 * a * b * angles[i].cos()).abs();
        cosine_law_residual = cosine_law_residual.max(res);
    }
    let ambient_angle_sum = angle_at(&x[0], &x[1], &x[2])?
        + angle_at(&x[1], &x[2], &x[0])?
        + angle_at(&x[2], &x[0], &x[1])?;
    Ok(HoroTriangle { sides, angles, angle_sum_residual, cosine_law_residual, ambient_angle_sum })
}

/// A random horosphere of H^n: uniform centre direction, level in `[0.3, 3]`.
pub fn random_horosphere<R: Rng + ?Sized>(n: usize, k: Curvature, rng: &mut R) -> Result<Horosphere> {
    let d = sample::unit_vector(n, rng);
    let xi = IdealPoint::from_direction(&d[..n])?;
    Horosphere::new(xi, rng.gen_range(0.3..3.0), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::Isometry;
    use crate::parallels::pencil_of;
    use approx::assert_abs_diff_eq;

    fn h3(level: f64, r: f64) -> Horosphere {
        let xi = IdealPoint::from_direction(&[1.0, 0.0, 0.0]).unwrap();
        Horosphere::new(xi, level, Curvature::new(r).unwrap()).unwrap()
    }

    #[test]
    fn level_through_origin() {
        let p = HPoint::origin(3, Curvature::UNIT).unwrap();
        let xi = IdealPoint::new(MVec::new4(1.0, 1.0, 0.0, 0.0)).unwrap();
        let h = Horosphere::through(&p, &xi).unwrap();
        assert_eq!(h.level(), 1.0);
        assert!(h.contains(&p));
    }

    #[test]
    fn chart_base_and_frame() {
        for (level, r) in [(1.0, 1.0), (0.4, 2.5), (2.7, 0.5)] {
            let c = h3(level, r).chart();
            assert!(c.frame_residual() < 1e-12, "{}", c.frame_residual());
            assert!((c.embed([0.0, 0.0]).coords() - c.base().coords()).max_abs() < 1e-15);
            assert!(c.horosphere().contains(&c.base()));
        }
    }

    #[test]
    fn grid_on_sheet_and_surface() {
        let h = h3(1.3, 1.0);
        let c = h.chart();
        let level = h.level_of(&c.base());
        for i in 0..11 {
            for j in 0..11 {
                let u = [-3.0 + 0.6 * i as f64, -3.0 + 0.6 * j as f64];
                let x = c.vec_of(u);
                assert!((x.m2() + 1.0).abs() < 1e-12);
                let y = c.embed(u);
                assert_abs_diff_eq!(h.level_of(&y), level, epsilon = 1e-12);
                let back = c.coords_of(&y);
                assert_abs_diff_eq!(back[0], u[0], epsilon = 1e-12);
                assert_abs_diff_eq!(back[1], u[1], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn three_four_five() {
        let h = h3(1.0, 1.0);
        let c = h.chart();
        let x = c.embed([0.0, 0.0]);
        let y = c.embed([3.0, 4.0]);
        assert_eq!(h.intrinsic_distance(&x, &x).unwrap(), 0.0);
        assert_abs_diff_eq!(h.intrinsic_distance(&x, &y).unwrap(), 5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(h.discretized_distance(&x, &y).unwrap(), 5.0, epsilon = 1e-7);
        // the ambient geodesic is a shortcut
        assert!(x.distance(&y).unwrap() < 5.0);
    }

    #[test]
    fn off_surface_rejected() {
        let h = h3(1.0, 1.0);
        let o = HPoint::origin(3, Curvature::UNIT).unwrap();
        let q = o.exp(&MVec::axis(4, 2), 0.5);
        let q = Isometry::boost(3, 1, 0.3).apply(&q);
        assert!(matches!(h.intrinsic_distance(&o, &q), Err(GeomError::OffSurface { .. })));
    }

    #[test]
    fn recentered_chart_is_isometric() {
        let h = h3(0.8, 1.7);
        let c = h.chart();
        let c2 = c.recentered([1.2, -0.7]);
        assert!(c2.frame_residual() < 1e-12);
        let u = [0.4, 2.0];
        let a = c2.embed(u).coords();
        let b = c.embed([1.6, 1.3]).coords();
        assert!((a - b).max_abs() < 1e-12);
        let back = c2.coords_of(&c2.embed(u));
        assert_abs_diff_eq!(back[0], u[0], epsilon = 1e-12);
        assert_abs_diff_eq!(back[1], u[1], epsilon = 1e-12);
    }

    #[test]
    fn normal_follows_pencil() {
        let h = h3(1.5, 1.0);
        let c = h.chart();
        for u in [[0.0, 0.0], [2.0, -1.0], [-3.0, 3.0]] {
            assert!(c.normal_deviation(u) < 1e-9, "{}", c.normal_deviation(u));
            let x = c.embed(u);
            let g = pencil_of(&h.xi(), &x).unwrap();
            assert!(g.forward_end().approx_eq(&h.xi(), 1e-9));
        }
    }

    #[test]
    fn sections_lie_in_planes_through_xi() {
        let c = h3(1.0, 1.0).chart();
        let arc = horocycle_section(&c, [0.5, -1.0], [1.0, 2.0]).unwrap();
        assert!(arc.section_residual(50) < 1e-12);
        assert_abs_diff_eq!(arc.length(), 5f64.sqrt(), epsilon = 1e-15);
        let h = c.horosphere();
        let d = h.intrinsic_distance(&arc.point_at(0.0), &arc.point_at(1.0)).unwrap();
        assert_abs_diff_eq!(d, arc.length(), epsilon = 1e-12);
        assert!(horocycle_section(&c, [0.0, 0.0], [0.0, 0.0]).is_err());
    }

    #[test]
    fn two_lines_through_a_point_meet_once() {
        let c = h3(1.0, 1.0).chart();
        let a = horocycle_section(&c, [1.0, 1.0], [1.0, 0.0]).unwrap();
        let b = horocycle_section(&c, [1.0, 1.0], [0.3, 1.0]).unwrap();
        let (t, x) = crossing(&a, &b).unwrap();
        assert_abs_diff_eq!(t, 0.0, epsilon = 1e-12);
        assert!((x.coords() - a.point_at(0.0).coords()).max_abs() < 1e-12);
    }

    #[test]
    fn ap_holds() {
        let mut rng = sample::rng(5);
        let h = h3(1.0, 1.0);
        let rep = verify_ap(&h, 100, &mut rng).unwrap();
        assert_eq!(rep.failures, 0, "{rep:?}");
        assert!(verify_ap(&random_horosphere(2, Curvature::UNIT, &mut rng).unwrap(), 1, &mut rng)
            .is_err());
    }

    #[test]
    fn right_isosceles() {
        let c = h3(0.9, 1.0).chart();
        let t = euclidean_triangle_check(&c, [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_abs_diff_eq!(t.sides[0], 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(t.angles[0], PI / 2.0, epsilon = 1e-12);
        assert!(t.angle_sum_residual < 1e-9);
        assert!(t.ambient_angle_sum < PI - 1e-3);
        assert!(euclidean_triangle_check(&c, [[0.0, 0.0], [1.0, 0.0], [2.0, 1e-7]]).is_err());
    }

    #[test]
    fn horocycle_in_the_plane() {
        let k = Curvature::new(2.0).unwrap();
        let xi = IdealPoint::from_direction(&[0.6, 0.8]).unwrap();
        let h = Horosphere::new(xi, 0.7, k).unwrap();
        let c = h.chart();
        assert_eq!(c.dim(), 1);
        assert!(c.frame_residual() < 1e-12);
        let x = c.embed([-1.0, 0.0]);
        let y = c.embed([2.5, 0.0]);
        assert_abs_diff_eq!(h.intrinsic_distance(&x, &y).unwrap(), 3.5, epsilon = 1e-12);
        assert_abs_diff_eq!(h.discretized_distance(&x, &y).unwrap(), 3.5, epsilon = 1e-8);
        assert!(c.normal_deviation([1.5, 0.0]) < 1e-9);
        let arc = horocycle_section(&c, [0.0, 0.0], [1.0, 5.0]).unwrap();
        assert_eq!(arc.end(), [1.0, 0.0]);
    }
}
