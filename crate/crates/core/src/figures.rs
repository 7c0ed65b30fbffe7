//! Figure constructions.
//!
//! A figure is a [`Scene`]: primitives produced by the geometry modules, a
//! provenance note for each, and the checks that ran before the scene was
//! returned. A failing check aborts the construction. Hyperbolic scenes live
//! in H² (the H³ figures are cut down to a plane section first) and are drawn
//! through a disk projection; the flat scene is drawn in chart coordinates.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

// Needed without std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{GeomError, Result};
use crate::horosphere::{crossing, horocycle_section, min_plane_distance, Horosphere};
use crate::minkowski::{
    angle_at, angle_between, drop_perpendicular, reject, Curvature, Geodesic, HPoint, IdealPoint, MVec,
};
use crate::parallels::{
    angle_of_parallelism, boundary_parallels, classify, line_avoiding_angle, pencil_of, ray_line,
    secant_boundary_oracle, strictly_inside_angle, witness_residual, LineRelation,
};
use crate::projection::{to_disk, Projection};
use crate::verify::Check;

pub const NAMES: [&str; 8] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"];

/// Geodesics are drawn for arc lengths in `±LINE_SPAN r`.
const LINE_SPAN: f64 = 14.0;
const LINE_SAMPLES: usize = 400;
/// Radius of angle marks in the picture.
const MARK_RADIUS: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Chart {
    /// H² through a disk projection.
    Disk,
    /// Euclidean coordinates in `[-1, 1]²`.
    Flat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Style {
    Primary,
    Secondary,
    Construction,
    Mark,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Anchor {
    Point(HPoint),
    Ideal(IdealPoint),
    Flat([f64; 2]),
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Primitive {
    Point(HPoint),
    Ideal(IdealPoint),
    Segment(HPoint, HPoint),
    Line(Geodesic),
    /// The forward half of a geodesic, from its base point.
    Ray(Geodesic),
    /// Sampled curve, e.g. a horocycle.
    Curve(Vec<HPoint>),
    /// Angle at `vertex` between the directions toward the two points.
    AngleMark { vertex: HPoint, toward: [HPoint; 2], right: bool },
    /// Polyline in the flat chart.
    Flat(Vec<[f64; 2]>),
    Label { at: Anchor, text: String },
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Item {
    pub primitive: Primitive,
    pub style: Style,
    /// The operation that produced the primitive.
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Scene {
    pub name: String,
    pub r: f64,
    pub chart: Chart,
    pub items: Vec<Item>,
    /// Checks run while building the scene; all passed.
    pub checks: Vec<Check>,
}

/// Planar output of a scene, in unit-disk or flat-chart coordinates.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Drawing {
    pub paths: Vec<(Style, Vec<[f64; 2]>)>,
    pub dots: Vec<(Style, [f64; 2])>,
    pub labels: Vec<([f64; 2], String)>,
}

/// Builds a figure by name.
pub fn figure(name: &str, k: Curvature) -> Result<Scene> {
    match name {
        "fig1" => fig1(k),
        "fig2" => fig2(k),
        "fig3" => fig3(k),
        "fig4" => fig4(k),
        "fig5" => fig5(k),
        "fig6" => fig6(k),
        "fig7" => fig7(k),
        "fig8" => fig8(k),
        _ => Err(GeomError::NotFound),
    }
}

struct Builder {
    scene: Scene,
}

impl Builder {
    fn new(name: &str, k: Curvature, chart: Chart) -> Builder {
        Builder {
            scene: Scene { name: name.to_string(), r: k.r(), chart, items: Vec::new(), checks: Vec::new() },
        }
    }

    fn add(&mut self, primitive: Primitive, style: Style, provenance: &str) {
        self.scene.items.push(Item { primitive, style, provenance: provenance.to_string() });
    }

    fn label(&mut self, at: Anchor, text: &str) {
        self.add(Primitive::Label { at, text: text.to_string() }, Style::Mark, "label");
    }

    fn check(&mut self, name: &'static str, residual: f64, tolerance: f64) -> Result<()> {
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        let c = Check::new(name, residual, tolerance);
        let pass = c.pass;
        self.scene.checks.push(c);
        if pass {
            Ok(())
        } else {
            Err(GeomError::Validation { check: name, residual })
        }
    }

    /// Re-validates every point and tangent against the model before handing
    /// the scene out.
    fn finish(mut self) -> Result<Scene> {
        let mut worst: f64 = 0.0;
        for item in &self.scene.items {
            match &item.primitive {
                Primitive::Point(p) | Primitive::Label { at: Anchor::Point(p), .. } => {
                    worst = worst.max(p.sheet_residual())
                }
                Primitive::Segment(a, b) => worst = worst.max(a.sheet_residual()).max(b.sheet_residual()),
                Primitive::Line(g) | Primitive::Ray(g) => worst = worst.max(tangent_residual(g)),
                Primitive::Curve(ps) => worst = ps.iter().fold(worst, |w, p| w.max(p.sheet_residual())),
                Primitive::AngleMark { vertex, toward, .. } => {
                    worst = [vertex, &toward[0], &toward[1]]
                        .iter()
                        .fold(worst, |w, p| w.max(p.sheet_residual()))
                }
                Primitive::Ideal(xi) | Primitive::Label { at: Anchor::Ideal(xi), .. } => {
                    worst = worst.max(xi.vector().m2().abs())
                }
                Primitive::Flat(_) | Primitive::Label { .. } => {}
            }
        }
        self.check("primitives-valid", worst, 1e-9)?;
        Ok(self.scene)
    }
}

fn tangent_residual(g: &Geodesic) -> f64 {
    let (b, v) = (g.base(), g.dir());
    b.sheet_residual()
        .max((v.m2() - 1.0).abs())
        .max((b.coords().m(&v) / b.r()).abs())
}

fn relation_ok(rel: &LineRelation, kind: &str) -> f64 {
    if rel.kind_name() == kind {
        0.0
    } else {
        f64::INFINITY
    }
}

impl Scene {
    /// Planar picture of the scene.
    pub fn draw(&self, kind: Projection) -> Result<Drawing> {
        let mut out = Drawing::default();
        for item in &self.items {
            let style = item.style;
            match &item.primitive {
                Primitive::Point(p) => out.dots.push((style, to_disk(p, kind)?)),
                Primitive::Ideal(xi) => out.dots.push((style, kind.ideal(&xi.vector()))),
                Primitive::Segment(a, b) => {
                    let g = Geodesic::through(a, b)?;
                    let d = a.distance(b)?;
                    let path = (0..=64)
                        .map(|i| to_disk(&g.point_at(d * i as f64 / 64.0), kind))
                        .collect::<Result<_>>()?;
                    out.paths.push((style, path));
                }
                Primitive::Line(g) => out.paths.push((style, line_path(g, kind, true)?)),
                Primitive::Ray(g) => out.paths.push((style, line_path(g, kind, false)?)),
                Primitive::Curve(ps) => {
                    let path = ps.iter().map(|p| to_disk(p, kind)).collect::<Result<_>>()?;
                    out.paths.push((style, path));
                }
                Primitive::AngleMark { vertex, toward, right } => {
                    out.paths.push((style, mark_path(vertex, toward, *right, kind)?));
                }
                Primitive::Flat(path) => out.paths.push((style, path.clone())),
                Primitive::Label { at, text } => {
                    let pos = match at {
                        Anchor::Point(p) => to_disk(p, kind)?,
                        Anchor::Ideal(xi) => kind.ideal(&xi.vector()),
                        Anchor::Flat(q) => *q,
                    };
                    out.labels.push((pos, text.clone()));
                }
            }
        }
        Ok(out)
    }
}

fn line_path(g: &Geodesic, kind: Projection, both_ways: bool) -> Result<Vec<[f64; 2]>> {
    let span = LINE_SPAN * g.r();
    let (fwd, back) = g.ideal_endpoints();
    let mut path = Vec::with_capacity(LINE_SAMPLES + 3);
    let (lo, n) = if both_ways {
        path.push(kind.ideal(&back.vector()));
        (-span, LINE_SAMPLES)
    } else {
        (0.0, LINE_SAMPLES / 2)
    };
    for i in 0..=n {
        path.push(to_disk(&g.point_at(lo + (span - lo) * i as f64 / n as f64), kind)?);
    }
    path.push(kind.ideal(&fwd.vector()));
    Ok(path)
}

fn mark_path(vertex: &HPoint, toward: &[HPoint; 2], right: bool, kind: Projection) -> Result<Vec<[f64; 2]>> {
    let c = to_disk(vertex, kind)?;
    let h = 1e-4 * vertex.r();
    let mut dirs = [[0.0; 2]; 2];
    for (d, t) in dirs.iter_mut().zip(toward) {
        let q = to_disk(&vertex.exp(&vertex.direction_to(t)?, h), kind)?;
        let v = [q[0] - c[0], q[1] - c[1]];
        let n = v[0].hypot(v[1]);
        *d = [v[0] / n, v[1] / n];
    }
    let [u, w] = dirs;
    if right {
        let s = 0.7 * MARK_RADIUS;
        return Ok(vec![
            [c[0] + s * u[0], c[1] + s * u[1]],
            [c[0] + s * (u[0] + w[0]), c[1] + s * (u[1] + w[1])],
            [c[0] + s * w[0], c[1] + s * w[1]],
        ]);
    }
    let a0 = u[1].atan2(u[0]);
    let mut sweep = w[1].atan2(w[0]) - a0;
    if sweep > PI {
        sweep -= 2.0 * PI;
    } else if sweep < -PI {
        sweep += 2.0 * PI;
    }
    Ok((0..=24)
        .map(|i| {
            let a = a0 + sweep * i as f64 / 24.0;
            [c[0] + MARK_RADIUS * a.cos(), c[1] + MARK_RADIUS * a.sin()]
        })
        .collect())
}

/// Base configuration: the line `l` through the point at distance `0.6 r`
/// below the centre, running left to right, and the point `P` at distance
/// `0.6 r` above the centre.
fn base_configuration(k: Curvature) -> Result<(HPoint, Geodesic)> {
    let o = HPoint::origin(2, k)?;
    let r = k.r();
    let below = o.exp(&MVec::new3(0.0, 0.0, -1.0), 0.6 * r);
    let l = Geodesic::from_parts(below, MVec::new3(0.0, 1.0, 0.0))?;
    let p = o.exp(&MVec::new3(0.0, 0.0, 1.0), 0.6 * r);
    Ok((p, l))
}

fn draw_base(b: &mut Builder, p: &HPoint, l: &Geodesic) {
    b.add(Primitive::Line(*l), Style::Primary, "base line l");
    b.add(Primitive::Point(*p), Style::Primary, "point P");
    b.label(Anchor::Point(*p), "P");
    b.label(Anchor::Point(l.point_at(1.5 * l.r())), "l");
}

/// Perpendicular `PS` from `P` to `l`, and the line `m` through `P`
/// perpendicular to `PS`.
fn fig1(k: Curvature) -> Result<Scene> {
    let mut b = Builder::new("fig1", k, Chart::Disk);
    let r = k.r();
    let (p, l) = base_configuration(k)?;
    let foot = drop_perpendicular(&p, &l)?;
    let s = foot.point;
    let m = ray_line(&p, &l, FRAC_PI_2)?;
    draw_base(&mut b, &p, &l);
    b.add(Primitive::Segment(p, s), Style::Primary, "drop_perpendicular(P, l)");
    b.add(Primitive::Point(s), Style::Primary, "foot S");
    b.add(Primitive::Line(m), Style::Secondary, "ray_line(P, l, π/2)");
    let along_l = l.point_at(foot.param + r);
    b.add(Primitive::AngleMark { vertex: s, toward: [p, along_l], right: true }, Style::Mark, "right angle at S");
    b.add(
        Primitive::AngleMark { vertex: p, toward: [s, m.point_at(r)], right: true },
        Style::Mark,
        "right angle at P",
    );
    b.label(Anchor::Point(s), "S");
    b.label(Anchor::Point(m.point_at(1.5 * r)), "m");

    b.check("right-angle-at-S", (angle_at(&s, &p, &along_l)? - FRAC_PI_2).abs(), 1e-10)?;
    b.check("right-angle-at-P", (angle_between(&m.dir(), &p.direction_to(&s)?) - FRAC_PI_2).abs(), 1e-10)?;
    let rel = classify(&l, &m)?;
    b.check("m-ultraparallel-to-l", relation_ok(&rel, "ultraparallel"), 0.5)?;
    b.check("common-perpendicular-witness", witness_residual(&l, &m, &rel)?, 1e-9)?;
    b.finish()
}

/// The two boundary parallels through `P`, each at angle Π(|PS|) from `PS`.
fn fig2(k: Curvature) -> Result<Scene> {
    let mut b = Builder::new("fig2", k, Chart::Disk);
    let r = k.r();
    let (p, l) = base_configuration(k)?;
    let bp = boundary_parallels(&p, &l)?;
    let pi_d = angle_of_parallelism(bp.distance, k)?;
    draw_base(&mut b, &p, &l);
    b.add(Primitive::Segment(p, bp.foot), Style::Construction, "drop_perpendicular(P, l)");
    b.add(Primitive::Point(bp.foot), Style::Primary, "foot S");
    b.label(Anchor::Point(bp.foot), "S");
    let (fwd, back) = l.ideal_endpoints();
    for end in [fwd, back] {
        b.add(Primitive::Ideal(end), Style::Primary, "ideal endpoint of l");
    }
    let mut angle_err: f64 = 0.0;
    let mut gap: f64 = 0.0;
    for g in [bp.left, bp.right] {
        b.add(Primitive::Line(g), Style::Secondary, "boundary_parallels(P, l)");
        b.add(
            Primitive::AngleMark { vertex: p, toward: [bp.foot, g.point_at(r)], right: false },
            Style::Mark,
            "angle Π(d) at P",
        );
        angle_err = angle_err.max((angle_between(&g.dir(), &p.direction_to(&bp.foot)?) - pi_d).abs());
        gap = gap.max(match classify(&l, &g)? {
            LineRelation::BoundaryParallel { shared, .. } => shared.gap(&g.forward_end()),
            _ => f64::INFINITY,
        });
    }
    b.label(Anchor::Point(p.exp(&p.direction_to(&bp.foot)?, 0.25 * r)), "Π(d)");

    b.check("parallel-angle-equals-pi", angle_err, 1e-10)?;
    b.check("parallels-share-endpoint", gap, 1e-9)?;
    b.check("oracle-agrees", (secant_boundary_oracle(&p, &l, 1e-10)? - pi_d).abs(), 1e-8)?;
    b.finish()
}

/// Rays through `P` below Π(d) meet `l` (drawn up to the meeting point);
/// rays above it do not.
fn fig3(k: Curvature) -> Result<Scene> {
    let mut b = Builder::new("fig3", k, Chart::Disk);
    let (p, l) = base_configuration(k)?;
    let bp = boundary_parallels(&p, &l)?;
    let pi_d = angle_of_parallelism(bp.distance, k)?;
    draw_base(&mut b, &p, &l);
    b.add(Primitive::Segment(p, bp.foot), Style::Construction, "drop_perpendicular(P, l)");
    b.add(Primitive::Line(bp.left), Style::Construction, "boundary_parallels(P, l)");
    b.add(Primitive::Line(bp.right), Style::Construction, "boundary_parallels(P, l)");

    let mut secant_err: f64 = 0.0;
    for f in [0.3, 0.6, 0.85] {
        let g = ray_line(&p, &l, f * pi_d)?;
        let rel = classify(&l, &g)?;
        secant_err = secant_err.max(relation_ok(&rel, "secant")).max(witness_residual(&l, &g, &rel)?);
        if let LineRelation::Secant { point } = rel {
            b.add(Primitive::Segment(p, point), Style::Primary, "secant: ray_line(P, l, θ < Π)");
            b.add(Primitive::Point(point), Style::Secondary, "classify → Secant");
        }
    }
    let mut miss_err: f64 = 0.0;
    for f in [0.15, 0.35, 0.6] {
        let g = ray_line(&p, &l, pi_d + f * (PI - pi_d))?;
        miss_err = miss_err.max(relation_ok(&classify(&l, &g)?, "ultraparallel"));
        b.add(Primitive::Ray(g), Style::Secondary, "non-secant: ray_line(P, l, θ > Π)");
    }
    b.check("secants-meet-l", secant_err, 1e-9)?;
    b.check("non-secants-miss-l", miss_err, 0.5)?;
    b.finish()
}

/// Lines through `P` strictly between the two boundary parallels are
/// ultraparallel to `l`; one of them is drawn with its common perpendicular.
fn fig4(k: Curvature) -> Result<Scene> {
    let mut b = Builder::new("fig4", k, Chart::Disk);
    let r = k.r();
    let (p, l) = base_configuration(k)?;
    let bp = boundary_parallels(&p, &l)?;
    let pi_d = angle_of_parallelism(bp.distance, k)?;
    draw_base(&mut b, &p, &l);
    b.add(Primitive::Line(bp.left), Style::Construction, "boundary_parallels(P, l)");
    b.add(Primitive::Line(bp.right), Style::Construction, "boundary_parallels(P, l)");

    let mut kind_err: f64 = 0.0;
    let mut feet = None;
    for (i, f) in [0.2, 0.5, 0.8].into_iter().enumerate() {
        let g = ray_line(&p, &l, pi_d + f * (PI - 2.0 * pi_d))?;
        let rel = classify(&l, &g)?;
        kind_err = kind_err.max(relation_ok(&rel, "ultraparallel"));
        b.add(Primitive::Line(g), Style::Secondary, "ray_line(P, l, Π < θ < π - Π)");
        if i == 0 {
            if let LineRelation::Ultraparallel { feet: f, .. } = rel {
                kind_err = kind_err.max(witness_residual(&l, &g, &rel)?);
                feet = Some((f, g));
            }
        }
    }
    b.check("ultraparallels-classified", kind_err, 1e-9)?;
    let ((f1, f2), g) = feet.ok_or(GeomError::Validation { check: "common-perpendicular", residual: f64::INFINITY })?;
    b.add(Primitive::Segment(f1, f2), Style::Primary, "classify → Ultraparallel feet");
    let on_l = l.point_at(l.param_of(&f1) + r);
    let on_g = g.point_at(g.param_of(&f2) + r);
    b.add(Primitive::AngleMark { vertex: f1, toward: [f2, on_l], right: true }, Style::Mark, "right angle at foot on l");
    b.add(Primitive::AngleMark { vertex: f2, toward: [f1, on_g], right: true }, Style::Mark, "right angle at foot on m");
    let err = (angle_at(&f1, &f2, &on_l)? - FRAC_PI_2).abs().max((angle_at(&f2, &f1, &on_g)? - FRAC_PI_2).abs());
    b.check("common-perpendicular-right-angles", err, 1e-9)?;
    b.finish()
}

/// A line lying inside the angle `ABC` and parallel to both of its sides.
fn fig5(k: Curvature) -> Result<Scene> {
    let mut b = Builder::new("fig5", k, Chart::Disk);
    let r = k.r();
    let o = HPoint::origin(2, k)?;
    let vb = o.exp(&MVec::new3(0.0, 0.0, -1.0), 0.8 * r);
    let up = vb.direction_to(&o)?;
    let across = MVec::new3(0.0, 1.0, 0.0);
    let half: f64 = 0.35;
    let va = vb.exp(&(up * half.cos() - across * half.sin()), r);
    let vc = vb.exp(&(up * half.cos() + across * half.sin()), r);
    let line = line_avoiding_angle(&vb, &va, &vc)?;
    let sides = [Geodesic::through(&vb, &va)?, Geodesic::through(&vb, &vc)?];
    for (s, v, name) in [(sides[0], va, "A"), (sides[1], vc, "C")] {
        b.add(Primitive::Ray(s), Style::Primary, "side of the angle");
        b.add(Primitive::Point(v), Style::Primary, "vertex");
        b.label(Anchor::Point(v), name);
        b.add(Primitive::Ideal(s.forward_end()), Style::Secondary, "ideal end of the side");
    }
    b.add(Primitive::Point(vb), Style::Primary, "vertex B");
    b.label(Anchor::Point(vb), "B");
    b.add(Primitive::AngleMark { vertex: vb, toward: [va, vc], right: false }, Style::Mark, "angle ABC");
    b.add(Primitive::Line(line), Style::Secondary, "line_avoiding_angle(B, A, C)");

    let mut gap: f64 = 0.0;
    for s in &sides {
        gap = gap.max(match classify(s, &line)? {
            LineRelation::BoundaryParallel { shared, .. } => shared.gap(&s.forward_end()),
            _ => f64::INFINITY,
        });
    }
    b.check("parallel-to-both-sides", gap, 1e-9)?;
    let mut outside = 0;
    for j in 0..1000 {
        let s = (-LINE_SPAN + 2.0 * LINE_SPAN * j as f64 / 999.0) * r;
        if !strictly_inside_angle(&vb, &va, &vc, &line.point_at(s))? {
            outside += 1;
        }
    }
    b.check("strictly-inside-angle", outside as f64, 0.5)?;
    b.finish()
}

/// The two flat pictures: a sheaf of parallels with a common normal, and a
/// sheaf through a centre with an orthogonal circle. Drawn in the flat chart
/// for contrast; they carry no hyperbolic content.
fn fig6(k: Curvature) -> Result<Scene> {
    let mut b = Builder::new("fig6", k, Chart::Flat);
    let xs = [-0.85, -0.7, -0.55, -0.4, -0.25];
    for x in xs {
        b.add(Primitive::Flat(vec![[x, -0.6], [x, 0.6]]), Style::Secondary, "parallel sheaf");
    }
    b.add(Primitive::Flat(vec![[-0.95, 0.0], [-0.15, 0.0]]), Style::Primary, "common normal");
    b.label(Anchor::Flat([-0.55, -0.75]), "parallel sheaf");

    let centre = [0.55, 0.0];
    let radius = 0.25;
    let mut worst: f64 = 0.0;
    for i in 0..8 {
        let a = PI * i as f64 / 4.0;
        let (s, c) = a.sin_cos();
        let tip = [centre[0] + 0.38 * c, centre[1] + 0.38 * s];
        b.add(Primitive::Flat(vec![centre, tip]), Style::Secondary, "concurrent sheaf");
        // circle tangent at the crossing is (-s, c)
        worst = worst.max((c * -s + s * c).abs());
    }
    let circle = (0..=96)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / 96.0;
            [centre[0] + radius * a.cos(), centre[1] + radius * a.sin()]
        })
        .collect();
    b.add(Primitive::Flat(circle), Style::Primary, "orthogonal circle");
    b.label(Anchor::Flat([0.55, -0.75]), "concurrent sheaf");
    b.check("normals-orthogonal", worst, 1e-12)?;
    b.finish()
}

/// Parameters of the chart points drawn along a horocycle, denser near the base.
fn horocycle_params(extent: f64) -> impl Iterator<Item = f64> {
    let n = 200;
    (-n..=n).map(move |i| {
        let t = 4.0 * i as f64 / n as f64;
        t.signum() * (t.abs().exp() - 1.0) * extent / (4f64.exp() - 1.0)
    })
}

/// A horocycle of H² and the pencil of parallels it crosses at right angles.
fn fig7(k: Curvature) -> Result<Scene> {
    let mut b = Builder::new("fig7", k, Chart::Disk);
    let xi = IdealPoint::from_direction(&[1.0, 0.0])?;
    let h = Horosphere::new(xi, 1.0, k)?;
    let chart = h.chart();
    let curve: Vec<HPoint> = horocycle_params(60.0).map(|u| chart.embed([u, 0.0])).collect();
    let on_curve = curve.iter().fold(0.0f64, |w, x| w.max(h.residual(x)));
    b.add(Primitive::Curve(curve), Style::Primary, "Horosphere::chart().embed");
    b.add(Primitive::Ideal(xi), Style::Primary, "centre ξ");
    b.label(Anchor::Ideal(xi), "ξ");

    let mut ortho: f64 = 0.0;
    let mut gap: f64 = 0.0;
    let mut prev: Option<Geodesic> = None;
    for i in -3..=3 {
        let u = [0.8 * i as f64, 0.0];
        let x = chart.embed(u);
        let g = pencil_of(&xi, &x)?;
        let t = chart.push_forward(u, [1.0, 0.0]);
        ortho = ortho.max((t.m(&g.dir()) / t.space_norm()).abs()).max(chart.normal_deviation(u));
        if let Some(q) = prev {
            gap = gap.max(match classify(&q, &g)? {
                LineRelation::BoundaryParallel { shared, .. } => shared.gap(&xi),
                _ => f64::INFINITY,
            });
        }
        prev = Some(g);
        b.add(Primitive::Line(g), Style::Secondary, "pencil_of(ξ, x)");
        b.add(Primitive::Point(x), Style::Mark, "horocycle point");
    }
    b.check("horocycle-on-surface", on_curve, 1e-9)?;
    b.check("pencil-orthogonal-to-horocycle", ortho, 1e-9)?;
    b.check("pencil-shares-centre", gap, 1e-9)?;
    b.finish()
}

/// Two parallel chart lines `L`, `M` on a horosphere of H³, cut by the plane
/// through the chart base spanned by the normal direction of the lines and
/// the centre ξ. The planes of `L` and `M` pass through ξ, so their traces on
/// the section are boundary parallels; the horosphere's trace is a horocycle.
fn fig8(k: Curvature) -> Result<Scene> {
    let mut b = Builder::new("fig8", k, Chart::Disk);
    let r = k.r();
    let h = Horosphere::new(IdealPoint::from_direction(&[1.0, 0.0, 0.0])?, 1.0, k)?;
    let chart = h.chart();
    let along = [1.0, 0.0];
    let line_l = horocycle_section(&chart, [0.0, -1.0], along)?;
    let line_m = horocycle_section(&chart, [0.0, 1.0], along)?;
    let tilted = horocycle_section(&chart, [0.0, 1.0], [0.3f64.cos(), 0.3f64.sin()])?;

    // the section plane and an isometry of it onto H²
    let e0 = chart.base().coords() * (1.0 / r);
    let e1 = chart.frame()[1];
    let xi_hat = h.scaled_null();
    let e2 = reject(&xi_hat, &[e0, e1]);
    let e2 = e2 * (1.0 / e2.space_norm());
    let flatten = |x: &MVec| MVec::new3(-x.m(&e0), x.m(&e1), x.m(&e2));
    let to_plane = |x: &HPoint| HPoint::new(flatten(&x.coords()), k);

    let xi2 = IdealPoint::new(flatten(&xi_hat))?;
    let mut worst_on_plane: f64 = 0.0;
    let mut curve = Vec::new();
    for t in horocycle_params(60.0) {
        let x = to_plane(&chart.embed([0.0, t]))?;
        worst_on_plane = worst_on_plane.max(h.residual(&chart.embed([0.0, t])));
        curve.push(x);
    }
    b.add(Primitive::Curve(curve), Style::Primary, "horosphere ∩ section");
    b.add(Primitive::Ideal(xi2), Style::Primary, "centre ξ");
    b.label(Anchor::Ideal(xi2), "ξ");

    let a = to_plane(&line_l.point_at(0.0))?;
    let p = to_plane(&line_m.point_at(0.0))?;
    let trace_l = pencil_of(&xi2, &a)?;
    let trace_m = pencil_of(&xi2, &p)?;
    for t in [-3.0, -2.0, 2.0, 3.0] {
        let x = to_plane(&chart.embed([0.0, t]))?;
        b.add(Primitive::Line(pencil_of(&xi2, &x)?), Style::Construction, "trace of a parallel plane");
    }
    b.add(Primitive::Line(trace_l), Style::Secondary, "trace of the plane of L");
    b.add(Primitive::Line(trace_m), Style::Secondary, "trace of the plane of M");
    b.add(Primitive::Point(a), Style::Primary, "point of L");
    b.add(Primitive::Point(p), Style::Primary, "point P of M");
    b.label(Anchor::Point(a), "L");
    b.label(Anchor::Point(p), "P");

    let plane_l = line_l.section_normal().ok_or(GeomError::WrongGeometry("section needs H³"))?;
    let trace_gap = match classify(&trace_l, &trace_m)? {
        LineRelation::BoundaryParallel { shared, .. } => shared.gap(&xi2),
        _ => f64::INFINITY,
    };
    b.check("section-on-horosphere", worst_on_plane, 1e-9)?;
    b.check("traces-boundary-parallel", trace_gap, 1e-9)?;
    b.check("parallel-does-not-cross", if crossing(&line_l, &line_m).is_some() { 1.0 } else { 0.0 }, 0.5)?;
    b.check("parallel-separation", -min_plane_distance(&line_l, &line_m, 50.0), -1e-3)?;
    let cross_res = match crossing(&line_l, &tilted) {
        Some((_, x)) => (x.coords().m(&plane_l).abs() / x.coords().euclid_norm()).max(h.residual(&x)),
        None => f64::INFINITY,
    };
    b.check("tilted-line-crosses", cross_res, 1e-9)?;
    b.finish()
}

/// Every figure, for batch rendering and tests.
pub fn all(k: Curvature) -> Result<Vec<Scene>> {
    NAMES.iter().map(|n| figure(n, k)).collect()
}

/// Provenance notes of a scene, one line per item.
pub fn provenance(scene: &Scene) -> Vec<String> {
    scene.items.iter().map(|i| format!("{:?}: {}", i.style, i.provenance)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_figure_validates() {
        for r in [1.0, 3.0] {
            let k = Curvature::new(r).unwrap();
            for name in NAMES {
                let s = figure(name, k).unwrap_or_else(|e| panic!("{name} r={r}: {e}"));
                assert!(s.checks.iter().all(|c| c.pass), "{name}");
                for kind in Projection::ALL {
                    let d = s.draw(kind).unwrap();
                    if s.chart == Chart::Flat {
                        continue;
                    }
                    for (_, path) in &d.paths {
                        assert!(path.iter().all(|q| q[0].hypot(q[1]) <= 1.0 + 1e-12), "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn unknown_figure() {
        assert_eq!(figure("fig9", Curvature::UNIT), Err(GeomError::NotFound));
    }

    #[test]
    fn deterministic() {
        let a = figure("fig3", Curvature::UNIT).unwrap();
        let b = figure("fig3", Curvature::UNIT).unwrap();
        assert_eq!(a, b);
    }
}
