//! Seeded verification suites.
//!
//! Every check samples from its own generator, seeded from the suite seed
//! and the check name, so a check gives the same residual whether it runs
//! alone or inside `all`. A check passes iff `max_residual < tolerance`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::{E, FRAC_PI_2, PI};
use core::fmt;
use core::str::FromStr;

// Needed without std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::error::{GeomError, Result};
use crate::horosphere::{self, euclidean_triangle_check, horocycle_section, random_horosphere, ChartPoint};
use crate::minkowski::{angle_at, angle_between, drop_perpendicular, Curvature, Geodesic, HPoint, IdealPoint, Isometry};
use crate::parallels::{
    angle_of_parallelism, angle_of_parallelism_general, boundary_parallels, classify,
    configuration_at_distance, line_avoiding_angle, pencil_of, secant_boundary_oracle,
    strictly_inside_angle, witness_residual, LineRelation,
};
use crate::projection::{crossing_angle_error, from_disk, klein_chord_residual, to_disk, Projection};
use crate::sample::{self, SeededRng};
use crate::trig::{
    accordance_check, euclidean_limit_fit, imaginary_substitution, parallelism_identity_check,
    spherical_right_residuals, spherical_right_triangle, synthesize_right_triangle,
};
use crate::units::{self, builtin_registry, category_laws, check_isometric, compare_instantiations, compose};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Parallels,
    Horosphere,
    Duality,
    Units,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["parallels", "horosphere", "duality", "units", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Parallels => "parallels",
            Suite::Horosphere => "horosphere",
            Suite::Duality => "duality",
            Suite::Units => "units",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parallels" => Ok(Suite::Parallels),
            "horosphere" => Ok(Suite::Horosphere),
            "duality" => Ok(Suite::Duality),
            "units" => Ok(Suite::Units),
            "all" => Ok(Suite::All),
            _ => Err(GeomError::NotFound),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Check {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, max_residual: f64, tolerance: f64) -> Check {
        Check { name: name.into(), max_residual, tolerance, pass: max_residual < tolerance }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Config {
    pub seed: u64,
    /// Radius for checks that use a single model.
    pub curvature: Curvature,
    /// Replaces every tolerance when set.
    pub tolerance: Option<f64>,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 42, curvature: Curvature::UNIT, tolerance: None }
    }
}

type CheckFn = fn(&mut SeededRng, Curvature) -> Result<f64>;

/// Runs a suite.
pub fn run(suite: Suite, cfg: &Config) -> Report {
    let groups: &[&[(&str, f64, CheckFn)]] = match suite {
        Suite::Parallels => &[PARALLELS],
        Suite::Horosphere => &[HOROSPHERE],
        Suite::Duality => &[DUALITY],
        Suite::Units => &[UNITS],
        Suite::All => &[PARALLELS, HOROSPHERE, DUALITY, UNITS],
    };
    let mut checks = Vec::new();
    for group in groups {
        for (name, tol, f) in group.iter() {
            let mut rng = sample::rng(cfg.seed ^ fnv1a(name));
            let residual = f(&mut rng, cfg.curvature).unwrap_or(f64::INFINITY);
            let residual = if residual.is_nan() { f64::INFINITY } else { residual };
            checks.push(Check::new(*name, residual, cfg.tolerance.unwrap_or(*tol)));
        }
    }
    Report { suite: suite.name().to_string(), seed: cfg.seed, checks }
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Names of the checks of a suite, in report order.
pub fn check_names(suite: Suite) -> Vec<&'static str> {
    let groups: &[&[(&str, f64, CheckFn)]] = match suite {
        Suite::Parallels => &[PARALLELS],
        Suite::Horosphere => &[HOROSPHERE],
        Suite::Duality => &[DUALITY],
        Suite::Units => &[UNITS],
        Suite::All => &[PARALLELS, HOROSPHERE, DUALITY, UNITS],
    };
    groups.iter().flat_map(|g| g.iter().map(|c| c.0)).collect()
}

/// `n` log-spaced values from `lo` to `hi`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
}

fn count(flags: impl IntoIterator<Item = bool>) -> f64 {
    flags.into_iter().filter(|ok| !ok).count() as f64
}

fn random_line(n: usize, k: Curvature, rng: &mut SeededRng) -> Geodesic {
    let p = sample::point(n, k, 2.0 * k.r(), rng);
    Geodesic::new(sample::tangent(&p, rng))
}

fn random_ideal(n: usize, rng: &mut SeededRng) -> Result<IdealPoint> {
    IdealPoint::from_direction(&sample::unit_vector(n, rng)[..n])
}

/// A random point at distance in `[0.1, 3] r` from `l`.
fn point_off<R: Rng + ?Sized>(l: &Geodesic, rng: &mut R) -> HPoint {
    let r = l.r();
    let s = rng.gen_range(-2.0..2.0) * r;
    let foot = l.point_at(s);
    let t = l.tangent_at(s);
    loop {
        let v = sample::tangent(&foot, rng).vector();
        let v = v - t * v.m(&t);
        let n = v.space_norm();
        if n > 1e-3 {
            return foot.exp(&(v * (1.0 / n)), rng.gen_range(0.1..3.0) * r);
        }
    }
}

// ---------------------------------------------------------------- parallels

const PARALLELS: &[(&str, f64, CheckFn)] = &[
    ("pi-oracle-agreement", 1e-7, pi_oracle_agreement),
    ("unit-rescaling-law", 1e-14, unit_rescaling),
    ("pi-monotone", 0.5, pi_monotone),
    ("parallelism-equivalence", 1e-9, parallelism_equivalence),
    ("boundary-parallel-angle", 1e-10, boundary_parallel_angle),
    ("point-independence", 1e-9, point_independence),
    ("avoiding-line-failures", 0.5, avoiding_line),
    ("trichotomy-witness", 1e-9, trichotomy),
    ("perpendicular-right-angle", 1e-10, perpendicular_right_angle),
    ("isometry-invariance", 1e-9, isometry_invariance),
    ("triangle-angle-sum-excess", 0.0, triangle_excess),
];

/// Bisection oracle vs closed form on 100 log-spaced distances in
/// `[0.01, 5]` for `r = 1` and `r = 3`, in randomly moved configurations.
fn pi_oracle_agreement(rng: &mut SeededRng, _: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for r in [1.0, 3.0] {
        let k = Curvature::new(r)?;
        for d in log_grid(0.01, 5.0, 100) {
            let (p, l) = configuration_at_distance(d, 2, k)?;
            let iso = Isometry::random(2, 1.0, rng);
            let oracle = secant_boundary_oracle(&iso.apply(&p), &iso.apply_geodesic(&l), 1e-8)?;
            worst = worst.max((oracle - angle_of_parallelism(d, k)?).abs());
        }
    }
    Ok(worst)
}

fn unit_rescaling(rng: &mut SeededRng, _: Curvature) -> Result<f64> {
    let bases = [1.5, 2.0, E, 10.0];
    let mut worst: f64 = 0.0;
    for i in 0..1000 {
        let a = bases[i % bases.len()];
        let d = rng.gen_range(0.0..5.0);
        let lhs = angle_of_parallelism_general(d, a)?;
        let rhs = angle_of_parallelism(d * a.ln(), Curvature::UNIT)?;
        worst = worst.max((lhs - rhs).abs());
    }
    Ok(worst)
}

/// Count of violations of strict decrease of Π and of its two limits.
fn pi_monotone(_: &mut SeededRng, k: Curvature) -> Result<f64> {
    let values: Vec<f64> = log_grid(1e-3, 30.0, 400)
        .map(|d| angle_of_parallelism(d * k.r(), k))
        .collect::<Result<_>>()?;
    let decreasing = values.windows(2).map(|w| w[1] < w[0]);
    let near_zero = (angle_of_parallelism(1e-12 * k.r(), k)? - FRAC_PI_2).abs() < 1e-9;
    let far = angle_of_parallelism(40.0 * k.r(), k)? < 1e-9;
    Ok(count(decreasing.chain([near_zero, far])))
}

/// Lines of one pencil through three random points are pairwise boundary
/// parallel and share the pencil's ideal point.
fn parallelism_equivalence(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..500 {
        let n = 2 + i % 2;
        let xi = random_ideal(n, rng)?;
        let lines = [0, 1, 2].map(|_| pencil_of(&xi, &sample::point(n, k, 3.0 * k.r(), rng)));
        let [a, b, c] = lines;
        let (a, b, c) = (a?, b?, c?);
        for (x, y) in [(&a, &b), (&b, &c), (&a, &c), (&b, &a)] {
            match classify(x, y)? {
                LineRelation::BoundaryParallel { shared, .. } => worst = worst.max(shared.gap(&xi)),
                _ => return Ok(f64::INFINITY),
            }
        }
    }
    Ok(worst)
}

/// Measured angle between a boundary parallel and the perpendicular equals
/// Π(d); both boundary parallels classify as such against the line.
fn boundary_parallel_angle(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..300 {
        let n = 2 + i % 2;
        let l = random_line(n, k, rng);
        let p = point_off(&l, rng);
        let bp = boundary_parallels(&p, &l)?;
        let pi_d = angle_of_parallelism(bp.distance, k)?;
        let to_foot = p.direction_to(&bp.foot)?;
        for g in [bp.left, bp.right] {
            worst = worst.max((angle_between(&g.dir(), &to_foot) - pi_d).abs());
            if !classify(&l, &g)?.is_boundary_parallel() {
                return Ok(f64::INFINITY);
            }
        }
    }
    Ok(worst)
}

/// Boundary parallels drawn from different points end where `l` ends.
fn point_independence(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..300 {
        let l = random_line(2 + i % 2, k, rng);
        let (fwd, back) = l.ideal_endpoints();
        for _ in 0..2 {
            let bp = boundary_parallels(&point_off(&l, rng), &l)?;
            for g in [bp.left, bp.right] {
                let end = g.forward_end();
                worst = worst.max(end.gap(&fwd).min(end.gap(&back)));
            }
        }
    }
    Ok(worst)
}

/// For 100 random angles (log-uniform in `[0.01, 3]` rad, the first one
/// exactly 0.01) the line joining the ends of the two sides is boundary
/// parallel to both and its sampled points lie strictly inside the angle.
/// Residual: number of failing angles.
fn avoiding_line(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut failures = 0;
    for i in 0..100 {
        let angle = if i == 0 { 0.01 } else { 0.01 * 300f64.powf(rng.gen_range(0.0..1.0)) };
        let n = 2 + i % 2;
        let b = sample::point(n, k, 2.0 * k.r(), rng);
        let t1 = sample::tangent(&b, rng).vector();
        let w = sample::tangent(&b, rng).vector();
        let t2 = w - t1 * w.m(&t1);
        let t2 = t2 * (1.0 / t2.space_norm());
        let dir = t1 * angle.cos() + t2 * angle.sin();
        let a = b.exp(&t1, rng.gen_range(0.5..2.0) * k.r());
        let c = b.exp(&dir, rng.gen_range(0.5..2.0) * k.r());
        let line = line_avoiding_angle(&b, &a, &c)?;
        let sides = [Geodesic::through(&b, &a)?, Geodesic::through(&b, &c)?];
        let mut ok = sides.iter().all(|s| matches!(classify(s, &line), Ok(rel) if rel.is_boundary_parallel()));
        for j in 0..1000 {
            let s = (-6.0 + 12.0 * j as f64 / 999.0) * k.r();
            ok &= strictly_inside_angle(&b, &a, &c, &line.point_at(s))?;
        }
        if !ok {
            failures += 1;
        }
    }
    Ok(failures as f64)
}

/// Every classification of random pairs carries a valid witness.
fn trichotomy(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    let mut seen = [false; 3];
    for i in 0..600 {
        let n = 2 + (i / 3) % 2;
        let l1 = random_line(n, k, rng);
        let l2 = match i % 3 {
            0 => random_line(n, k, rng),
            1 => Geodesic::new(sample::tangent(&l1.point_at(rng.gen_range(-2.0..2.0)), rng)),
            _ => pencil_of(&l1.forward_end(), &point_off(&l1, rng))?,
        };
        let rel = classify(&l1, &l2)?;
        seen[match rel {
            LineRelation::Secant { .. } => 0,
            LineRelation::BoundaryParallel { .. } => 1,
            LineRelation::Ultraparallel { .. } => 2,
        }] = true;
        worst = worst.max(witness_residual(&l1, &l2, &rel)?);
    }
    Ok(if seen.iter().all(|s| *s) { worst } else { f64::INFINITY })
}

fn perpendicular_right_angle(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..500 {
        let l = random_line(2 + i % 2, k, rng);
        let p = point_off(&l, rng);
        let foot = drop_perpendicular(&p, &l)?;
        let other = l.point_at(foot.param + 1.0);
        worst = worst.max((angle_at(&foot.point, &p, &other)? - FRAC_PI_2).abs());
    }
    Ok(worst)
}

fn isometry_invariance(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..500 {
        let n = 2 + i % 2;
        let p = sample::point(n, k, 3.0 * k.r(), rng);
        let q = sample::point(n, k, 3.0 * k.r(), rng);
        let iso = Isometry::random(n, 2.0, rng);
        let d = p.distance(&q)?;
        worst = worst.max((iso.apply(&p).distance(&iso.apply(&q))? - d).abs());
    }
    Ok(worst)
}

/// Largest `Σ angles - π` over random triangles; negative means every
/// triangle has a defect.
fn triangle_excess(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for i in 0..500 {
        let n = 2 + i % 2;
        let v = [0, 1, 2].map(|_| sample::point(n, k, 2.0 * k.r(), rng));
        let sum = angle_at(&v[0], &v[1], &v[2])? + angle_at(&v[1], &v[2], &v[0])? + angle_at(&v[2], &v[0], &v[1])?;
        worst = worst.max(sum - PI);
    }
    Ok(worst)
}

// --------------------------------------------------------------- horosphere

const HOROSPHERE: &[(&str, f64, CheckFn)] = &[
    ("intrinsic-vs-path-length", 1e-5, flatness_h3),
    ("horocycle-arc-vs-path-length", 1e-5, flatness_h2),
    ("euclidean-triangle-laws", 1e-8, triangle_laws),
    ("ambient-triangle-angle-sum-excess", -1e-3, ambient_excess),
    ("parallel-axiom-failures", 0.5, parallel_axiom),
    ("pencil-orthogonality", 1e-9, pencil_orthogonality),
    ("surface-membership", 1e-9, membership),
    ("frame-orthonormality", 1e-12, frame_orthonormality),
    ("section-planarity", 1e-9, section_planarity),
    ("parabolic-gauge-invariance", 1e-10, gauge_invariance),
];

/// Uniform chart point in the disk of radius `rad` (first coordinate only
/// when `dim = 1`).
fn chart_point(dim: usize, rad: f64, rng: &mut SeededRng) -> ChartPoint {
    if dim == 1 {
        return [rng.gen_range(-rad..rad), 0.0];
    }
    let t = rng.gen_range(-PI..PI);
    let s = rad * rng.gen_range(0.0f64..1.0).sqrt();
    [s * t.cos(), s * t.sin()]
}

fn flatness(n: usize, rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let h = random_horosphere(n, k, rng)?;
        let c = h.chart();
        let (x, y) = (c.embed(chart_point(n - 1, 5.0, rng)), c.embed(chart_point(n - 1, 5.0, rng)));
        let d = h.intrinsic_distance(&x, &y)?;
        if d < 1e-6 {
            continue;
        }
        worst = worst.max((h.discretized_distance(&x, &y)? - d).abs() / d);
    }
    Ok(worst)
}

fn flatness_h3(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    flatness(3, rng, k)
}

fn flatness_h2(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    flatness(2, rng, k)
}

fn random_triangle(rng: &mut SeededRng, k: Curvature) -> Result<(horosphere::HoroChart, [ChartPoint; 3])> {
    let h = random_horosphere(3, k, rng)?;
    loop {
        let u = [0, 1, 2].map(|_| chart_point(2, 5.0, rng));
        let area = 0.5
            * ((u[1][0] - u[0][0]) * (u[2][1] - u[0][1]) - (u[2][0] - u[0][0]) * (u[1][1] - u[0][1])).abs();
        if area > 1e-3 {
            return Ok((h.chart(), u));
        }
    }
}

fn triangle_laws(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let (c, u) = random_triangle(rng, k)?;
        let t = euclidean_triangle_check(&c, u)?;
        worst = worst.max(t.angle_sum_residual).max(t.cosine_law_residual);
    }
    Ok(worst)
}

/// The same random triangles with ambient geodesic sides: largest
/// `Σ angles - π`.
fn ambient_excess(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..200 {
        let (c, u) = random_triangle(rng, k)?;
        worst = worst.max(euclidean_triangle_check(&c, u)?.ambient_angle_sum - PI);
    }
    Ok(worst)
}

fn parallel_axiom(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let h = random_horosphere(3, k, rng)?;
    Ok(horosphere::verify_ap(&h, 1000, rng)?.failures as f64)
}

fn pencil_orthogonality(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..200 {
        let n = 2 + i % 2;
        let c = random_horosphere(n, k, rng)?.chart();
        worst = worst.max(c.normal_deviation(chart_point(n - 1, 3.0, rng)));
    }
    Ok(worst)
}

/// Sheet and level residuals of an 11×11 chart grid on random horospheres.
fn membership(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let h = random_horosphere(3, k, rng)?;
        let c = h.chart();
        for i in 0..11 {
            for j in 0..11 {
                let x = c.embed([-3.0 + 0.6 * i as f64, -3.0 + 0.6 * j as f64]);
                worst = worst.max(x.sheet_residual()).max(h.residual(&x));
            }
        }
    }
    Ok(worst)
}

fn frame_orthonormality(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        worst = worst.max(random_horosphere(2 + i % 2, k, rng)?.chart().frame_residual());
    }
    Ok(worst)
}

fn section_planarity(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let c = random_horosphere(3, k, rng)?.chart();
        let arc = horocycle_section(&c, chart_point(2, 3.0, rng), chart_point(2, 3.0, rng))?;
        worst = worst.max(arc.section_residual(40));
    }
    Ok(worst)
}

fn gauge_invariance(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let h = random_horosphere(3, k, rng)?;
        let c = h.chart();
        let c2 = c.recentered(chart_point(2, 3.0, rng));
        let (u, v) = (chart_point(2, 3.0, rng), chart_point(2, 3.0, rng));
        let d = horosphere::chart_distance(u, v);
        let (x, y) = (c2.embed(u), c2.embed(v));
        worst = worst
            .max((h.intrinsic_distance(&x, &y)? - d).abs())
            .max(c2.frame_residual());
    }
    Ok(worst)
}

// ------------------------------------------------------------------ duality

const DUALITY: &[(&str, f64, CheckFn)] = &[
    ("imaginary-substitution", 1e-12, substitution),
    ("accordance-r1", 1e-9, accordance_r1),
    ("accordance-r3", 1e-9, accordance_r3),
    ("euclidean-limit-exponent", 0.1, limit_exponent),
    ("spherical-extrinsic", 1e-10, spherical_extrinsic),
    ("parallelism-identity", 1e-12, parallelism_identity),
];

fn substitution(rng: &mut SeededRng, _: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let a = rng.gen_range(0.1..=2.0);
        let b = rng.gen_range(0.1..=2.0);
        let t = synthesize_right_triangle(a, b, Curvature::UNIT, rng)?;
        worst = worst.max(imaginary_substitution(t.a, t.b, t.c, t.angle_a, t.angle_b).max());
    }
    Ok(worst)
}

fn accordance_r1(rng: &mut SeededRng, _: Curvature) -> Result<f64> {
    Ok(accordance_check(500, Curvature::UNIT, rng)?.worst())
}

fn accordance_r3(rng: &mut SeededRng, _: Curvature) -> Result<f64> {
    Ok(accordance_check(500, Curvature::new(3.0)?, rng)?.worst())
}

/// `|p - 2|` for the fitted decay exponent of the Pythagorean defect.
fn limit_exponent(rng: &mut SeededRng, _: Curvature) -> Result<f64> {
    Ok((euclidean_limit_fit(1.0, 1.0, &[10.0, 30.0, 100.0, 300.0], rng)?.exponent - 2.0).abs())
}

fn spherical_extrinsic(rng: &mut SeededRng, _: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for i in 0..500 {
        let radius = if i % 2 == 0 { 1.0 } else { 2.5 };
        let a = rng.gen_range(0.1..1.4) * radius;
        let b = rng.gen_range(0.1..1.4) * radius;
        let t = spherical_right_triangle(a, b, radius, rng);
        worst = worst.max(spherical_right_residuals(&t)?.max_abs());
    }
    Ok(worst)
}

fn parallelism_identity(_: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for d in log_grid(0.01, 10.0, 1000) {
        worst = worst.max(parallelism_identity_check(d * k.r(), k)?);
    }
    Ok(worst)
}

// -------------------------------------------------------------------- units

const UNITS: &[(&str, f64, CheckFn)] = &[
    ("identity-laws", 1e-12, identity_laws),
    ("associativity", 1e-12, associativity),
    ("isometric-claims", 1.0, isometric_claims),
    ("eplane-type-sharing", 1.0, eplane_sharing),
    ("circle-type-sharing", 1.0, circle_sharing),
    ("unit-metric-axioms", 1e-9, metric_axioms),
    ("klein-chords", 1e-12, klein_chords),
    ("poincare-angles", 1e-9, poincare_angles),
    ("disk-round-trips", 1e-12, disk_round_trips),
];

fn identity_laws(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    Ok(category_laws(&builtin_registry(k), 0, 20, rng)?.identity)
}

fn associativity(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    Ok(category_laws(&builtin_registry(k), 100, 20, rng)?.associativity)
}

/// Largest `deviation / tolerance` over every isometric claim of the
/// builtin registry, each checked at its own tolerance.
fn isometric_claims(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let reg = builtin_registry(k);
    let mut worst: f64 = 0.0;
    for m in reg.maps().iter().filter(|m| m.isometric) {
        let rep = check_isometric(&reg, m, 100, m.tolerance, rng)?;
        if !rep.pass {
            return Ok((rep.max_deviation / m.tolerance).max(1.0));
        }
        worst = worst.max(rep.max_deviation / m.tolerance);
    }
    Ok(worst)
}

fn sharing(rng: &mut SeededRng, k: Curvature, unit: &'static str, pair: (&str, &str)) -> Result<f64> {
    let reg = builtin_registry(k);
    let find = |name: &str| -> Result<units::UnitMap> {
        if let Some((g, f)) = name.split_once('∘') {
            let f = reg.maps().iter().find(|m| m.name == f).ok_or(GeomError::NotFound)?;
            let g = reg.maps().iter().find(|m| m.name == g).ok_or(GeomError::NotFound)?;
            compose(f, g)
        } else {
            reg.maps().iter().find(|m| m.name == name).cloned().ok_or(GeomError::NotFound)
        }
    };
    let (f, g) = (find(pair.0)?, find(pair.1)?);
    let cmp = compare_instantiations(&reg, unit, &f, &g, 100, rng)?;
    if !cmp.ambient_differs {
        return Ok(f64::INFINITY);
    }
    Ok((cmp.first.max_deviation / cmp.first.tolerance).max(cmp.second.max_deviation / cmp.second.tolerance))
}

/// `e` and `h` both carry the Euclidean metric of EPLANE into different
/// spaces; residual is the larger `deviation / tolerance`.
fn eplane_sharing(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    sharing(rng, k, units::EPLANE, ("e", "h"))
}

fn circle_sharing(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    sharing(rng, k, units::CIRCLE, ("c", "h∘c"))
}

/// Symmetry, identity and triangle-inequality violations of every unit metric.
fn metric_axioms(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let reg = builtin_registry(k);
    let mut worst: f64 = 0.0;
    for u in reg.units() {
        for _ in 0..200 {
            let (p, q, s) = (u.sample(rng), u.sample(rng), u.sample(rng));
            let (pq, qp, qs, ps) = (u.distance(&p, &q), u.distance(&q, &p), u.distance(&q, &s), u.distance(&p, &s));
            let scale = 1.0 + pq + qs;
            worst = worst
                .max((pq - qp).abs())
                .max(u.distance(&p, &p))
                .max((ps - pq - qs) / scale)
                .max(-pq);
        }
    }
    Ok(worst)
}

fn klein_chords(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        worst = worst.max(klein_chord_residual(&random_line(2, k, rng), 100, 6.0 * k.r())?);
    }
    Ok(worst)
}

fn poincare_angles(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let p = sample::point(2, k, 2.0 * k.r(), rng);
        let g1 = Geodesic::new(sample::tangent(&p, rng));
        let g2 = Geodesic::new(sample::tangent(&p, rng));
        worst = worst.max(crossing_angle_error(&g1, &g2, Projection::Poincare, 1e-5 * k.r())?);
    }
    Ok(worst)
}

fn disk_round_trips(rng: &mut SeededRng, k: Curvature) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let p = sample::point(2, k, 4.0 * k.r(), rng);
        for kind in Projection::ALL {
            let q = to_disk(&p, kind)?;
            let q2 = to_disk(&from_disk(q, kind, k)?, kind)?;
            worst = worst.max((q[0] - q2[0]).abs()).max((q[1] - q2[1]).abs());
        }
    }
    Ok(worst)
}

/// One formatted line per check.
pub fn summary_lines(report: &Report) -> Vec<String> {
    report
        .checks
        .iter()
        .map(|c| {
            format!(
                "{} {:<36} residual={:.3e} tolerance={:.1e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.max_residual,
                c.tolerance
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass() {
        extern crate std;
        let rep = run(Suite::All, &Config::default());
        for l in summary_lines(&rep) {
            std::println!("{l}");
        }
        assert!(rep.passed());
    }
}
