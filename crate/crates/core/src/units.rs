//! Units (spaces given by a sampler and a metric) and maps between them.
//!
//! A [`UnitMap`] may claim to be an isometric embedding. The claim is checked
//! against the intrinsic metric of the image set, supplied by the map itself
//! when a closed form exists and otherwise approximated by shortest paths in
//! a nearest-neighbour graph of sampled image points.
//!
//! There is deliberately no way to build a map between two image sets: only
//! units have maps between them.

use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

// Needed without std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::error::{GeomError, Result};
use crate::horosphere::{HoroChart, Horosphere};
use crate::minkowski::{distance, Curvature, HPoint, IdealPoint, MVec};
use crate::projection::{from_disk, to_disk, Projection};
use crate::sample::{self, SeededRng};
use crate::sphere;

pub const EPLANE: &str = "EPLANE";
pub const ESPACE: &str = "ESPACE";
pub const ISPACE: &str = "ISPACE";
pub const IPLANE: &str = "IPLANE";
pub const CIRCLE: &str = "CIRCLE";
pub const SPHERE: &str = "SPHERE";

/// Tolerance of the shortest-path fallback for image metrics.
pub const GRAPH_TOL: f64 = 1e-2;

pub type Metric = Arc<dyn Fn(&[f64], &[f64]) -> f64 + Send + Sync>;
pub type Sampler = Arc<dyn Fn(&mut SeededRng) -> Vec<f64> + Send + Sync>;
pub type PointFn = Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>;

/// A space given by its coordinate convention, metric and sampler.
#[derive(Clone)]
pub struct Unit {
    pub name: &'static str,
    /// How points are written, e.g. `"(x, y)"`.
    pub point_repr: &'static str,
    pub metric: Metric,
    pub sampler: Sampler,
}

impl Unit {
    pub fn distance(&self, p: &[f64], q: &[f64]) -> f64 {
        (self.metric)(p, q)
    }

    pub fn sample(&self, rng: &mut SeededRng) -> Vec<f64> {
        (self.sampler)(rng)
    }
}

impl core::fmt::Debug for Unit {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Unit").field("name", &self.name).finish_non_exhaustive()
    }
}

/// A map between units.
#[derive(Clone)]
pub struct UnitMap {
    pub name: String,
    pub source: &'static str,
    pub target: &'static str,
    pub apply: PointFn,
    /// Claims to be an isometric embedding.
    pub isometric: bool,
    /// Intrinsic metric of the image set, in target coordinates, if known in
    /// closed form.
    pub image_metric: Option<Metric>,
    /// Tolerance at which the isometry claim is checked.
    pub tolerance: f64,
    is_identity: bool,
}

impl UnitMap {
    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        (self.apply)(p)
    }

    pub fn identity(unit: &Unit) -> UnitMap {
        UnitMap {
            name: format!("id_{}", unit.name),
            source: unit.name,
            target: unit.name,
            apply: Arc::new(|p: &[f64]| p.to_vec()),
            isometric: true,
            image_metric: Some(unit.metric.clone()),
            tolerance: 1e-12,
            is_identity: true,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_identity
    }
}

impl core::fmt::Debug for UnitMap {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("UnitMap")
            .field("name", &self.name)
            .field("source", &self.source)
            .field("target", &self.target)
            .field("isometric", &self.isometric)
            .finish_non_exhaustive()
    }
}

/// `g ∘ f`: apply `f`, then `g`.
///
/// The composite claims isometry only if both parts do. Its image metric is
/// kept when one side is an identity and is otherwise left to the graph
/// fallback (the image of a subset does not inherit the intrinsic metric of
/// the larger image).
pub fn compose(f: &UnitMap, g: &UnitMap) -> Result<UnitMap> {
    if f.target != g.source {
        return Err(GeomError::UnitMismatch { expected: g.source, found: f.target });
    }
    let (fa, ga) = (f.apply.clone(), g.apply.clone());
    let image_metric = if f.is_identity {
        g.image_metric.clone()
    } else if g.is_identity {
        f.image_metric.clone()
    } else {
        None
    };
    let tolerance = if image_metric.is_some() {
        f.tolerance.max(g.tolerance)
    } else {
        GRAPH_TOL
    };
    Ok(UnitMap {
        name: format!("{}∘{}", g.name, f.name),
        source: f.source,
        target: g.target,
        apply: Arc::new(move |p: &[f64]| ga(&fa(p))),
        isometric: f.isometric && g.isometric,
        image_metric,
        tolerance,
        is_identity: f.is_identity && g.is_identity,
    })
}

#[derive(Clone, Debug, Default)]
pub struct Registry {
    units: Vec<Unit>,
    maps: Vec<UnitMap>,
}

impl Registry {
    /// Adds a unit together with its identity map.
    pub fn add_unit(&mut self, unit: Unit) {
        self.maps.push(UnitMap::identity(&unit));
        self.units.push(unit);
    }

    pub fn add_map(&mut self, map: UnitMap) -> Result<()> {
        self.unit(map.source)?;
        self.unit(map.target)?;
        self.maps.push(map);
        Ok(())
    }

    pub fn units(&self) -> &[Unit] {
        &self.units
    }

    pub fn maps(&self) -> &[UnitMap] {
        &self.maps
    }

    pub fn unit(&self, name: &str) -> Result<&Unit> {
        self.units.iter().find(|u| u.name == name).ok_or(GeomError::NotFound)
    }

    pub fn lookup(&self, source: &str, target: &str, name: &str) -> Result<&UnitMap> {
        self.maps
            .iter()
            .find(|m| m.source == source && m.target == target && m.name == name)
            .ok_or(GeomError::NotFound)
    }

    pub fn identity(&self, unit: &str) -> Result<&UnitMap> {
        self.maps
            .iter()
            .find(|m| m.is_identity && m.source == unit)
            .ok_or(GeomError::NotFound)
    }

    /// All chains `f, g, h` of registered maps with matching units.
    pub fn composable_triples(&self) -> Vec<(&UnitMap, &UnitMap, &UnitMap)> {
        let mut out = Vec::new();
        for f in &self.maps {
            for g in self.maps.iter().filter(|g| g.source == f.target) {
                for h in self.maps.iter().filter(|h| h.source == g.target) {
                    out.push((f, g, h));
                }
            }
        }
        out
    }
}

fn euclid(p: &[f64], q: &[f64]) -> f64 {
    p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

/// Arc length on the unit circle or sphere between points given in R^m.
fn unit_arc(p: &[f64], q: &[f64]) -> f64 {
    2.0 * (0.5 * euclid(p, q)).min(1.0).asin()
}

fn hyperbolic(k: Curvature) -> Metric {
    Arc::new(move |p: &[f64], q: &[f64]| {
        let a = HPoint::new(MVec::from_slice(p).expect("model point"), k).expect("on sheet");
        let b = HPoint::new(MVec::from_slice(q).expect("model point"), k).expect("on sheet");
        distance(&a, &b).expect("same model")
    })
}

/// Horosphere used by the builtin map `h`.
pub fn builtin_horosphere(k: Curvature) -> Horosphere {
    let xi = IdealPoint::from_direction(&[1.0, 2.0, 2.0]).expect("nonzero direction");
    Horosphere::new(xi, 1.0, k).expect("positive level")
}

/// Orthonormal pair spanning the plane used by the builtin map `e`.
const E_ORIGIN: [f64; 3] = [0.5, -1.0, 2.0];
const E_AXES: [[f64; 3]; 2] = [[2.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0], [-2.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0]];

/// The builtin units and maps for curvature radius `k`.
///
/// Units: EPLANE, ESPACE, ISPACE, IPLANE, CIRCLE, SPHERE. Maps: `e` (a plane
/// in E³), `h` (a horosphere chart in H³), `c` (unit circle in the plane),
/// `sphere-embed`, and the non-isometric disk pictures `klein`, `poincare`.
pub fn builtin_registry(k: Curvature) -> Registry {
    let mut reg = Registry::default();
    let plane_box = 3.0;
    reg.add_unit(Unit {
        name: EPLANE,
        point_repr: "(x, y)",
        metric: Arc::new(euclid),
        sampler: Arc::new(move |rng: &mut SeededRng| {
            vec![rng.gen_range(-plane_box..plane_box), rng.gen_range(-plane_box..plane_box)]
        }),
    });
    reg.add_unit(Unit {
        name: ESPACE,
        point_repr: "(x, y, z)",
        metric: Arc::new(euclid),
        sampler: Arc::new(|rng: &mut SeededRng| (0..3).map(|_| rng.gen_range(-3.0..3.0)).collect()),
    });
    reg.add_unit(Unit {
        name: ISPACE,
        point_repr: "hyperboloid (x0, x1, x2, x3)",
        metric: hyperbolic(k),
        sampler: Arc::new(move |rng: &mut SeededRng| {
            sample::point(3, k, 3.0 * k.r(), rng).coords().as_slice().to_vec()
        }),
    });
    reg.add_unit(Unit {
        name: IPLANE,
        point_repr: "hyperboloid (x0, x1, x2)",
        metric: hyperbolic(k),
        sampler: Arc::new(move |rng: &mut SeededRng| {
            sample::point(2, k, 3.0 * k.r(), rng).coords().as_slice().to_vec()
        }),
    });
    reg.add_unit(Unit {
        name: CIRCLE,
        point_repr: "angle θ",
        metric: Arc::new(|p: &[f64], q: &[f64]| {
            let d = (p[0] - q[0]).abs() % (2.0 * PI);
            d.min(2.0 * PI - d)
        }),
        sampler: Arc::new(|rng: &mut SeededRng| vec![rng.gen_range(-PI..PI)]),
    });
    reg.add_unit(Unit {
        name: SPHERE,
        point_repr: "unit vector (x, y, z)",
        metric: Arc::new(unit_arc),
        sampler: Arc::new(|rng: &mut SeededRng| sphere::random_point(1.0, rng).to_vec()),
    });

    let maps = [
        UnitMap {
            name: "e".into(),
            source: EPLANE,
            target: ESPACE,
            apply: Arc::new(|p: &[f64]| {
                (0..3).map(|i| E_ORIGIN[i] + p[0] * E_AXES[0][i] + p[1] * E_AXES[1][i]).collect()
            }),
            isometric: true,
            // the image is an affine plane: chords are its geodesics
            image_metric: Some(Arc::new(euclid)),
            tolerance: 1e-12,
            is_identity: false,
        },
        {
            let chart: HoroChart = builtin_horosphere(k).chart();
            let h = chart.horosphere();
            UnitMap {
                name: "h".into(),
                source: EPLANE,
                target: ISPACE,
                apply: Arc::new(move |p: &[f64]| chart.embed([p[0], p[1]]).coords().as_slice().to_vec()),
                isometric: true,
                // path length along the surface, independent of the chart
                image_metric: Some(Arc::new(move |p: &[f64], q: &[f64]| {
                    let a = HPoint::new(MVec::from_slice(p).expect("model point"), k).expect("on sheet");
                    let b = HPoint::new(MVec::from_slice(q).expect("model point"), k).expect("on sheet");
                    h.discretized_distance(&a, &b).expect("on the horosphere")
                })),
                tolerance: 1e-5,
                is_identity: false,
            }
        },
        UnitMap {
            name: "c".into(),
            source: CIRCLE,
            target: EPLANE,
            apply: Arc::new(|p: &[f64]| vec![p[0].cos(), p[0].sin()]),
            isometric: true,
            image_metric: Some(Arc::new(unit_arc)),
            tolerance: 1e-12,
            is_identity: false,
        },
        UnitMap {
            name: "sphere-embed".into(),
            source: SPHERE,
            target: ESPACE,
            apply: Arc::new(|p: &[f64]| p.to_vec()),
            isometric: true,
            image_metric: Some(Arc::new(unit_arc)),
            tolerance: 1e-12,
            is_identity: false,
        },
    ];
    for m in maps {
        reg.add_map(m).expect("builtin units");
    }
    for kind in Projection::ALL {
        reg.add_map(disk_map(kind, k)).expect("builtin units");
    }
    reg
}

/// A disk picture as a (non-isometric) map IPLANE → EPLANE.
pub fn disk_map(kind: Projection, k: Curvature) -> UnitMap {
    UnitMap {
        name: kind.name().into(),
        source: IPLANE,
        target: EPLANE,
        apply: Arc::new(move |p: &[f64]| {
            let x = HPoint::new(MVec::from_slice(p).expect("model point"), k).expect("on sheet");
            to_disk(&x, kind).expect("H² point").to_vec()
        }),
        isometric: false,
        image_metric: None,
        tolerance: 0.0,
        is_identity: false,
    }
}

/// Inverse picture, used by tests of the disk maps.
pub fn disk_inverse(kind: Projection, k: Curvature, q: [f64; 2]) -> Result<Vec<f64>> {
    Ok(from_disk(q, kind, k)?.coords().as_slice().to_vec())
}

/// How the image metric was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ImageMetric {
    ClosedForm,
    Graph,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IsometryReport {
    pub map: String,
    pub pairs: usize,
    /// Largest `|d_image - d_source| / d_source`.
    pub max_deviation: f64,
    pub tolerance: f64,
    pub method: ImageMetric,
    pub pass: bool,
}

/// Compares the source metric with the intrinsic metric of the image on
/// `pairs` sampled pairs.
pub fn check_isometric(
    reg: &Registry,
    f: &UnitMap,
    pairs: usize,
    tol: f64,
    rng: &mut SeededRng,
) -> Result<IsometryReport> {
    let src = reg.unit(f.source)?;
    let tgt = reg.unit(f.target)?;
    let mut worst: f64 = 0.0;
    let method = match &f.image_metric {
        Some(metric) => {
            for _ in 0..pairs {
                let (p, q) = (src.sample(rng), src.sample(rng));
                let d = src.distance(&p, &q);
                if d <= 1e-9 {
                    continue;
                }
                let di = metric(&f.apply(&p), &f.apply(&q));
                worst = worst.max((di - d).abs() / d);
            }
            ImageMetric::ClosedForm
        }
        None => {
            let cloud: Vec<Vec<f64>> = (0..GRAPH_NODES).map(|_| src.sample(rng)).collect();
            let image: Vec<Vec<f64>> = cloud.iter().map(|p| f.apply(p)).collect();
            let graph = KnnGraph::new(&image, GRAPH_NEIGHBOURS, |a, b| tgt.distance(a, b));
            for _ in 0..pairs {
                let i = rng.gen_range(0..cloud.len());
                let j = rng.gen_range(0..cloud.len());
                let d = src.distance(&cloud[i], &cloud[j]);
                if d <= 0.05 {
                    continue;
                }
                let di = graph.shortest_path(i, j);
                worst = worst.max((di - d).abs() / d);
            }
            ImageMetric::Graph
        }
    };
    Ok(IsometryReport {
        map: f.name.clone(),
        pairs,
        max_deviation: worst,
        tolerance: tol,
        method,
        pass: worst < tol,
    })
}

const GRAPH_NODES: usize = 1500;
const GRAPH_NEIGHBOURS: usize = 6;

/// Symmetric k-nearest-neighbour graph, joined with every edge no longer
/// than 1.5 times the longest edge of a minimum spanning tree (so the graph
/// is connected and keeps short cycles across gaps). Edge weights come from
/// a metric.
pub struct KnnGraph {
    adj: Vec<Vec<(usize, f64)>>,
}

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // reversed for a min-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

impl KnnGraph {
    pub fn new<F: Fn(&[f64], &[f64]) -> f64>(points: &[Vec<f64>], k: usize, metric: F) -> Self {
        let n = points.len();
        let weights: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| metric(&points[i], &points[j])).collect())
            .collect();
        let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for i in 0..n {
            let mut row: Vec<(usize, f64)> =
                (0..n).filter(|&j| j != i).map(|j| (j, weights[i][j])).collect();
            row.sort_by(|a, b| a.1.total_cmp(&b.1));
            for &(j, w) in row.iter().take(k) {
                adj[i].push((j, w));
                adj[j].push((i, w));
            }
        }
        // Prim, for the longest tree edge
        let mut longest: f64 = 0.0;
        let mut in_tree = vec![false; n];
        let mut best = vec![(f64::INFINITY, 0usize); n];
        if n > 0 {
            best[0] = (0.0, 0);
        }
        for _ in 0..n {
            let u = (0..n)
                .filter(|&i| !in_tree[i])
                .min_by(|&a, &b| best[a].0.total_cmp(&best[b].0))
                .expect("vertex left");
            in_tree[u] = true;
            if u != best[u].1 {
                longest = longest.max(best[u].0);
            }
            for v in 0..n {
                if !in_tree[v] && weights[u][v] < best[v].0 {
                    best[v] = (weights[u][v], u);
                }
            }
        }
        let reach = 1.5 * longest;
        for i in 0..n {
            for j in (i + 1)..n {
                if weights[i][j] <= reach {
                    adj[i].push((j, weights[i][j]));
                    adj[j].push((i, weights[i][j]));
                }
            }
        }
        KnnGraph { adj }
    }

    /// Dijkstra distance between nodes; infinite if disconnected.
    pub fn shortest_path(&self, from: usize, to: usize) -> f64 {
        let mut dist = vec![f64::INFINITY; self.adj.len()];
        let mut heap = BinaryHeap::new();
        dist[from] = 0.0;
        heap.push(Entry(0.0, from));
        while let Some(Entry(d, u)) = heap.pop() {
            if u == to {
                return d;
            }
            if d > dist[u] {
                continue;
            }
            for &(v, w) in &self.adj[u] {
                let nd = d + w;
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Entry(nd, v));
                }
            }
        }
        dist[to]
    }
}

/// Two instantiations of one unit in different ambient spaces.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Instantiations {
    pub unit: &'static str,
    pub first: IsometryReport,
    pub second: IsometryReport,
    pub first_target: &'static str,
    pub second_target: &'static str,
    /// Both images carry the metric of the unit.
    pub same_type: bool,
    /// The images live in different spaces. No map between them is built.
    pub ambient_differs: bool,
}

pub fn compare_instantiations(
    reg: &Registry,
    unit: &'static str,
    f: &UnitMap,
    g: &UnitMap,
    pairs: usize,
    rng: &mut SeededRng,
) -> Result<Instantiations> {
    for m in [f, g] {
        if m.source != unit {
            return Err(GeomError::UnitMismatch { expected: unit, found: m.source });
        }
    }
    let first = check_isometric(reg, f, pairs, f.tolerance, rng)?;
    let second = check_isometric(reg, g, pairs, g.tolerance, rng)?;
    Ok(Instantiations {
        unit,
        same_type: first.pass && second.pass,
        first,
        second,
        first_target: f.target,
        second_target: g.target,
        ambient_differs: f.target != g.target,
    })
}

/// Largest pointwise difference of two maps with the same source and target
/// on `samples` sampled points.
pub fn pointwise_gap(
    reg: &Registry,
    f: &UnitMap,
    g: &UnitMap,
    samples: usize,
    rng: &mut SeededRng,
) -> Result<f64> {
    if f.source != g.source || f.target != g.target {
        return Err(GeomError::UnitMismatch { expected: f.target, found: g.target });
    }
    let src = reg.unit(f.source)?;
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let p = src.sample(rng);
        let (a, b) = (f.apply(&p), g.apply(&p));
        let gap = a.iter().zip(&b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        worst = worst.max(gap);
    }
    Ok(worst)
}

/// Residuals of the category laws over the composable chains of `reg`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LawReport {
    pub composites: usize,
    pub identity: f64,
    pub associativity: f64,
}

/// Checks `f ∘ id = f = id ∘ f` and `(h∘g)∘f = h∘(g∘f)` pointwise on up to
/// `composites` chains (cycling through all composable triples).
pub fn category_laws(
    reg: &Registry,
    composites: usize,
    samples: usize,
    rng: &mut SeededRng,
) -> Result<LawReport> {
    let mut report = LawReport::default();
    for f in reg.maps() {
        let left = compose(reg.identity(f.source)?, f)?;
        let right = compose(f, reg.identity(f.target)?)?;
        report.identity = report
            .identity
            .max(pointwise_gap(reg, &left, f, samples, rng)?)
            .max(pointwise_gap(reg, &right, f, samples, rng)?);
    }
    let triples = reg.composable_triples();
    for n in 0..composites {
        let (f, g, h) = triples[n % triples.len()];
        let a = compose(&compose(f, g)?, h)?;
        let b = compose(f, &compose(g, h)?)?;
        report.associativity = report.associativity.max(pointwise_gap(reg, &a, &b, samples, rng)?);
        report.composites += 1;
    }
    Ok(report)
}
