use std::f64::consts::PI;

use lobachevsky_core::horosphere::{chart_distance, Horosphere};
use lobachevsky_core::minkowski::{angle_at, Isometry, Tangent};
use lobachevsky_core::parallels::{
    angle_of_parallelism, classify, pencil_of, witness_residual, LineRelation,
};
use lobachevsky_core::{Curvature, Geodesic, HPoint, IdealPoint, MVec};
use proptest::prelude::*;

fn radius() -> impl Strategy<Value = Curvature> {
    prop_oneof![Just(1.0), Just(3.0), 0.3f64..5.0].prop_map(|r| Curvature::new(r).unwrap())
}

/// Spatial coordinates in a box scaled by r, so points stay within a few r
/// of the origin.
fn point(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, n)
}

fn lift(c: &[f64], k: Curvature) -> HPoint {
    let s: Vec<f64> = c.iter().map(|x| x * k.r()).collect();
    HPoint::from_spatial(&s, k).unwrap()
}

fn line(p: &HPoint, dir: &[f64]) -> Option<Geodesic> {
    let mut v = [0.0; 4];
    v[1..=dir.len()].copy_from_slice(dir);
    let v = MVec::from_slice(&v[..dir.len() + 1]).ok()?;
    Tangent::from_any(*p, v).ok().map(Geodesic::new)
}

fn isometry(n: usize) -> impl Strategy<Value = Isometry> {
    (-PI..PI, -2.0f64..2.0, 1..=n, -PI..PI).prop_map(move |(a, phi, axis, b)| {
        Isometry::rotation(n, 1, 2, a)
            .then(&Isometry::boost(n, axis, phi))
            .then(&Isometry::rotation(n, 1, n, b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn distance_is_isometry_invariant(k in radius(), p in point(3), q in point(3), iso in isometry(3)) {
        let (p, q) = (lift(&p, k), lift(&q, k));
        let d = p.distance(&q).unwrap();
        let d2 = iso.apply(&p).distance(&iso.apply(&q)).unwrap();
        prop_assert!((d - d2).abs() < 1e-9 * (1.0 + d), "{d} vs {d2}");
    }

    #[test]
    fn triangle_inequality(k in radius(), a in point(2), b in point(2), c in point(2)) {
        let (a, b, c) = (lift(&a, k), lift(&b, k), lift(&c, k));
        let ab = a.distance(&b).unwrap();
        let bc = b.distance(&c).unwrap();
        let ac = a.distance(&c).unwrap();
        prop_assert!(ac <= ab + bc + 1e-9 * k.r());
    }

    #[test]
    fn triangles_have_a_defect(k in radius(), a in point(2), b in point(2), c in point(2)) {
        let (a, b, c) = (lift(&a, k), lift(&b, k), lift(&c, k));
        let sides = [a.distance(&b).unwrap(), b.distance(&c).unwrap(), a.distance(&c).unwrap()];
        prop_assume!(sides.iter().all(|s| *s > 1e-2 * k.r()));
        let angles = [angle_at(&a, &b, &c).unwrap(), angle_at(&b, &c, &a).unwrap(), angle_at(&c, &a, &b).unwrap()];
        prop_assume!(angles.iter().all(|x| *x > 1e-3));
        prop_assert!(angles.iter().sum::<f64>() < PI);
    }

    #[test]
    fn every_pair_of_lines_has_one_witnessed_relation(
        k in radius(),
        p in point(3), q in point(3),
        u in prop::collection::vec(-1.0f64..1.0, 3),
        w in prop::collection::vec(-1.0f64..1.0, 3),
    ) {
        let (p, q) = (lift(&p, k), lift(&q, k));
        let (Some(l1), Some(l2)) = (line(&p, &u), line(&q, &w)) else { return Ok(()) };
        match classify(&l1, &l2) {
            Ok(rel) => prop_assert!(witness_residual(&l1, &l2, &rel).unwrap() < 1e-8),
            Err(_) => {} // coincident carriers
        }
    }

    #[test]
    fn parallelism_is_transitive_within_a_pencil(
        k in radius(),
        theta in -PI..PI,
        p in point(2), q in point(2), s in point(2),
    ) {
        let xi = IdealPoint::from_direction(&[theta.cos(), theta.sin()]).unwrap();
        let lines: Vec<Geodesic> = [p, q, s].iter().map(|c| pencil_of(&xi, &lift(c, k)).unwrap()).collect();
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let Ok(rel) = classify(&lines[i], &lines[j]) else { continue };
                match rel {
                    LineRelation::BoundaryParallel { shared, .. } => prop_assert!(shared.gap(&xi) < 1e-9),
                    other => prop_assert!(false, "{}", other.kind_name()),
                }
            }
        }
    }

    #[test]
    fn angle_of_parallelism_identity(k in radius(), d in 1e-3f64..10.0) {
        let pi_d = angle_of_parallelism(d * k.r(), k).unwrap();
        prop_assert!(pi_d > 0.0 && pi_d < PI / 2.0);
        prop_assert!((pi_d.sin() * d.cosh() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn horosphere_chart_is_an_isometry(
        k in radius(),
        theta in -PI..PI, level in 0.3f64..3.0,
        u in prop::array::uniform2(-4.0f64..4.0), v in prop::array::uniform2(-4.0f64..4.0),
    ) {
        let xi = IdealPoint::from_direction(&[theta.cos(), theta.sin(), 0.5]).unwrap();
        let h = Horosphere::new(xi, level, k).unwrap();
        let c = h.chart();
        let (x, y) = (c.embed(u), c.embed(v));
        prop_assert!(h.contains(&x) && h.contains(&y));
        let d = chart_distance(u, v);
        prop_assert!((h.intrinsic_distance(&x, &y).unwrap() - d).abs() < 1e-9 * (1.0 + d));
        let back = c.coords_of(&x);
        prop_assert!((back[0] - u[0]).abs().max((back[1] - u[1]).abs()) < 1e-9);
    }
}
