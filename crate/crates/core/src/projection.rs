//! Disk pictures of the hyperbolic plane.
//!
//! Klein: `x ↦ (x1, x2) / x0`; geodesics become straight chords, angles are
//! not preserved. Poincaré: `x ↦ (x1, x2) / (1 + x0)`; conformal, geodesics
//! become circular arcs. Both are taken after scaling the model to `r = 1`.

use core::fmt;
use core::str::FromStr;

// Needed without std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{GeomError, Result};
use crate::minkowski::{angle_between, Curvature, Geodesic, HPoint, MVec};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Projection {
    #[default]
    Poincare,
    Klein,
}

impl Projection {
    pub const ALL: [Projection; 2] = [Projection::Poincare, Projection::Klein];

    pub fn name(self) -> &'static str {
        match self {
            Projection::Poincare => "poincare",
            Projection::Klein => "klein",
        }
    }

    /// Image of a vector `(x0, x1, x2)` of the unit model.
    fn of_unit(self, x: &MVec) -> [f64; 2] {
        let d = match self {
            Projection::Klein => x[0],
            Projection::Poincare => 1.0 + x[0],
        };
        [x[1] / d, x[2] / d]
    }

    /// Image of an ideal point (a point of the unit circle in both pictures).
    pub fn ideal(self, xi: &MVec) -> [f64; 2] {
        [xi[1] / xi[0], xi[2] / xi[0]]
    }
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Projection {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "poincare" => Ok(Projection::Poincare),
            "klein" => Ok(Projection::Klein),
            _ => Err(GeomError::NotFound),
        }
    }
}

/// Planar image of a point of H² in the unit disk.
pub fn to_disk(p: &HPoint, kind: Projection) -> Result<[f64; 2]> {
    if p.dim() != 2 {
        return Err(GeomError::UnsupportedDimension(p.coords().len()));
    }
    Ok(kind.of_unit(&(p.coords() * (1.0 / p.r()))))
}

/// Inverse of [`to_disk`].
pub fn from_disk(q: [f64; 2], kind: Projection, k: Curvature) -> Result<HPoint> {
    let s = q[0] * q[0] + q[1] * q[1];
    if !(s < 1.0) {
        return Err(GeomError::OutOfRange { what: "disk radius²", value: s });
    }
    let x = match kind {
        Projection::Klein => {
            let w = 1.0 / (1.0 - s).sqrt();
            MVec::new3(w, w * q[0], w * q[1])
        }
        Projection::Poincare => {
            let w = 1.0 / (1.0 - s);
            MVec::new3(w * (1.0 + s), w * 2.0 * q[0], w * 2.0 * q[1])
        }
    };
    HPoint::new(x * k.r(), k)
}

/// Largest distance from the Klein image of `samples` points of `g` (arc
/// length within `±span`) to the chord joining the images of its ends.
pub fn klein_chord_residual(g: &Geodesic, samples: usize, span: f64) -> Result<f64> {
    let (f, b) = g.ideal_endpoints();
    let e1 = Projection::Klein.ideal(&f.vector());
    let e2 = Projection::Klein.ideal(&b.vector());
    let d = [e2[0] - e1[0], e2[1] - e1[1]];
    let len = d[0].hypot(d[1]);
    let mut worst: f64 = 0.0;
    for i in 0..samples {
        let s = -span + 2.0 * span * i as f64 / (samples.max(2) - 1) as f64;
        let q = to_disk(&g.point_at(s), Projection::Klein)?;
        let cross = (q[0] - e1[0]) * d[1] - (q[1] - e1[1]) * d[0];
        worst = worst.max(cross.abs() / len);
    }
    Ok(worst)
}

/// `|angle in the picture - hyperbolic angle|` at the crossing point of two
/// geodesics through `g1.base()`, with picture tangents taken by central
/// differences of step `h`.
pub fn crossing_angle_error(g1: &Geodesic, g2: &Geodesic, kind: Projection, h: f64) -> Result<f64> {
    let tangent = |g: &Geodesic| -> Result<[f64; 2]> {
        let a = to_disk(&g.point_at(h), kind)?;
        let b = to_disk(&g.point_at(-h), kind)?;
        Ok([a[0] - b[0], a[1] - b[1]])
    };
    let (t1, t2) = (tangent(g1)?, tangent(g2)?);
    let picture = (t1[0] * t2[1] - t1[1] * t2[0]).abs().atan2(t1[0] * t2[0] + t1[1] * t2[1]);
    let true_angle = angle_between(&g1.dir(), &g2.dir());
    Ok((picture - true_angle).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample;

    #[test]
    fn origin_maps_to_centre() {
        for r in [1.0, 3.0] {
            let o = HPoint::origin(2, Curvature::new(r).unwrap()).unwrap();
            for kind in Projection::ALL {
                assert_eq!(to_disk(&o, kind).unwrap(), [0.0, 0.0]);
            }
        }
    }

    #[test]
    fn round_trips() {
        let k = Curvature::new(1.5).unwrap();
        let mut rng = sample::rng(2);
        for _ in 0..200 {
            let p = sample::point(2, k, 4.0, &mut rng);
            for kind in Projection::ALL {
                let q = to_disk(&p, kind).unwrap();
                let back = from_disk(q, kind, k).unwrap();
                let q2 = to_disk(&back, kind).unwrap();
                assert!((q[0] - q2[0]).abs().max((q[1] - q2[1]).abs()) < 1e-12);
            }
        }
        assert!(from_disk([1.0, 0.0], Projection::Klein, k).is_err());
    }

    #[test]
    fn klein_chords_and_poincare_angles() {
        let mut rng = sample::rng(6);
        for _ in 0..50 {
            let p = sample::point(2, Curvature::UNIT, 2.0, &mut rng);
            let g1 = Geodesic::new(sample::tangent(&p, &mut rng));
            let g2 = Geodesic::new(sample::tangent(&p, &mut rng));
            assert!(klein_chord_residual(&g1, 100, 6.0).unwrap() < 1e-12);
            assert!(crossing_angle_error(&g1, &g2, Projection::Poincare, 1e-5).unwrap() < 1e-9);
        }
    }

    #[test]
    fn names_parse() {
        for kind in Projection::ALL {
            assert_eq!(kind.name().parse::<Projection>().unwrap(), kind);
        }
        assert!("beltrami".parse::<Projection>().is_err());
    }
}
