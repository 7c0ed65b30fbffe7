// Needed without std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use super::geodesic::Geodesic;
use super::point::{HPoint, IdealPoint, Tangent};
use super::vector::MVec;
use crate::error::{GeomError, Result};

/// An orthochronous Lorentz transformation of R^{n,1}.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    m: [[f64; 4]; 4],
    len: usize,
}

impl Isometry {
    pub fn identity(n: usize) -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Isometry { m, len: n + 1 }
    }

    /// Builds an isometry from row-major entries, validating the Lorentz condition.
    pub fn from_rows(rows: &[&[f64]], tol: f64) -> Result<Self> {
        let len = rows.len();
        if !(3..=4).contains(&len) || rows.iter().any(|r| r.len() != len) {
            return Err(GeomError::UnsupportedDimension(len));
        }
        let mut m = [[0.0; 4]; 4];
        for (i, row) in rows.iter().enumerate() {
            m[i][..len].copy_from_slice(row);
        }
        let iso = Isometry { m, len };
        let residual = iso.lorentz_residual();
        if residual > tol || !(m[0][0] > 0.0) {
            return Err(GeomError::OutOfRange { what: "lorentz residual", value: residual });
        }
        Ok(iso)
    }

    /// Rotation by `theta` in the spatial coordinate plane `(i, j)`, `1 <= i, j <= n`.
    pub fn rotation(n: usize, i: usize, j: usize, theta: f64) -> Self {
        let mut iso = Isometry::identity(n);
        let (s, c) = theta.sin_cos();
        iso.m[i][i] = c;
        iso.m[j][j] = c;
        iso.m[i][j] = -s;
        iso.m[j][i] = s;
        iso
    }

    /// Boost with rapidity `phi` along spatial axis `i`; moves the origin
    /// a distance `r phi` toward `+e_i`.
    pub fn boost(n: usize, i: usize, phi: f64) -> Self {
        let mut iso = Isometry::identity(n);
        let (s, c) = (phi.sinh(), phi.cosh());
        iso.m[0][0] = c;
        iso.m[i][i] = c;
        iso.m[0][i] = s;
        iso.m[i][0] = s;
        iso
    }

    /// A random isometry: rotations in every coordinate plane and a boost of
    /// rapidity up to `max_rapidity`.
    pub fn random<R: Rng + ?Sized>(n: usize, max_rapidity: f64, rng: &mut R) -> Self {
        use core::f64::consts::PI;
        let mut iso = Isometry::identity(n);
        for i in 1..=n {
            for j in (i + 1)..=n {
                iso = iso.then(&Isometry::rotation(n, i, j, rng.gen_range(-PI..PI)));
            }
        }
        iso = iso.then(&Isometry::boost(n, 1, rng.gen_range(0.0..=max_rapidity)));
        for i in 1..=n {
            for j in (i + 1)..=n {
                iso = iso.then(&Isometry::rotation(n, i, j, rng.gen_range(-PI..PI)));
            }
        }
        iso
    }

    /// `other ∘ self`: apply `self` first, then `other`.
    pub fn then(&self, other: &Isometry) -> Isometry {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate().take(self.len) {
            for (j, cell) in row.iter_mut().enumerate().take(self.len) {
                *cell = (0..self.len).map(|k| other.m[i][k] * self.m[k][j]).sum();
            }
        }
        Isometry { m, len: self.len }
    }

    pub fn apply_vec(&self, v: &MVec) -> MVec {
        let mut out = MVec::zero(self.len);
        for i in 0..self.len {
            out[i] = (0..self.len).map(|k| self.m[i][k] * v[k]).sum();
        }
        out
    }

    pub fn apply(&self, p: &HPoint) -> HPoint {
        HPoint::snap(self.apply_vec(&p.coords()), p.curvature())
    }

    pub fn apply_ideal(&self, xi: &IdealPoint) -> IdealPoint {
        IdealPoint::from_null(self.apply_vec(&xi.vector()))
    }

    pub fn apply_geodesic(&self, g: &Geodesic) -> Geodesic {
        let base = self.apply(&g.base());
        let v = base.to_tangent(&self.apply_vec(&g.dir()));
        Geodesic::new(Tangent::unchecked(base, v * (1.0 / v.space_norm())))
    }

    /// Max entry of `Lᵀ J L - J`.
    pub fn lorentz_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.len {
            for j in 0..self.len {
                let mut acc = -self.m[0][i] * self.m[0][j];
                for k in 1..self.len {
                    acc += self.m[k][i] * self.m[k][j];
                }
                let target = if i != j {
                    0.0
                } else if i == 0 {
                    -1.0
                } else {
                    1.0
                };
                worst = worst.max((acc - target).abs());
            }
        }
        worst
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.m[i][j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::Curvature;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_isometries_preserve_form_and_sheet() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2, 3] {
            for _ in 0..50 {
                let iso = Isometry::random(n, 2.0, &mut rng);
                assert!(iso.lorentz_residual() < 1e-12);
                assert!(iso.entry(0, 0) >= 1.0);
            }
        }
    }

    #[test]
    fn boost_moves_origin_by_rapidity() {
        let k = Curvature::new(2.0).unwrap();
        let o = HPoint::origin(2, k).unwrap();
        let p = Isometry::boost(2, 1, 0.75).apply(&o);
        approx::assert_abs_diff_eq!(o.distance(&p).unwrap(), 1.5, epsilon = 1e-14);
    }

    #[test]
    fn from_rows_validates() {
        assert!(Isometry::from_rows(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]], 1e-12)
            .is_ok());
        assert!(Isometry::from_rows(&[&[2.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]], 1e-12)
            .is_err());
        assert!(
            Isometry::from_rows(&[&[-1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]], 1e-12)
                .is_err()
        );
    }
}
