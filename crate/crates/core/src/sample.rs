//! Seeded samplers for random configurations.

use core::f64::consts::PI;

// Needed without std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::minkowski::{Curvature, HPoint, MVec, Tangent};

/// The generator used by every seeded check.
pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random unit vector in R^m (m = 2 or 3).
pub fn unit_vector<R: Rng + ?Sized>(m: usize, rng: &mut R) -> [f64; 3] {
    match m {
        2 => {
            let t = rng.gen_range(-PI..PI);
            [t.cos(), t.sin(), 0.0]
        }
        _ => {
            let z: f64 = rng.gen_range(-1.0..=1.0);
            let t = rng.gen_range(-PI..PI);
            let s = (1.0 - z * z).max(0.0).sqrt();
            [s * t.cos(), s * t.sin(), z]
        }
    }
}

/// A point at hyperbolic distance up to `max_dist` from the origin of H^n.
pub fn point<R: Rng + ?Sized>(n: usize, k: Curvature, max_dist: f64, rng: &mut R) -> HPoint {
    let u = unit_vector(n, rng);
    let d = rng.gen_range(0.0..=max_dist);
    let s = k.r() * (d / k.r()).sinh();
    HPoint::from_spatial(&[s * u[0], s * u[1], s * u[2]][..n], k).expect("finite sample")
}

/// A random unit tangent at `p`.
pub fn tangent<R: Rng + ?Sized>(p: &HPoint, rng: &mut R) -> Tangent {
    loop {
        let n = p.dim();
        let u = unit_vector(n, rng);
        let mut v = MVec::zero(n + 1);
        for i in 0..n {
            v[i + 1] = u[i];
        }
        if let Ok(t) = Tangent::from_any(*p, v) {
            return t;
        }
    }
}
