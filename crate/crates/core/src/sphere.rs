//! Points of the round sphere of radius R in R³, measured extrinsically.

use core::f64::consts::PI;

// Needed without std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::sample;

pub type V3 = [f64; 3];

pub fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

pub fn scale(a: V3, k: f64) -> V3 {
    [a[0] * k, a[1] * k, a[2] * k]
}

pub fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Angle between two nonzero vectors, in `[0, π]`.
pub fn vector_angle(a: V3, b: V3) -> f64 {
    norm(cross(a, b)).atan2(dot(a, b))
}

/// Great-circle distance between points of the sphere of radius `radius`.
pub fn great_circle_distance(p: V3, q: V3, radius: f64) -> f64 {
    radius * vector_angle(p, q)
}

/// Angle at `p` between the great circles toward `q1` and `q2`.
pub fn angle_at(p: V3, q1: V3, q2: V3) -> f64 {
    let pp = dot(p, p);
    let t1 = sub(q1, scale(p, dot(p, q1) / pp));
    let t2 = sub(q2, scale(p, dot(p, q2) / pp));
    vector_angle(t1, t2)
}

/// Moves from `p` along the unit tangent `t` by arc length `s`.
pub fn exp(p: V3, t: V3, s: f64, radius: f64) -> V3 {
    let (sn, cs) = (s / radius).sin_cos();
    add(scale(p, cs), scale(t, radius * sn))
}

/// Uniform random point of the sphere of radius `radius`.
pub fn random_point<R: Rng + ?Sized>(radius: f64, rng: &mut R) -> V3 {
    scale(sample::unit_vector(3, rng), radius)
}

/// Two orthonormal tangents at `p`, rotated by a random angle.
pub fn random_tangent_pair<R: Rng + ?Sized>(p: V3, rng: &mut R) -> (V3, V3) {
    let n = scale(p, 1.0 / norm(p));
    let helper = if n[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = cross(n, helper);
    let e1 = scale(e1, 1.0 / norm(e1));
    let e2 = cross(n, e1);
    let (sn, cs) = rng.gen_range(-PI..PI).sin_cos();
    (add(scale(e1, cs), scale(e2, sn)), add(scale(e1, -sn), scale(e2, cs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn octant() {
        let x = [1.0, 0.0, 0.0];
        let y = [0.0, 1.0, 0.0];
        let z = [0.0, 0.0, 1.0];
        assert_abs_diff_eq!(great_circle_distance(x, y, 1.0), PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(angle_at(z, x, y), PI / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(great_circle_distance(scale(x, 3.0), scale(z, 3.0), 3.0), 1.5 * PI);
    }
}
