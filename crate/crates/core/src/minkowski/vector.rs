//! Vectors of Minkowski space R^{n,1} for n = 2, 3.
//!
//! Component 0 is the timelike coordinate. The bilinear form is
//! `<u, v> = -u0 v0 + u1 v1 + ... + un vn`.

use alloc::vec::Vec;
use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

// Needed without std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{GeomError, Result};

/// A vector with 3 (H²) or 4 (H³) Minkowski components.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MVec {
    c: [f64; 4],
    len: usize,
}

impl MVec {
    pub fn from_slice(xs: &[f64]) -> Result<Self> {
        match xs.len() {
            3 => Ok(MVec::new3(xs[0], xs[1], xs[2])),
            4 => Ok(MVec::new4(xs[0], xs[1], xs[2], xs[3])),
            n => Err(GeomError::UnsupportedDimension(n)),
        }
    }

    pub const fn new3(x0: f64, x1: f64, x2: f64) -> Self {
        MVec { c: [x0, x1, x2, 0.0], len: 3 }
    }

    pub const fn new4(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        MVec { c: [x0, x1, x2, x3], len: 4 }
    }

    pub const fn zero(len: usize) -> Self {
        MVec { c: [0.0; 4], len }
    }

    /// Standard basis vector `e_i` in a space with `len` components.
    pub fn axis(len: usize, i: usize) -> Self {
        let mut v = MVec::zero(len);
        v.c[i] = 1.0;
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    /// Hyperbolic dimension n (vector length minus one).
    #[inline]
    pub fn hdim(&self) -> usize {
        self.len - 1
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.c[..self.len]
    }

    /// Minkowski form. Callers must have matched the lengths already.
    #[inline]
    pub fn m(&self, other: &MVec) -> f64 {
        debug_assert_eq!(self.len, other.len);
        let mut acc = -self.c[0] * other.c[0];
        for i in 1..self.len {
            acc += self.c[i] * other.c[i];
        }
        acc
    }

    /// Minkowski squared norm `<v, v>`.
    #[inline]
    pub fn m2(&self) -> f64 {
        self.m(self)
    }

    /// Norm of a spacelike vector, `sqrt(<v, v>)`, clamped at zero.
    pub fn space_norm(&self) -> f64 {
        self.m2().max(0.0).sqrt()
    }

    /// Plain Euclidean norm of the coordinate tuple.
    pub fn euclid_norm(&self) -> f64 {
        self.as_slice().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.as_slice().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.as_slice().iter().all(|x| x.is_finite())
    }

    /// Spatial part (components 1..).
    pub fn spatial(&self) -> &[f64] {
        &self.c[1..self.len]
    }
}

/// Minkowski bilinear form `-u0 v0 + sum_{i>=1} ui vi`.
pub fn mdot(u: &MVec, v: &MVec) -> Result<f64> {
    if u.len != v.len {
        return Err(GeomError::DimensionMismatch { left: u.len, right: v.len });
    }
    Ok(u.m(v))
}

pub(crate) fn check_same_len(u: &MVec, v: &MVec) -> Result<()> {
    if u.len != v.len {
        Err(GeomError::DimensionMismatch { left: u.len, right: v.len })
    } else {
        Ok(())
    }
}

/// Determinant of the square matrix whose columns are `cols`.
/// Only 3x3 (three length-3 vectors) and 4x4 are supported.
pub fn det(cols: &[MVec]) -> f64 {
    match cols.len() {
        3 => {
            let [a, b, c] = [cols[0], cols[1], cols[2]];
            a[0] * (b[1] * c[2] - b[2] * c[1]) - b[0] * (a[1] * c[2] - a[2] * c[1])
                + c[0] * (a[1] * b[2] - a[2] * b[1])
        }
        4 => {
            let mut m = [[0.0f64; 4]; 4];
            for (j, col) in cols.iter().enumerate() {
                for (i, row) in m.iter_mut().enumerate() {
                    row[j] = col[i];
                }
            }
            det4(&m)
        }
        n => panic!("det: unsupported size {n}"),
    }
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut total = 0.0;
    for j in 0..4 {
        let mut minor = [[0.0; 3]; 3];
        for i in 1..4 {
            let mut k = 0;
            for jj in 0..4 {
                if jj != j {
                    minor[i - 1][k] = m[i][jj];
                    k += 1;
                }
            }
        }
        let d = minor[0][0] * (minor[1][1] * minor[2][2] - minor[1][2] * minor[2][1])
            - minor[0][1] * (minor[1][0] * minor[2][2] - minor[1][2] * minor[2][0])
            + minor[0][2] * (minor[1][0] * minor[2][1] - minor[1][1] * minor[2][0]);
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * m[0][j] * d;
    }
    total
}

/// Minkowski-orthogonal projection of `v` onto the complement of the span
/// of a Lorentz-orthonormal family `basis` (each with `<b, b> = ±1`).
pub(crate) fn reject(v: &MVec, basis: &[MVec]) -> MVec {
    let mut out = *v;
    for b in basis {
        let s = b.m2();
        out = out - *b * (out.m(b) / s);
    }
    out
}

/// Extends a Lorentz-orthonormal family to a basis of the whole space,
/// returning only the new (spacelike, unit) vectors.
///
/// Coordinate axes are tried greedily, largest residual first, so the
/// result is deterministic.
pub(crate) fn complete_basis(basis: &[MVec]) -> Vec<MVec> {
    let len = basis[0].len();
    let mut all: Vec<MVec> = basis.to_vec();
    let mut out = Vec::new();
    while all.len() < len {
        let best = (0..len)
            .map(|i| reject(&MVec::axis(len, i), &all))
            .max_by(|a, b| a.m2().total_cmp(&b.m2()))
            .expect("nonempty");
        let v = best * (1.0 / best.space_norm());
        all.push(v);
        out.push(v);
    }
    out
}

impl Index<usize> for MVec {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.as_slice()[i]
    }
}

impl IndexMut<usize> for MVec {
    fn index_mut(&mut self, i: usize) -> &mut f64 {
        let len = self.len;
        &mut self.c[..len][i]
    }
}

impl Add for MVec {
    type Output = MVec;
    fn add(mut self, o: MVec) -> MVec {
        debug_assert_eq!(self.len, o.len);
        for i in 0..4 {
            self.c[i] += o.c[i];
        }
        self
    }
}

impl AddAssign for MVec {
    fn add_assign(&mut self, o: MVec) {
        *self = *self + o;
    }
}

impl Sub for MVec {
    type Output = MVec;
    fn sub(mut self, o: MVec) -> MVec {
        debug_assert_eq!(self.len, o.len);
        for i in 0..4 {
            self.c[i] -= o.c[i];
        }
        self
    }
}

impl Mul<f64> for MVec {
    type Output = MVec;
    fn mul(mut self, k: f64) -> MVec {
        for x in self.c.iter_mut() {
            *x *= k;
        }
        self
    }
}

impl Neg for MVec {
    type Output = MVec;
    fn neg(self) -> MVec {
        self * -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_examples() {
        let t = MVec::new3(1.0, 0.0, 0.0);
        let s = MVec::new3(0.0, 1.0, 0.0);
        let n = MVec::new3(1.0, 1.0, 0.0);
        assert_eq!(mdot(&t, &t).unwrap(), -1.0);
        assert_eq!(mdot(&s, &s).unwrap(), 1.0);
        assert_eq!(mdot(&n, &n).unwrap(), 0.0);
    }

    #[test]
    fn mdot_rejects_mismatched_lengths() {
        let a = MVec::new3(1.0, 0.0, 0.0);
        let b = MVec::new4(1.0, 0.0, 0.0, 0.0);
        assert_eq!(
            mdot(&a, &b),
            Err(GeomError::DimensionMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn from_slice_rejects_other_lengths() {
        assert!(MVec::from_slice(&[1.0, 2.0]).is_err());
        assert!(MVec::from_slice(&[1.0; 5]).is_err());
        assert_eq!(MVec::from_slice(&[1.0, 2.0, 3.0]).unwrap().hdim(), 2);
    }

    #[test]
    fn determinants() {
        let e = |i| MVec::axis(3, i);
        assert_eq!(det(&[e(0), e(1), e(2)]), 1.0);
        assert_eq!(det(&[e(1), e(0), e(2)]), -1.0);
        let f = |i| MVec::axis(4, i);
        assert_eq!(det(&[f(0), f(1), f(2), f(3)]), 1.0);
        assert_eq!(det(&[f(0), f(1), f(3), f(2)]), -1.0);
        let g = MVec::new4(2.0, 1.0, 0.0, 0.0);
        assert_eq!(det(&[g, f(1), f(2), f(3)]), 2.0);
    }
}
