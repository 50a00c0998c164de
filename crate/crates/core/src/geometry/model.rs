//! Coordinate models: Minkowski form and boosts on the hyperboloid,
//! orthonormal complements, and quadrature over low-dimensional spheres.

use crate::numerics::{gauss_legendre, lit, Real};
use crate::{Error, Result};

/// [x, y] = −x₁y₁ − … − x_n y_n + x_{n+1} y_{n+1}.
pub fn minkowski<T: Real>(x: &[T], y: &[T]) -> T {
    let n = x.len() - 1;
    let spatial: T = x[..n].iter().zip(&y[..n]).map(|(&a, &b)| a * b).sum();
    x[n] * y[n] - spatial
}

pub fn dot<T: Real>(x: &[T], y: &[T]) -> T {
    x.iter().zip(y).map(|(&a, &b)| a * b).sum()
}

pub fn norm<T: Real>(x: &[T]) -> T {
    dot(x, x).sqrt()
}

/// Lorentz boost B_x with B_x e_{n+1} = x, applied to `v`.
pub fn boost<T: Real>(x: &[T], v: &[T]) -> Vec<T> {
    let n = x.len() - 1;
    let p = &x[..n];
    let c = x[n];
    let pv = dot(p, &v[..n]);
    let mut out: Vec<T> = (0..n)
        .map(|i| v[i] + p[i] * pv / (T::one() + c) + p[i] * v[n])
        .collect();
    out.push(pv + c * v[n]);
    out
}

/// Orthonormal basis of the complement of the unit vector `x`.
pub fn complement_basis<T: Real>(x: &[T]) -> Vec<Vec<T>> {
    let d = x.len();
    // start from the coordinate axes, dropping the one most aligned with x
    let skip = (0..d)
        .max_by(|&i, &j| {
            x[i].abs()
                .partial_cmp(&x[j].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    let mut basis: Vec<Vec<T>> = Vec::with_capacity(d - 1);
    for i in (0..d).filter(|&i| i != skip) {
        let mut v = vec![T::zero(); d];
        v[i] = T::one();
        for _ in 0..2 {
            let px = dot(&v, x);
            v.iter_mut().zip(x).for_each(|(a, &b)| *a -= px * b);
            for b in &basis {
                let pb = dot(&v, b);
                v.iter_mut().zip(b).for_each(|(a, &c)| *a -= pb * c);
            }
        }
        let nv = norm(&v);
        v.iter_mut().for_each(|a| *a /= nv);
        basis.push(v);
    }
    basis
}

/// Resolution of the rotation-family quadratures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AngularRule {
    /// Trapezoid nodes on S¹.
    pub circle: usize,
    /// Gauss–Legendre nodes in the polar coordinate on S².
    pub polar: usize,
    /// Trapezoid nodes in the azimuth on S².
    pub azimuth: usize,
    /// Circle nodes for the inner average of line families in ℝ³.
    pub inner_circle: usize,
}

impl Default for AngularRule {
    fn default() -> Self {
        AngularRule {
            circle: 256,
            polar: 32,
            azimuth: 64,
            inner_circle: 48,
        }
    }
}

impl AngularRule {
    /// Nodes and weights (summing to 1) of the uniform probability measure
    /// on S^{d−1} ⊂ ℝ^d, d ∈ {2, 3}.
    pub fn sphere<T: Real>(&self, d: usize) -> Result<Vec<(Vec<T>, T)>> {
        match d {
            2 => {
                let n = self.circle;
                let w = T::one() / lit(n as f64);
                Ok((0..n)
                    .map(|i| {
                        let a = T::TAU() * lit(i as f64) / lit(n as f64);
                        (vec![a.cos(), a.sin()], w)
                    })
                    .collect())
            }
            3 => {
                let (z, wz) = gauss_legendre::<T>(self.polar);
                let na = self.azimuth;
                let mut out = Vec::with_capacity(z.len() * na);
                for (&zi, &wi) in z.iter().zip(&wz) {
                    let rho = (T::one() - zi * zi).max(T::zero()).sqrt();
                    for j in 0..na {
                        let a = T::TAU() * (lit::<T>(j as f64) + lit(0.5)) / lit(na as f64);
                        out.push((
                            vec![rho * a.cos(), rho * a.sin(), zi],
                            wi / lit(2.0 * na as f64),
                        ));
                    }
                }
                Ok(out)
            }
            _ => Err(Error::Unsupported(format!(
                "angular quadrature on S^{} (only circles and 2-spheres are supported)",
                d.saturating_sub(1)
            ))),
        }
    }
}
