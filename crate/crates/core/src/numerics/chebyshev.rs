use rayon::prelude::*;

use super::{lit, Real};
use crate::{Error, Result};

/// Chebyshev expansion of a smooth function on [a, b], built adaptively from
/// samples at Chebyshev extreme points.
#[derive(Debug, Clone, PartialEq)]
pub struct Chebyshev<T> {
    a: T,
    b: T,
    coeffs: Vec<T>,
    converged: bool,
}

const MAX_LOG2: u32 = 11;

impl<T: Real> Chebyshev<T> {
    /// Fits `f` until the trailing coefficients fall below `rel_tol` times
    /// the largest one, doubling the grid (2^m + 1 points, m ≤ 11). Samples
    /// are reused across doublings and evaluated in parallel.
    pub fn fit<F: Fn(T) -> T + Sync>(f: F, a: T, b: T, rel_tol: T) -> Result<Self> {
        if !(a < b) {
            return Err(Error::invalid(format!(
                "Chebyshev fit needs a < b, got [{a}, {b}]"
            )));
        }
        let half = (b - a) / lit(2.0);
        let mid = (a + b) / lit(2.0);
        let node =
            |j: usize, m: usize| mid + half * (T::PI() * lit(j as f64) / lit(m as f64)).cos();

        let mut m = 16usize;
        let mut values: Vec<T> = (0..=m).into_par_iter().map(|j| f(node(j, m))).collect();
        loop {
            if values.iter().any(|v| !v.is_finite()) {
                return Err(Error::NumericFailure {
                    context: "Chebyshev fit sample".into(),
                    best: f64::NAN,
                    error_estimate: f64::INFINITY,
                });
            }
            let coeffs = coefficients(&values);
            let scale = coeffs.iter().fold(T::zero(), |s, c| s.max(c.abs()));
            let tail = coeffs[coeffs.len() - 4..]
                .iter()
                .fold(T::zero(), |s, c| s.max(c.abs()));
            let done = tail <= rel_tol * scale || scale == T::zero();
            if done || m >= 1 << MAX_LOG2 {
                let mut fit = Chebyshev {
                    a,
                    b,
                    coeffs,
                    converged: done,
                };
                fit.chop((rel_tol * lit(0.01)).max(T::epsilon() * lit(16.0)) * scale);
                return Ok(fit);
            }
            // refine: old samples become the even-indexed ones
            let m2 = 2 * m;
            let odd: Vec<T> = (0..m)
                .into_par_iter()
                .map(|i| f(node(2 * i + 1, m2)))
                .collect();
            let mut merged = Vec::with_capacity(m2 + 1);
            for i in 0..m {
                merged.push(values[i]);
                merged.push(odd[i]);
            }
            merged.push(values[m]);
            values = merged;
            m = m2;
        }
    }

    fn chop(&mut self, threshold: T) {
        while self.coeffs.len() > 2 && self.coeffs.last().is_some_and(|c| c.abs() <= threshold) {
            self.coeffs.pop();
        }
    }

    pub fn domain(&self) -> (T, T) {
        (self.a, self.b)
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Clenshaw evaluation; arguments outside the domain are clamped.
    pub fn eval(&self, x: T) -> T {
        let x = x.max(self.a).min(self.b);
        let u = (x + x - self.a - self.b) / (self.b - self.a);
        let (mut b1, mut b2) = (T::zero(), T::zero());
        for &c in self.coeffs.iter().skip(1).rev() {
            let b0 = c + (u + u) * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + u * b1 - b2
    }
}

/// Chebyshev coefficients from samples at cos(πj/m), j = 0..=m.
fn coefficients<T: Real>(values: &[T]) -> Vec<T> {
    let m = values.len() - 1;
    let cos_table: Vec<T> = (0..2 * m)
        .map(|i| (T::PI() * lit(i as f64) / lit(m as f64)).cos())
        .collect();
    (0..=m)
        .map(|k| {
            let mut s = T::zero();
            for (j, &v) in values.iter().enumerate() {
                let w = if j == 0 || j == m { lit(0.5) } else { T::one() };
                s += w * v * cos_table[(j * k) % (2 * m)];
            }
            let c = s * lit(2.0) / lit(m as f64);
            if k == 0 || k == m {
                c / lit(2.0)
            } else {
                c
            }
        })
        .collect()
}
