use super::{lit, Real};
use crate::{Error, Result};

/// Monotone piecewise cubic Hermite interpolation (Fritsch–Carlson slopes).
///
/// Between two samples the interpolant stays within their range, so sampled
/// profiles never acquire spurious oscillations or sign changes.
#[derive(Debug, Clone, PartialEq)]
pub struct Pchip<T> {
    x: Vec<T>,
    y: Vec<T>,
    d: Vec<T>,
}

impl<T: Real> Pchip<T> {
    pub fn new(x: Vec<T>, y: Vec<T>) -> Result<Self> {
        let n = x.len();
        if n < 2 || y.len() != n {
            return Err(Error::invalid(
                "pchip needs at least two samples of equal length",
            ));
        }
        if x.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::invalid(
                "pchip abscissae must be strictly increasing",
            ));
        }
        let h: Vec<T> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<T> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / h[i]).collect();
        let mut d = vec![T::zero(); n];
        if n == 2 {
            d[0] = delta[0];
            d[1] = delta[0];
        } else {
            for i in 1..n - 1 {
                if delta[i - 1] * delta[i] > T::zero() {
                    let w1 = lit::<T>(2.0) * h[i] + h[i - 1];
                    let w2 = h[i] + lit::<T>(2.0) * h[i - 1];
                    d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
                }
            }
            d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
            d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }
        Ok(Pchip { x, y, d })
    }

    pub fn knots(&self) -> &[T] {
        &self.x
    }

    /// Evaluates the interpolant; outside the sample range the end values
    /// are returned.
    pub fn eval(&self, t: T) -> T {
        let n = self.x.len();
        if t <= self.x[0] {
            return self.y[0];
        }
        if t >= self.x[n - 1] {
            return self.y[n - 1];
        }
        let i = self
            .x
            .partition_point(|&v| v <= t)
            .saturating_sub(1)
            .min(n - 2);
        let h = self.x[i + 1] - self.x[i];
        let s = (t - self.x[i]) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let two = lit::<T>(2.0);
        let three = lit::<T>(3.0);
        let h00 = two * s3 - three * s2 + T::one();
        let h10 = s3 - two * s2 + s;
        let h01 = three * s2 - two * s3;
        let h11 = s3 - s2;
        h00 * self.y[i] + h10 * h * self.d[i] + h01 * self.y[i + 1] + h11 * h * self.d[i + 1]
    }
}

// three-point end slope, limited to preserve shape
fn end_slope<T: Real>(h0: T, h1: T, del0: T, del1: T) -> T {
    let d = ((lit::<T>(2.0) * h0 + h1) * del0 - h0 * del1) / (h0 + h1);
    if d.signum() != del0.signum() {
        T::zero()
    } else if del0.signum() != del1.signum() && d.abs() > (lit::<T>(3.0) * del0).abs() {
        lit::<T>(3.0) * del0
    } else {
        d
    }
}

/// Catmull–Rom cubic convolution on a uniform grid.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CatmullRom;

impl CatmullRom {
    /// Weights for samples at offsets −1, 0, 1, 2 when interpolating at
    /// fractional position `t ∈ [0, 1]` between offsets 0 and 1.
    pub fn weights<T: Real>(t: T) -> [T; 4] {
        let half = lit::<T>(0.5);
        let t2 = t * t;
        let t3 = t2 * t;
        [
            half * (-t3 + lit::<T>(2.0) * t2 - t),
            half * (lit::<T>(3.0) * t3 - lit::<T>(5.0) * t2 + lit(2.0)),
            half * (lit::<T>(-3.0) * t3 + lit::<T>(4.0) * t2 + t),
            half * (t3 - t2),
        ]
    }

    pub fn interpolate<T: Real>(p: [T; 4], t: T) -> T {
        let w = Self::weights(t);
        p.iter().zip(&w).map(|(&a, &b)| a * b).sum()
    }
}
