//! Richardson extrapolation over geometrically halved steps, used both for
//! finite-difference derivatives and for limits at r → 0.

use super::{binomial, lit, to_f64, Real};
use crate::{DivergenceReport, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEstimate<T> {
    pub value: T,
    pub error_estimate: T,
    pub levels_used: usize,
}

/// Which points the finite-difference stencil may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Symmetric stencil; the error expands in even powers of h.
    Central,
    /// Points in [t0, t0 + k h] only.
    Right,
    /// Points in [t0 − k h, t0] only.
    Left,
}

/// Geometric sample schedule r_j = r0 / 2^j, j = 0..levels, extrapolated in
/// powers of r^exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitSchedule<T> {
    pub r0: T,
    pub levels: usize,
    pub exponent: u32,
}

impl<T: Real> Default for LimitSchedule<T> {
    fn default() -> Self {
        LimitSchedule {
            r0: lit(0.4),
            levels: 6,
            exponent: 2,
        }
    }
}

impl<T: Real> LimitSchedule<T> {
    pub fn new(r0: T, levels: usize, exponent: u32) -> Self {
        LimitSchedule {
            r0,
            levels,
            exponent,
        }
    }

    pub fn radii(&self) -> Vec<T> {
        (0..self.levels)
            .map(|j| self.r0 / lit::<T>(2f64.powi(j as i32)))
            .collect()
    }

    /// Bound on how much the extrapolated limit amplifies independent
    /// errors of size ε in the samples, when `levels_used` rows entered the
    /// tableau: the L1 norm of the extrapolation weights.
    pub fn noise_gain(&self, levels_used: usize) -> T {
        (1..levels_used.max(1)).fold(T::one(), |g, j| {
            let q = lit::<T>(2f64.powi((self.exponent as usize * j) as i32));
            g * (q + T::one()) / (q - T::one())
        })
    }

    fn validate(&self) -> Result<()> {
        if self.levels < 2 {
            return Err(Error::invalid("a limit schedule needs at least two levels"));
        }
        if !(self.r0 > T::zero()) || self.exponent == 0 {
            return Err(Error::invalid(
                "limit schedule needs r0 > 0 and a positive exponent",
            ));
        }
        Ok(())
    }
}

/// Neville-style tableau for samples at h/2^i whose error expands in powers
/// h^{p·j}, j = 1, 2, … (`step_power = p`).
///
/// Returns the entry with the smallest local error estimate among all
/// columns, scanned row by row, so that the reported error never grows as
/// rows are added.
fn tableau<T: Real>(samples: &[T], step_power: u32) -> LimitEstimate<T> {
    let mut prev: Vec<T> = vec![samples[0]];
    let mut best = LimitEstimate {
        value: samples[0],
        error_estimate: T::infinity(),
        levels_used: 1,
    };
    for (i, &s) in samples.iter().enumerate().skip(1) {
        let mut row = vec![s];
        for j in 1..=i {
            let factor = lit::<T>(2f64.powi((step_power as usize * j) as i32)) - T::one();
            let v = row[j - 1] + (row[j - 1] - prev[j - 1]) / factor;
            let err = (v - row[j - 1]).abs().max((v - prev[j - 1]).abs());
            if err <= best.error_estimate {
                best = LimitEstimate {
                    value: v,
                    error_estimate: err,
                    levels_used: i + 1,
                };
            }
            row.push(v);
        }
        prev = row;
    }
    best.levels_used = best.levels_used.max(2);
    best
}

/// Tuning for [`derivative_at_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeOptions<T> {
    pub levels: usize,
    pub rel_tol: T,
    pub abs_tol: T,
}

impl<T: Real> Default for DerivativeOptions<T> {
    fn default() -> Self {
        DerivativeOptions {
            levels: 7,
            rel_tol: lit(1e-6),
            abs_tol: lit(1e-9),
        }
    }
}

fn stencil<T: Real, F: Fn(T) -> T>(f: &F, t0: T, order: usize, side: Side, h: T) -> T {
    let k = order;
    let mut acc = T::zero();
    for j in 0..=k {
        let c = binomial::<T>(k, j);
        let sign = if (k - j) % 2 == 0 {
            T::one()
        } else {
            -T::one()
        };
        let offset = match side {
            // (k/2 − (k − j)) h, symmetric about t0
            Side::Central => lit::<T>(j as f64 - k as f64 / 2.0) * h,
            Side::Right => lit::<T>(j as f64) * h,
            Side::Left => -lit::<T>((k - j) as f64) * h,
        };
        acc += sign * c * f(t0 + offset);
    }
    acc / h.powi(k as i32)
}

/// k-th derivative of `f` at `t0` with default options.
pub fn derivative_at<T: Real, F: Fn(T) -> T>(
    f: F,
    t0: T,
    order: usize,
    side: Side,
    step0: T,
) -> Result<LimitEstimate<T>> {
    derivative_at_with(f, t0, order, side, step0, &DerivativeOptions::default())
}

/// k-th derivative by finite differences at steps step0/2^j, combined by
/// Richardson extrapolation. A tableau that does not contract to the
/// requested accuracy yields [`Error::NumericFailure`] carrying the best
/// estimate.
pub fn derivative_at_with<T: Real, F: Fn(T) -> T>(
    f: F,
    t0: T,
    order: usize,
    side: Side,
    step0: T,
    opts: &DerivativeOptions<T>,
) -> Result<LimitEstimate<T>> {
    if order == 0 {
        return Err(Error::invalid("derivative order must be at least 1"));
    }
    if !(step0 > T::zero()) || opts.levels < 2 {
        return Err(Error::invalid(
            "derivative_at needs step0 > 0 and at least two levels",
        ));
    }
    let samples: Vec<T> = (0..opts.levels)
        .map(|j| stencil(&f, t0, order, side, step0 / lit::<T>(2f64.powi(j as i32))))
        .collect();
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::NumericFailure {
            context: format!("derivative of order {order} at {t0}"),
            best: f64::NAN,
            error_estimate: f64::INFINITY,
        });
    }
    let power = if side == Side::Central { 2 } else { 1 };
    let est = tableau(&samples, power);
    if est.error_estimate > opts.rel_tol * est.value.abs() + opts.abs_tol {
        return Err(Error::NumericFailure {
            context: format!("derivative of order {order} at {t0}"),
            best: to_f64(est.value),
            error_estimate: to_f64(est.error_estimate),
        });
    }
    Ok(est)
}

/// lim_{r→0+} f(r) from samples on the schedule, extrapolated in r^p.
///
/// Samples growing geometrically towards r = 0 are reported as
/// [`Error::Divergent`].
pub fn limit_at_zero<T: Real, F: Fn(T) -> T>(
    f: F,
    schedule: &LimitSchedule<T>,
) -> Result<LimitEstimate<T>> {
    schedule.validate()?;
    let radii = schedule.radii();
    let samples: Vec<T> = radii.iter().map(|&r| f(r)).collect();
    let trace = || -> Vec<(f64, f64)> {
        radii
            .iter()
            .zip(&samples)
            .map(|(&r, &v)| (to_f64(r), to_f64(v)))
            .collect()
    };
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::Divergent(DivergenceReport {
            condition: "finite samples approaching r = 0".into(),
            critical_exponent: 0.0,
            margin: f64::NEG_INFINITY,
            partial_integrals: trace(),
        }));
    }
    let tail = &samples[samples.len().saturating_sub(4)..];
    let blowing_up = tail.len() >= 3
        && tail
            .windows(2)
            .all(|w| w[1].abs() > lit::<T>(1.25) * w[0].abs())
        && tail[tail.len() - 1].abs() > T::epsilon().sqrt();
    if blowing_up {
        return Err(Error::Divergent(DivergenceReport {
            condition: "bounded samples approaching r = 0".into(),
            critical_exponent: 0.0,
            margin: -1.0,
            partial_integrals: trace(),
        }));
    }
    Ok(tableau(&samples, schedule.exponent))
}
