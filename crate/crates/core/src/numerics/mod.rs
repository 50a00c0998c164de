//! Shared numerical substrate: quadrature for weakly singular kernels,
//! Richardson extrapolation, special functions and interpolation.

mod chebyshev;
mod interp;
pub(crate) mod quadrature;
mod richardson;
pub(crate) mod special;

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

pub use chebyshev::Chebyshev;
pub use interp::{CatmullRom, Pchip};
pub use quadrature::{
    exp_sinh, gauss_legendre, gauss_legendre_adaptive, integrate_singular, integrate_tail,
    tanh_sinh, tanh_sinh_with_distances, Endpoint, QuadResult, QuadratureSpec, RuleKind, TailSpec,
};
pub use richardson::{
    derivative_at, derivative_at_with, limit_at_zero, DerivativeOptions, LimitEstimate,
    LimitSchedule, Side,
};
pub use special::{binomial, factorial, gamma_fn, surface_area};

/// Floating point scalar used throughout the crate (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Sum
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

#[inline]
pub(crate) fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Tolerance used for quadratures nested inside numerical derivatives.
pub(crate) fn inner_tol<T: Real>() -> T {
    lit::<T>(1e-13).max(T::epsilon() * lit(64.0))
}

/// Relative discrepancy with the additive floor used for zero crossings.
pub fn relative_discrepancy<T: Real>(lhs: T, rhs: T) -> T {
    (lhs - rhs).abs() / (rhs.abs() + lit(1e-30))
}
