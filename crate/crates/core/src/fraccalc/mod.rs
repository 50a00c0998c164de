//! Fractional integrals of Riemann–Liouville and modified Erdélyi–Kober
//! type on ℝ₊, their existence predicates, composition identities and the
//! left-inverse (derivative) realizations.
//!
//! Conventions, for α > 0:
//!
//! ```text
//! (I^α_+ f)(t)    = 1/Γ(α) ∫_0^t f(s) (t−s)^{α−1} ds
//! (I^α_− f)(t)    = 1/Γ(α) ∫_t^∞ f(s) (s−t)^{α−1} ds
//! (I^α_{+,2} f)(t) = 2/Γ(α) ∫_0^t f(s) (t²−s²)^{α−1} s ds
//! (I^α_{−,2} f)(t) = 2/Γ(α) ∫_t^∞ f(s) (s²−t²)^{α−1} s ds
//! ```

mod composition;
mod derivative;
mod integrals;

use std::fmt;
use std::sync::Arc;

use crate::numerics::{lit, Chebyshev, Pchip, Real, TailSpec};
use crate::{Error, Result};

pub use composition::{verify_composition, Composition};
pub use derivative::{
    ek_derivative, ek_derivative_estimate, ek_plus_derivative, DerivativeVariant,
};
pub(crate) use integrals::accept;
pub use integrals::{ek_integral, ek_minus_weighted, exists_ek, exists_rl, rl_integral};

/// Which end of ℝ₊ the integral runs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// α = m + α₀ with m = ⌊α⌋ and 0 ≤ α₀ < 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder<T> {
    pub alpha: T,
    pub m: usize,
    pub alpha0: T,
}

impl<T: Real> FractionalOrder<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(Error::invalid(format!(
                "fractional order must be positive, got {alpha}"
            )));
        }
        let m = alpha.floor();
        Ok(FractionalOrder {
            alpha,
            m: m.to_usize().unwrap_or(0),
            alpha0: alpha - m,
        })
    }

    /// Order k/2 used by k-dimensional transforms.
    pub fn half(k: usize) -> Result<Self> {
        Self::new(lit::<T>(k as f64) / lit(2.0))
    }

    pub fn is_integer(&self) -> bool {
        self.alpha0 == T::zero()
    }

    /// β = 1 − α₀ = 1 − α + m, the order of the complementary integral.
    pub fn complement(&self) -> T {
        T::one() - self.alpha0
    }
}

/// Declared behaviour of a profile as s → ∞.
///
/// `Power { mu }` means |f(s)| ≲ s^{−μ}; `PowerLog { mu, lambda }` means
/// |f(s)| ≲ s^{−μ} (log s)^{−λ}; `Gaussian` and `Exponential` mean
/// super-polynomial decay (e^{−s²}, e^{−rate·s} up to polynomial factors);
/// `Compact { radius }` means f vanishes for s > radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay<T> {
    Power { mu: T },
    PowerLog { mu: T, lambda: T },
    Gaussian,
    Exponential { rate: T },
    Compact { radius: T },
}

/// Outcome of a moment test ∫_1^∞ |f(s)| s^γ ds < ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentTest<T> {
    pub converges: bool,
    /// Power exponent the decay must exceed (γ + 1).
    pub critical: T,
    /// Decay exponent minus critical exponent (+∞ for fast decay).
    pub margin: T,
}

impl<T: Real> Decay<T> {
    /// Polynomial decay exponent, `None` for super-polynomial classes.
    pub fn exponent(&self) -> Option<T> {
        match *self {
            Decay::Power { mu } | Decay::PowerLog { mu, .. } => Some(mu),
            _ => None,
        }
    }

    pub fn log_exponent(&self) -> T {
        match *self {
            Decay::PowerLog { lambda, .. } => lambda,
            _ => T::zero(),
        }
    }

    /// Decides ∫_1^∞ |f(s)| s^γ ds < ∞ from the decay class.
    pub fn moment(&self, gamma: T) -> MomentTest<T> {
        let critical = gamma + T::one();
        match *self {
            Decay::Power { mu } => MomentTest {
                converges: mu > critical,
                critical,
                margin: mu - critical,
            },
            Decay::PowerLog { mu, lambda } => MomentTest {
                converges: mu > critical || (mu == critical && lambda > T::one()),
                critical,
                margin: mu - critical,
            },
            _ => MomentTest {
                converges: true,
                critical,
                margin: T::infinity(),
            },
        }
    }

    /// Decay of s^c f(s).
    pub fn times_power(&self, c: T) -> Self {
        match *self {
            Decay::Power { mu } => Decay::Power { mu: mu - c },
            Decay::PowerLog { mu, lambda } => Decay::PowerLog { mu: mu - c, lambda },
            other => other,
        }
    }

    /// Decay of I^α_{−,2} f.
    pub fn after_ek(&self, alpha: T) -> Self {
        self.times_power(alpha + alpha)
    }

    /// Decay of I^α_− f.
    pub fn after_rl(&self, alpha: T) -> Self {
        self.times_power(alpha)
    }

    /// Rough bound of ∫_R^∞ |f| given |f(R)|, used to pick truncation radii.
    pub fn tail_estimate(&self, f_at_r: T, radius: T) -> T {
        match *self {
            Decay::Power { mu } | Decay::PowerLog { mu, .. } => {
                if mu > T::one() {
                    f_at_r * radius / (mu - T::one())
                } else {
                    T::infinity()
                }
            }
            Decay::Gaussian => f_at_r / (radius + radius).max(lit(1e-300)) + f_at_r * lit(1e-3),
            Decay::Exponential { rate } => f_at_r / rate,
            Decay::Compact { radius: support } => {
                if support <= radius {
                    T::zero()
                } else {
                    f_at_r * (support - radius)
                }
            }
        }
    }

    /// Support radius for compact profiles.
    pub fn support(&self) -> Option<T> {
        match *self {
            Decay::Compact { radius } => Some(radius),
            _ => None,
        }
    }
}

#[derive(Clone)]
enum Repr<T> {
    Zero,
    Analytic(Arc<dyn Fn(T) -> T + Send + Sync>),
    Sampled {
        interp: Pchip<T>,
        end: (T, T),
        slope: T,
    },
    Spectral {
        fit: Chebyshev<T>,
        slope: T,
    },
}

/// A function on ℝ₊ together with its declared decay.
#[derive(Clone)]
pub struct Profile<T> {
    repr: Repr<T>,
    decay: Decay<T>,
    pub smoothness_hint: u32,
}

impl<T: Real> fmt::Debug for Profile<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.repr {
            Repr::Zero => "zero",
            Repr::Analytic(_) => "analytic",
            Repr::Sampled { .. } => "sampled",
            Repr::Spectral { .. } => "spectral",
        };
        f.debug_struct("Profile")
            .field("kind", &kind)
            .field("decay", &self.decay)
            .field("smoothness_hint", &self.smoothness_hint)
            .finish()
    }
}

impl<T: Real> Profile<T> {
    pub fn analytic<F>(f: F, decay: Decay<T>) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        Profile {
            repr: Repr::Analytic(Arc::new(f)),
            decay,
            smoothness_hint: u32::MAX,
        }
    }

    pub fn zero() -> Self {
        Profile {
            repr: Repr::Zero,
            decay: Decay::Compact { radius: T::zero() },
            smoothness_hint: u32::MAX,
        }
    }

    /// Profile given by samples on a strictly increasing positive grid,
    /// interpolated monotonically. Beyond the last sample the declared decay
    /// is used to continue the profile. The two largest samples must be
    /// consistent with the declared decay.
    pub fn sampled(x: Vec<T>, y: Vec<T>, decay: Decay<T>) -> Result<Self> {
        if x.first().is_some_and(|&v| v < T::zero()) {
            return Err(Error::invalid("sampled profiles live on [0, ∞)"));
        }
        let interp = Pchip::new(x.clone(), y.clone())?;
        let n = x.len();
        let (x1, y1) = (x[n - 2], y[n - 2]);
        let (x2, y2) = (x[n - 1], y[n - 1]);
        let slope = check_tail(decay, (x1, y1), (x2, y2))?;
        Ok(Profile {
            repr: Repr::Sampled {
                interp,
                end: (x2, y2),
                slope,
            },
            decay,
            smoothness_hint: 1,
        })
    }

    /// Replaces an expensive profile by a Chebyshev fit on [a, b]; outside
    /// [a, b] the profile continues according to its decay.
    pub fn materialize(&self, a: T, b: T, rel_tol: T) -> Result<Self> {
        let g = |s: T| self.eval(s);
        let fit = Chebyshev::fit(g, a, b, rel_tol)?;
        let h = (b - a) * lit(1e-3);
        let (y1, y2) = (fit.eval(b - h), fit.eval(b));
        let slope = match self.decay {
            Decay::Compact { .. } => T::zero(),
            _ => check_tail(self.decay, (b - h, y1), (b, y2)).unwrap_or(T::zero()),
        };
        Ok(Profile {
            repr: Repr::Spectral { fit, slope },
            decay: self.decay,
            smoothness_hint: self.smoothness_hint,
        })
    }

    /// Wraps an existing Chebyshev fit; beyond its domain the profile is
    /// continued by `decay` with zero log-slope.
    pub(crate) fn spectral(fit: Chebyshev<T>, decay: Decay<T>) -> Self {
        Profile {
            repr: Repr::Spectral {
                fit,
                slope: T::zero(),
            },
            decay,
            smoothness_hint: u32::MAX,
        }
    }

    pub fn with_decay(mut self, decay: Decay<T>) -> Self {
        self.decay = decay;
        self
    }

    pub fn decay(&self) -> Decay<T> {
        self.decay
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    pub fn eval(&self, s: T) -> T {
        match &self.repr {
            Repr::Zero => T::zero(),
            Repr::Analytic(f) => f(s),
            Repr::Sampled { interp, end, slope } => {
                if s <= end.0 {
                    interp.eval(s)
                } else {
                    continue_tail(self.decay, *end, *slope, s)
                }
            }
            Repr::Spectral { fit, slope } => {
                let (_, b) = fit.domain();
                if s <= b {
                    fit.eval(s)
                } else {
                    continue_tail(self.decay, (b, fit.eval(b)), *slope, s)
                }
            }
        }
    }

    /// Truncation data for ∫_a^∞ of this profile.
    pub fn tail_spec(&self, a: T, rel_tol: T) -> TailSpec<T> {
        TailSpec::choose(self.decay, |s| self.eval(s), a, rel_tol)
    }
}

/// Validates the declared decay against two trailing samples and returns
/// the log-slope used for fast-decay continuation.
fn check_tail<T: Real>(decay: Decay<T>, (x1, y1): (T, T), (x2, y2): (T, T)) -> Result<T> {
    let slope = if y1 != T::zero() && y2 != T::zero() && y1.signum() == y2.signum() {
        (y2 / y1).abs().ln() / (x2 - x1)
    } else {
        T::zero()
    };
    match decay {
        Decay::Power { mu } | Decay::PowerLog { mu, .. } => {
            if y1 != T::zero() && y2 != T::zero() {
                let observed = (y1 / y2).abs().ln() / (x2 / x1).ln();
                if observed + lit(0.25) < mu {
                    return Err(Error::InconsistentDecay {
                        declared: crate::numerics::to_f64(mu),
                        observed: crate::numerics::to_f64(observed),
                    });
                }
            }
        }
        Decay::Gaussian | Decay::Exponential { .. } => {
            if y2.abs() > y1.abs() && y2.abs() > T::epsilon() {
                return Err(Error::InconsistentDecay {
                    declared: f64::NEG_INFINITY,
                    observed: crate::numerics::to_f64(slope),
                });
            }
        }
        Decay::Compact { radius } => {
            if radius > x2 {
                return Err(Error::invalid(
                    "compact support radius extends beyond the sampled grid",
                ));
            }
        }
    }
    Ok(slope.min(T::zero()))
}

fn continue_tail<T: Real>(decay: Decay<T>, (x, y): (T, T), slope: T, s: T) -> T {
    match decay {
        Decay::Compact { .. } => T::zero(),
        Decay::Power { mu } => y * (x / s).powf(mu),
        Decay::PowerLog { mu, lambda } => {
            let base = y * (x / s).powf(mu);
            if x > T::one() {
                base * (x.ln() / s.ln()).powf(lambda)
            } else {
                base
            }
        }
        Decay::Gaussian | Decay::Exponential { .. } => y * (slope * (s - x)).exp(),
    }
}
