use super::integrals::{accept, ek_minus_weighted, exists_ek, rl_integral};
use super::{FractionalOrder, Profile, Sign};
use crate::numerics::special::gamma;
use crate::numerics::{
    derivative_at_with, inner_tol, lit, tanh_sinh_with_distances, DerivativeOptions, LimitEstimate,
    Real, Side,
};
use crate::{Error, Result};

/// Realizations of the left inverse 𝒟^α_{−,2} of I^α_{−,2}, with
/// α = m + α₀ and β = 1 − α₀:
///
/// * `IntegerD`: (−D)^m φ, D = (2t)⁻¹ d/dt, for integer α.
/// * `WeightedComposition`: t^{2β} (−D)^{m+1} t^{2α} I^β_{−,2} t^{−2m−2} φ.
/// * `UsualDerivative`: 2^{−2α} 𝒟^{2α}_− t I^α_{−,2} t^{−2α−1} φ, with the
///   Riemann–Liouville derivative taken in the plain variable t.
/// * `DirectComplement`: (−D)^{m+1} I^β_{−,2} φ; needs the stronger moment
///   condition ∫_1^∞ |f| t^{2m+1} dt < ∞ on the pre-image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivativeVariant {
    IntegerD,
    WeightedComposition,
    UsualDerivative,
    DirectComplement,
}

impl DerivativeVariant {
    pub const ALL: [DerivativeVariant; 4] = [
        DerivativeVariant::IntegerD,
        DerivativeVariant::WeightedComposition,
        DerivativeVariant::UsualDerivative,
        DerivativeVariant::DirectComplement,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DerivativeVariant::IntegerD => "integer_d",
            DerivativeVariant::WeightedComposition => "weighted_composition",
            DerivativeVariant::UsualDerivative => "usual_derivative",
            DerivativeVariant::DirectComplement => "direct_complement",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == name)
    }

    /// Checks the variant's preconditions for inverting I^α_{−,2} on φ.
    pub fn admissible<T: Real>(&self, phi: &Profile<T>, alpha: &FractionalOrder<T>) -> Result<()> {
        match self {
            DerivativeVariant::IntegerD if !alpha.is_integer() => Err(Error::Inadmissible {
                variant: self.name().into(),
                reason: format!("order {} is not an integer", alpha.alpha),
            }),
            DerivativeVariant::DirectComplement => {
                let beta = FractionalOrder::new(alpha.complement())?;
                if exists_ek(phi, &beta) {
                    Ok(())
                } else {
                    Err(Error::Inadmissible {
                        variant: self.name().into(),
                        reason: format!(
                            "I^{}_(-,2) of the data diverges; the pre-image lacks the moment ∫|f| t^{} dt",
                            beta.alpha,
                            2 * alpha.m + 1
                        ),
                    })
                }
            }
            _ => Ok(()),
        }
    }
}

fn options<T: Real>() -> DerivativeOptions<T> {
    DerivativeOptions {
        levels: 6,
        rel_tol: lit(1e-5),
        abs_tol: lit(1e-11),
    }
}

/// K-th derivative in w = t², at w0, by a central stencil kept inside w > 0.
fn dw<T: Real, F: Fn(T) -> T>(f: F, w0: T, order: usize) -> Result<LimitEstimate<T>> {
    let h0 = (lit::<T>(0.8) * w0 / lit(order as f64)).min(lit(0.5));
    derivative_at_with(f, w0, order, Side::Central, h0, &options())
}

/// K-th derivative in t at t0 > 0.
fn dt<T: Real, F: Fn(T) -> T>(f: F, t0: T, order: usize) -> Result<LimitEstimate<T>> {
    let h0 = (lit::<T>(0.8) * t0 / lit(order as f64)).min(lit(0.25));
    derivative_at_with(f, t0, order, Side::Central, h0, &options())
}

fn scaled<T: Real>(e: LimitEstimate<T>, c: T) -> LimitEstimate<T> {
    LimitEstimate {
        value: e.value * c,
        error_estimate: e.error_estimate * c.abs(),
        levels_used: e.levels_used,
    }
}

fn sign<T: Real>(k: usize) -> T {
    if k % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// Adapts a fallible evaluation to the plain closures used by the
/// derivative stencils; errors become NaN, which the stencil reports.
fn nan_on_err<T: Real>(eval: impl Fn(T) -> Result<T>) -> impl Fn(T) -> T {
    move |x: T| eval(x).unwrap_or(T::nan())
}

/// (𝒟^α_{−,2} φ)(t) using the requested realization.
pub fn ek_derivative<T: Real>(
    phi: &Profile<T>,
    alpha: &FractionalOrder<T>,
    variant: DerivativeVariant,
    t: T,
) -> Result<T> {
    Ok(ek_derivative_estimate(phi, alpha, variant, t)?.value)
}

/// [`ek_derivative`] together with the error estimate of its
/// finite-difference stage.
pub fn ek_derivative_estimate<T: Real>(
    phi: &Profile<T>,
    alpha: &FractionalOrder<T>,
    variant: DerivativeVariant,
    t: T,
) -> Result<LimitEstimate<T>> {
    if !(t > T::zero()) {
        return Err(Error::invalid("ek_derivative needs t > 0"));
    }
    variant.admissible(phi, alpha)?;
    if phi.is_zero() {
        return Ok(LimitEstimate {
            value: T::zero(),
            error_estimate: T::zero(),
            levels_used: 0,
        });
    }
    let m = alpha.m;
    let a = alpha.alpha;
    let beta = alpha.complement();
    let w0 = t * t;
    // surface inner divergences before differentiating
    let probe = |s: T| -> Result<()> {
        match variant {
            DerivativeVariant::IntegerD => Ok(()),
            DerivativeVariant::WeightedComposition => {
                ek_minus_weighted(phi, beta, -lit::<T>((m + 1) as f64), s).map(|_| ())
            }
            DerivativeVariant::UsualDerivative => {
                ek_minus_weighted(phi, a, -a - lit(0.5), s).map(|_| ())
            }
            DerivativeVariant::DirectComplement => {
                ek_minus_weighted(phi, beta, T::zero(), s).map(|_| ())
            }
        }
    };
    probe(t)?;
    match variant {
        DerivativeVariant::IntegerD => {
            let f = nan_on_err(|w: T| Ok(phi.eval(w.sqrt())));
            Ok(scaled(dw(f, w0, m)?, sign::<T>(m)))
        }
        DerivativeVariant::WeightedComposition => {
            let c = -lit::<T>((m + 1) as f64);
            let h = nan_on_err(|w: T| Ok(w.powf(a) * ek_minus_weighted(phi, beta, c, w.sqrt())?));
            Ok(scaled(dw(h, w0, m + 1)?, w0.powf(beta) * sign::<T>(m + 1)))
        }
        DerivativeVariant::DirectComplement => {
            let h = nan_on_err(|w: T| ek_minus_weighted(phi, beta, T::zero(), w.sqrt()));
            Ok(scaled(dw(h, w0, m + 1)?, sign::<T>(m + 1)))
        }
        DerivativeVariant::UsualDerivative => {
            let scale = lit::<T>(2.0).powf(-(a + a));
            let two_a = a + a;
            let j_of = {
                let phi = phi.clone();
                move |s: T| -> Result<T> { Ok(s * ek_minus_weighted(&phi, a, -a - lit(0.5), s)?) }
            };
            if two_a == two_a.round() {
                let k = two_a.to_usize().unwrap_or(0);
                let j = nan_on_err(j_of);
                Ok(scaled(dt(j, t, k)?, scale * sign::<T>(k)))
            } else {
                // 𝒟^{2α}_− = (−d/dt)^{M+1} I^{1−γ₀}_−, 2α = M + γ₀
                let order = FractionalOrder::new(two_a)?;
                let comp = FractionalOrder::new(order.complement())?;
                let j_profile =
                    Profile::analytic(move |s: T| j_of(s).unwrap_or(T::nan()), phi.decay());
                let g = nan_on_err(|s: T| rl_integral(&j_profile, &comp, Sign::Minus, s));
                Ok(scaled(
                    dt(g, t, order.m + 1)?,
                    scale * sign::<T>(order.m + 1),
                ))
            }
        }
    }
}

/// (𝒟^{k/2}_{+,2} φ)(t) = 2^{−k} t^{−1} (d/dt)^k I^{k/2}_{+,2} t^{1−k} φ.
pub fn ek_plus_derivative<T: Real>(phi: &Profile<T>, k: usize, t: T) -> Result<T> {
    if k == 0 {
        return Err(Error::invalid("ek_plus_derivative needs k ≥ 1"));
    }
    if !(t > T::zero()) {
        return Err(Error::invalid("ek_plus_derivative needs t > 0"));
    }
    if phi.is_zero() {
        return Ok(T::zero());
    }
    let half_k = lit::<T>(k as f64) / lit(2.0);
    let norm = lit::<T>(2.0) / gamma(half_k);
    let expo = lit::<T>(2.0 - k as f64);
    let inner = |x: T| -> Result<T> {
        if x <= T::zero() {
            return Ok(T::zero());
        }
        let r = tanh_sinh_with_distances(
            |s, dl, dr| {
                let v = phi.eval(s);
                if v == T::zero() {
                    return T::zero();
                }
                v * dl.powf(expo) * (dr * (x + s)).powf(half_k - T::one())
            },
            T::zero(),
            x,
            inner_tol(),
        );
        Ok(accept(r, "Erdélyi–Kober I_{+,2}")? * norm)
    };
    inner(t)?;
    let g = nan_on_err(inner);
    Ok(dt(g, t, k)?.value * lit::<T>(2.0).powi(-(k as i32)) / t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraccalc::{ek_integral, Decay};
    use crate::numerics::gamma_fn;

    fn order(a: f64) -> FractionalOrder<f64> {
        FractionalOrder::new(a).unwrap()
    }

    #[test]
    fn integer_d_on_gaussian() {
        let phi = Profile::analytic(|s: f64| (-s * s).exp(), Decay::Gaussian);
        for t in [0.2, 1.0, 2.0] {
            let v = ek_derivative(&phi, &order(1.0), DerivativeVariant::IntegerD, t).unwrap();
            assert!((v / (-t * t).exp() - 1.0).abs() < 1e-7);
        }
        assert!(matches!(
            ek_derivative(&phi, &order(0.5), DerivativeVariant::IntegerD, 1.0),
            Err(Error::Inadmissible { .. })
        ));
    }

    #[test]
    fn usual_derivative_inverts_gaussian() {
        let f = Profile::analytic(|s: f64| (-s * s).exp(), Decay::Gaussian);
        let a = order(0.5);
        let phi = {
            let f = f.clone();
            Profile::analytic(
                move |t| ek_integral(&f, &a, Sign::Minus, t).unwrap(),
                Decay::Gaussian,
            )
        };
        let v = ek_derivative(&phi, &a, DerivativeVariant::UsualDerivative, 1.0).unwrap();
        assert!((v - (-1.0f64).exp()).abs() < 1e-6, "{v}");
    }

    #[test]
    fn zero_data() {
        for v in DerivativeVariant::ALL {
            let r = ek_derivative(&Profile::<f64>::zero(), &order(1.0), v, 0.7).unwrap();
            assert_eq!(r, 0.0);
        }
        assert_eq!(
            ek_plus_derivative(&Profile::<f64>::zero(), 3, 0.7).unwrap(),
            0.0
        );
    }

    #[test]
    fn plus_derivative_examples() {
        // k = 1: φ = t/Γ(3/2) = I^{1/2}_{+,2} 1
        let g = gamma_fn(1.5).unwrap();
        let phi = Profile::analytic(move |t: f64| t / g, Decay::Power { mu: -1.0 });
        for t in [0.3, 1.0, 2.0] {
            let v = ek_plus_derivative(&phi, 1, t).unwrap();
            assert!((v - 1.0).abs() < 1e-7, "t={t}: {v}");
        }
        // k = 2: φ = I^1_{+,2}(s ↦ s) by quadrature, recover t
        let id = Profile::analytic(|s: f64| s, Decay::Power { mu: -1.0 });
        let phi = Profile::analytic(
            move |t: f64| ek_integral(&id, &order(1.0), Sign::Plus, t).unwrap(),
            Decay::Power { mu: -3.0 },
        );
        for t in [0.5, 1.5] {
            let v = ek_plus_derivative(&phi, 2, t).unwrap();
            assert!((v - t).abs() < 1e-6, "t={t}: {v}");
        }
    }

    #[test]
    fn variant_names_round_trip() {
        for v in DerivativeVariant::ALL {
            assert_eq!(DerivativeVariant::from_name(v.name()), Some(v));
        }
    }
}
