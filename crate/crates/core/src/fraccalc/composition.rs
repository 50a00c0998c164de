use super::integrals::{ek_integral, ek_minus_weighted, exists_ek, exists_rl, rl_integral};
use super::{FractionalOrder, Profile, Sign};
use crate::numerics::{lit, relative_discrepancy, Real};
use crate::{DivergenceReport, Error, Result};

/// Composition identities for the Erdélyi–Kober integrals.
///
/// * `Semigroup(sign)`: I^α_{±,2} I^β_{±,2} f = I^{α+β}_{±,2} f.
/// * `Weighted`: I^α_{−,2} t^{−2α−2β} I^β_{−,2} f = t^{−2β} I^{α+β}_{−,2} t^{−2α} f.
/// * `EkToRl`: t I^α_{−,2} t^{−2α−1} I^α_{−,2} f = 2^{2α} I^{2α}_− f (β unused).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Composition {
    Semigroup(Sign),
    Weighted,
    EkToRl,
}

impl Composition {
    pub fn name(&self) -> &'static str {
        match self {
            Composition::Semigroup(Sign::Minus) => "semigroup_minus",
            Composition::Semigroup(Sign::Plus) => "semigroup_plus",
            Composition::Weighted => "weighted",
            Composition::EkToRl => "ek_to_rl",
        }
    }
}

fn precondition_failed(identity: Composition, what: &str) -> Error {
    Error::Divergent(DivergenceReport {
        condition: format!("{} precondition: {what}", identity.name()),
        critical_exponent: f64::NAN,
        margin: f64::NAN,
        partial_integrals: Vec::new(),
    })
}

/// Maximum over `t_grid` of |LHS − RHS| / (|RHS| + 10⁻³⁰).
pub fn verify_composition<T: Real>(
    f: &Profile<T>,
    alpha: T,
    beta: T,
    which: Composition,
    t_grid: &[T],
) -> Result<T> {
    let a = FractionalOrder::new(alpha)?;
    let b = FractionalOrder::new(beta)?;
    let ab = FractionalOrder::new(alpha + beta)?;
    let sides = |t: T| -> Result<(T, T)> {
        match which {
            Composition::Semigroup(sign) => {
                if sign == Sign::Minus && !exists_ek(f, &ab) {
                    return Err(precondition_failed(which, "I^{α+β}_{-,2} f diverges"));
                }
                let inner = nested(f, &b, sign);
                Ok((
                    ek_integral(&inner, &a, sign, t)?,
                    ek_integral(f, &ab, sign, t)?,
                ))
            }
            Composition::Weighted => {
                let shifted = f.decay().times_power(-(alpha + alpha));
                if !shifted
                    .moment(lit::<T>(2.0) * (alpha + beta) - T::one())
                    .converges
                {
                    return Err(precondition_failed(
                        which,
                        "I^{α+β}_{-,2} t^{-2α} f diverges",
                    ));
                }
                let inner = nested(f, &b, Sign::Minus);
                let lhs = ek_minus_weighted(&inner, alpha, -(alpha + beta), t)?;
                let rhs = t.powf(-(beta + beta)) * ek_minus_weighted(f, alpha + beta, -alpha, t)?;
                Ok((lhs, rhs))
            }
            Composition::EkToRl => {
                let two_a = FractionalOrder::new(alpha + alpha)?;
                if !exists_rl(f, &two_a) {
                    return Err(precondition_failed(which, "I^{2α}_- f diverges"));
                }
                let inner = nested(f, &a, Sign::Minus);
                let lhs = t * ek_minus_weighted(&inner, alpha, -alpha - lit(0.5), t)?;
                let rhs =
                    lit::<T>(2.0).powf(alpha + alpha) * rl_integral(f, &two_a, Sign::Minus, t)?;
                Ok((lhs, rhs))
            }
        }
    };
    let mut worst = T::zero();
    for &t in t_grid {
        let (lhs, rhs) = sides(t)?;
        worst = worst.max(relative_discrepancy(lhs, rhs));
    }
    Ok(worst)
}

/// I^β_{±,2} f as a profile evaluated on demand.
fn nested<T: Real>(f: &Profile<T>, beta: &FractionalOrder<T>, sign: Sign) -> Profile<T> {
    let decay = match sign {
        Sign::Minus => f.decay().after_ek(beta.alpha),
        Sign::Plus => f.decay(),
    };
    let g = f.clone();
    let b = *beta;
    Profile::analytic(
        move |s| ek_integral(&g, &b, sign, s).unwrap_or(T::nan()),
        decay,
    )
}
