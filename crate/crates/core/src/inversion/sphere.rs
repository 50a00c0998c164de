use crate::fraccalc::accept;
use crate::numerics::special::gamma;
use crate::numerics::{
    derivative_at_with, inner_tol, lit, tanh_sinh_with_distances, DerivativeOptions, LimitEstimate,
    Real, Side,
};
use crate::{Error, Result};

/// The three explicit inversion formulas for the Funk-type transform on Sⁿ.
///
/// Each evaluates g_x(s) = s⁻¹ (𝕄_x f)(s) from the dual profile
/// r ↦ (R*_x φ)(r), r ∈ [0, 1]; the reconstruction is the limit s → 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SphereFormula {
    /// (2s)^{−k} ∂_s^k weighted form, written as ∂_w^k in w = s².
    WeightedD,
    /// Half-order form for even k: (2π^{k/2})⁻¹ ∂_w^{k/2} [w^{(k−1)/2} R*(√w)].
    EvenK,
    /// Plain ∂_s^k of an Abel-type integral in s.
    UsualDerivative,
}

impl SphereFormula {
    pub const ALL: [SphereFormula; 3] = [
        SphereFormula::WeightedD,
        SphereFormula::EvenK,
        SphereFormula::UsualDerivative,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SphereFormula::WeightedD => "weighted_d",
            SphereFormula::EvenK => "even_k",
            SphereFormula::UsualDerivative => "usual_derivative",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn admissible(&self, k: usize) -> Result<()> {
        if *self == SphereFormula::EvenK && k % 2 != 0 {
            return Err(Error::Inadmissible {
                variant: self.name().into(),
                reason: format!("needs even k, got k = {k}"),
            });
        }
        Ok(())
    }
}

fn options<T: Real>() -> DerivativeOptions<T> {
    DerivativeOptions {
        levels: 6,
        rel_tol: lit(1e-5),
        abs_tol: lit(1e-11),
    }
}

/// Central derivative of order `order` at t0 ∈ (0, 1) whose stencil stays
/// inside (0, 1), where the dual profile is defined.
fn inside_unit<T: Real, F: Fn(T) -> T>(f: F, t0: T, order: usize) -> Result<LimitEstimate<T>> {
    let room = t0.min(T::one() - t0);
    let h0 = lit::<T>(0.8) * room / lit(order as f64);
    derivative_at_with(f, t0, order, Side::Central, h0, &options())
}

fn scaled<T: Real>(e: LimitEstimate<T>, c: T) -> LimitEstimate<T> {
    LimitEstimate {
        value: e.value * c,
        error_estimate: e.error_estimate * c.abs(),
        levels_used: e.levels_used,
    }
}

/// ∫_0^b (b² − r²)^{k/2−1} R*(r) r^p dr, weakly singular at r = b for k = 1.
fn abel<T: Real, F: Fn(T) -> T>(dual: &F, k: usize, p: i32, b: T) -> Result<T> {
    if b <= T::zero() {
        return Ok(T::zero());
    }
    let e = lit::<T>(k as f64 / 2.0 - 1.0);
    let r = tanh_sinh_with_distances(
        |r, _, dr| {
            let v = dual(r);
            if v == T::zero() {
                return T::zero();
            }
            v * r.powi(p) * (dr * (b + r)).powf(e)
        },
        T::zero(),
        b,
        inner_tol(),
    );
    accept(r, "sphere inversion integral")
}

/// g_x(s) by the chosen formula; `dual` is r ↦ (R*_x φ)(r) on [0, 1].
pub fn sphere_inversion_formula<T, F>(dual: F, which: SphereFormula, k: usize, s: T) -> Result<T>
where
    T: Real,
    F: Fn(T) -> T,
{
    Ok(sphere_inversion_estimate(dual, which, k, s)?.value)
}

/// [`sphere_inversion_formula`] with the error estimate of its
/// differentiation step.
pub fn sphere_inversion_estimate<T, F>(
    dual: F,
    which: SphereFormula,
    k: usize,
    s: T,
) -> Result<LimitEstimate<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    if k == 0 {
        return Err(Error::invalid("sphere inversion needs k ≥ 1"));
    }
    which.admissible(k)?;
    if !(s > T::zero() && s < T::one()) {
        return Err(Error::invalid(format!(
            "sphere inversion needs s ∈ (0, 1), got {s}"
        )));
    }
    let half_k = lit::<T>(k as f64 / 2.0);
    let pi_k = T::PI().powf(half_k);
    let nan = |r: Result<T>| r.unwrap_or(T::nan());
    match which {
        SphereFormula::WeightedD => {
            let c = T::one() / (pi_k * gamma(half_k));
            let q = |w: T| nan(abel(&dual, k, k as i32, w.sqrt()).map(|v| c * v));
            abel(&dual, k, k as i32, s)?;
            inside_unit(q, s * s, k)
        }
        SphereFormula::EvenK => {
            let e = lit::<T>((k as f64 - 1.0) / 2.0);
            let h = |w: T| w.powf(e) * dual(w.sqrt());
            Ok(scaled(
                inside_unit(h, s * s, k / 2)?,
                T::one() / (lit::<T>(2.0) * pi_k),
            ))
        }
        SphereFormula::UsualDerivative => {
            let c = lit::<T>(2.0).powi(-(k as i32)) / (pi_k * gamma(half_k));
            let g = |t: T| nan(abel(&dual, k, 1, t).map(|v| c * v));
            abel(&dual, k, 1, s)?;
            Ok(scaled(inside_unit(g, s, k)?, T::one() / s))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_function_gives_one_over_s() {
        for s in [0.3, 0.7, 0.95] {
            for (k, area) in [(1, 2.0 * PI), (2, 4.0 * PI)] {
                for f in SphereFormula::ALL {
                    if f.admissible(k).is_err() {
                        continue;
                    }
                    let g = sphere_inversion_formula(|_| area, f, k, s).unwrap();
                    assert!((g * s - 1.0).abs() < 1e-7, "{} k={k} s={s}: {g}", f.name());
                }
            }
        }
    }

    #[test]
    fn zero_and_bad_inputs() {
        assert_eq!(
            sphere_inversion_formula(|_| 0.0, SphereFormula::WeightedD, 1, 0.5).unwrap(),
            0.0
        );
        assert!(sphere_inversion_formula(|_| 1.0, SphereFormula::EvenK, 1, 0.5).is_err());
        assert!(sphere_inversion_formula(|_| 1.0, SphereFormula::WeightedD, 1, 1.0).is_err());
        assert_eq!(
            SphereFormula::from_name("even_k"),
            Some(SphereFormula::EvenK)
        );
    }
}
