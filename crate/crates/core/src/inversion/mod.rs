//! Mean-value reconstruction: recover the spherical (or tilde) mean of f
//! about x from the shifted dual transform of φ = Rf, then pass to the
//! limit at the centre.

mod sphere;

pub use sphere::{sphere_inversion_estimate, sphere_inversion_formula, SphereFormula};

use std::sync::Mutex;

use crate::fraccalc::{ek_derivative_estimate, DerivativeVariant, FractionalOrder, Profile};
use crate::geometry::{norm, Curvature, DualMeanProfile, Point, SpaceDescriptor};
use crate::numerics::{limit_at_zero, lit, to_f64, LimitEstimate, LimitSchedule, Real};
use crate::radon::{check_existence, FunctionClass, TransformField};
use crate::{DivergenceReport, Error, Result};

/// How the dual profile is weighted before the fractional derivative on ℍⁿ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeanWeight {
    /// Multiply by λ(r) = (1 + r²)^{(k−1)/2}.
    Lambda,
    /// No weight. Wrong for k ≥ 2; kept as a negative control.
    Omitted,
}

/// A reconstruction recipe for one space and one left-inverse realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionPlan<T> {
    pub space: SpaceDescriptor,
    pub variant: DerivativeVariant,
    pub function_class: FunctionClass<T>,
    /// Radii r_j (on Sⁿ: distances 1 − s_j) approaching the centre.
    pub r_sequence: LimitSchedule<T>,
    pub weight: MeanWeight,
}

fn inadmissible(variant: &str, reason: String) -> Error {
    Error::Inadmissible {
        variant: variant.into(),
        reason,
    }
}

impl<T: Real> InversionPlan<T> {
    /// Validates the variant against the space and the function class.
    pub fn new(
        space: SpaceDescriptor,
        variant: DerivativeVariant,
        function_class: FunctionClass<T>,
    ) -> Result<Self> {
        let plan = InversionPlan {
            space,
            variant,
            function_class,
            r_sequence: Self::default_schedule(&space),
            weight: MeanWeight::Lambda,
        };
        plan.check_admissible()?;
        Ok(plan)
    }

    /// r_j = 0.4·2^{−j}, j = 0..5. Means are even in r on ℝⁿ and ℍⁿ, and
    /// smooth in 1 − s on Sⁿ.
    pub fn default_schedule(space: &SpaceDescriptor) -> LimitSchedule<T> {
        let exponent = if space.curvature == Curvature::Spherical {
            1
        } else {
            2
        };
        LimitSchedule::new(lit(0.4), 6, exponent)
    }

    pub fn with_schedule(mut self, schedule: LimitSchedule<T>) -> Self {
        self.r_sequence = schedule;
        self
    }

    /// Drops the λ weight on ℍⁿ (negative control).
    pub fn without_weight(mut self) -> Self {
        self.weight = MeanWeight::Omitted;
        self
    }

    /// The explicit formula used on Sⁿ.
    pub fn sphere_formula(&self) -> Option<SphereFormula> {
        match self.variant {
            DerivativeVariant::IntegerD => Some(SphereFormula::EvenK),
            DerivativeVariant::WeightedComposition => Some(SphereFormula::WeightedD),
            DerivativeVariant::UsualDerivative => Some(SphereFormula::UsualDerivative),
            DerivativeVariant::DirectComplement => None,
        }
    }

    pub fn check_admissible(&self) -> Result<()> {
        let k = self.space.k;
        let name = self.variant.name();
        if self.variant == DerivativeVariant::IntegerD && k % 2 != 0 {
            return Err(inadmissible(name, format!("needs even k, got k = {k}")));
        }
        if self.space.curvature == Curvature::Spherical {
            return match self.sphere_formula() {
                Some(f) => f.admissible(k),
                None => Err(inadmissible(name, "no complement formula on Sⁿ".into())),
            };
        }
        if self.variant != DerivativeVariant::DirectComplement {
            return Ok(());
        }
        let n = lit::<T>(self.space.n as f64);
        let m = 2 * (k / 2);
        let euclid = self.space.curvature == Curvature::Euclidean;
        match self.function_class {
            FunctionClass::Decay(d) => {
                // μ > 2 + 2[k/2] on ℝⁿ, μ > 2[k/2] + 1 on ℍⁿ
                let gamma = if euclid { m + 1 } else { m };
                let t = d.moment(lit(gamma as f64));
                if t.converges {
                    Ok(())
                } else {
                    Err(inadmissible(
                        name,
                        format!("decay exponent must exceed {}", t.critical),
                    ))
                }
            }
            FunctionClass::Lp { p } => {
                let bound = if euclid {
                    n / lit((m + 2) as f64)
                } else {
                    (n - T::one()) / lit((m + 1) as f64)
                };
                if p >= T::one() && p < bound {
                    Ok(())
                } else {
                    Err(inadmissible(
                        name,
                        format!("needs 1 ≤ p < {bound}, got p = {p}"),
                    ))
                }
            }
        }
    }
}

/// Outcome of a point reconstruction.
#[derive(Debug, Clone)]
pub struct ReconstructionResult<T: Real> {
    pub value: T,
    pub limit_diag: LimitEstimate<T>,
    pub variant_used: DerivativeVariant,
    /// Set on Sⁿ, where the variant selects one of the explicit formulas.
    pub sphere_formula: Option<SphereFormula>,
    /// The recovered mean r ↦ (𝕄_x f)(r) (on ℍⁿ the tilde mean, on Sⁿ a
    /// function of s), evaluated lazily.
    pub intermediate_mean: Profile<T>,
}

/// The mean of f about `dual.x` at parameter r (s on Sⁿ), from the dual
/// profile r ↦ (R*_x φ)(r).
pub fn recover_mean<T: Real>(
    dual: &DualMeanProfile<T>,
    plan: &InversionPlan<T>,
    r: T,
) -> Result<T> {
    Ok(recover_mean_estimate(dual, plan, r)?.value)
}

/// [`recover_mean`] with the error estimate of the differentiation step.
pub fn recover_mean_estimate<T: Real>(
    dual: &DualMeanProfile<T>,
    plan: &InversionPlan<T>,
    r: T,
) -> Result<LimitEstimate<T>> {
    plan.check_admissible()?;
    if dual.space != plan.space {
        return Err(Error::invalid(
            "dual profile and plan live on different spaces",
        ));
    }
    let k = plan.space.k;
    if plan.space.curvature == Curvature::Spherical {
        let formula = plan.sphere_formula().expect("checked above");
        let g = sphere_inversion_estimate(|t: T| dual.eval(t), formula, k, r)?;
        return Ok(LimitEstimate {
            value: r * g.value,
            error_estimate: r * g.error_estimate,
            levels_used: g.levels_used,
        });
    }
    let half = FractionalOrder::<T>::half(k)?;
    let scale = T::PI().powf(-half.alpha);
    let weighted = match (plan.space.curvature, plan.weight) {
        (Curvature::Hyperbolic, MeanWeight::Lambda) => {
            let values = dual.values.clone();
            let space = plan.space;
            Profile::analytic(
                move |t: T| space.weight_lambda(t) * values.eval(t),
                dual.values.decay(),
            )
        }
        _ => dual.values.clone(),
    };
    let d = ek_derivative_estimate(&weighted, &half, plan.variant, r)?;
    Ok(LimitEstimate {
        value: scale * d.value,
        error_estimate: scale * d.error_estimate,
        levels_used: d.levels_used,
    })
}

/// Range of distance parameters needed for the dual profile at x.
fn dual_range<T: Real>(field: &TransformField<T>, x: &Point<T>) -> T {
    let reach = field.decay.truncation_radius;
    match field.space.curvature {
        Curvature::Euclidean => reach + norm(&x.coords),
        // sinh(a + b) ≤ sinh a cosh b + cosh a sinh b ≤ (sinh a + 1) cosh b
        Curvature::Hyperbolic => (reach + T::one()) * x.coords[field.space.n],
        Curvature::Spherical => T::one(),
    }
}

/// Tabulates (R*_x φ)(r) for reconstruction at x.
pub fn dual_profile<T: Real>(
    field: &TransformField<T>,
    x: &Point<T>,
) -> Result<DualMeanProfile<T>> {
    let r_max = dual_range(field, x);
    DualMeanProfile::materialize(|g| field.eval(g), x, &field.space, r_max, lit(1e-11))
}

/// f(x) from φ = Rf by the mean-value route.
pub fn reconstruct_point<T: Real>(
    phi: &TransformField<T>,
    x: &Point<T>,
    plan: &InversionPlan<T>,
) -> Result<ReconstructionResult<T>> {
    if phi.space != plan.space {
        return Err(Error::invalid(
            "transform and plan live on different spaces",
        ));
    }
    plan.check_admissible()?;
    let report = check_existence(&plan.function_class, &plan.space);
    if !report.holds {
        return Err(Error::Divergent(DivergenceReport {
            condition: report.condition.name().into(),
            critical_exponent: to_f64(report.critical_exponent),
            margin: to_f64(report.margin),
            partial_integrals: Vec::new(),
        }));
    }
    let dual = dual_profile(phi, x)?;
    reconstruct_from_dual(&dual, plan)
}

/// The limit step alone, for callers that reuse one dual profile across
/// several plans.
pub fn reconstruct_from_dual<T: Real>(
    dual: &DualMeanProfile<T>,
    plan: &InversionPlan<T>,
) -> Result<ReconstructionResult<T>> {
    plan.check_admissible()?;
    let sphere = plan.space.curvature == Curvature::Spherical;
    let first_error: Mutex<Option<Error>> = Mutex::new(None);
    let sample_error = Mutex::new(T::zero());
    let sample = |h: T| {
        let r = if sphere { T::one() - h } else { h };
        match recover_mean_estimate(dual, plan, r) {
            Ok(m) => {
                let mut worst = sample_error.lock().unwrap();
                *worst = worst.max(m.error_estimate);
                m.value
            }
            Err(e) => {
                first_error.lock().unwrap().get_or_insert(e);
                T::nan()
            }
        }
    };
    let limit = limit_at_zero(sample, &plan.r_sequence);
    if let Some(e) = first_error.into_inner().unwrap() {
        return Err(e);
    }
    let mut limit_diag = limit?;
    // the tableau sees only the discretization in r; add the propagated
    // error of the samples themselves
    let worst = sample_error.into_inner().unwrap();
    limit_diag.error_estimate += plan.r_sequence.noise_gain(limit_diag.levels_used) * worst;
    let (dual2, plan2) = (dual.clone(), *plan);
    let intermediate_mean = Profile::analytic(
        move |r: T| recover_mean(&dual2, &plan2, r).unwrap_or(T::nan()),
        dual.values.decay(),
    );
    Ok(ReconstructionResult {
        value: limit_diag.value,
        limit_diag,
        variant_used: plan.variant,
        sphere_formula: if sphere { plan.sphere_formula() } else { None },
        intermediate_mean,
    })
}
