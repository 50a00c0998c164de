//! Forward transforms: closed one-dimensional routes for radial and zonal
//! functions, quadrature along lines, planes and great subspheres for
//! general ones, existence checks and the dual-composition identity.

mod sinogram;

pub use sinogram::{Sinogram, SinogramGrid};

use std::fmt;
use std::sync::Arc;

use crate::fraccalc::{ek_integral, Decay, FractionalOrder, Profile, Sign};
use crate::geometry::{
    complement_basis, distance_function, shifted_dual_transform, spherical_mean, tilde_mean,
    AngularRule, Curvature, GeodesicParam, Point, SpaceDescriptor,
};
use crate::numerics::{integrate_tail, lit, surface_area, to_f64, QuadratureSpec, Real, TailSpec};
use crate::phantom::{reduced_zonal_profile, Phantom};
use crate::{Error, Result};

/// Integrability class of the input function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FunctionClass<T> {
    /// Pointwise decay, in |x| on ℝⁿ and in x_{n+1} on ℍⁿ.
    Decay(Decay<T>),
    /// Membership in L^p.
    Lp { p: T },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExistenceCondition {
    /// ∫_{|x|>1} |f(x)| |x|^{k−n} dx < ∞ on ℝⁿ.
    EuclideanMoment,
    /// ∫_{x_{n+1}>2} |f(x)| x_{n+1}^{k−n} dx < ∞ on ℍⁿ.
    HyperbolicMoment,
    /// Convergence of the Erdélyi–Kober integral itself.
    EkMoment,
}

impl ExistenceCondition {
    pub fn name(&self) -> &'static str {
        match self {
            ExistenceCondition::EuclideanMoment => "euclid_moment",
            ExistenceCondition::HyperbolicMoment => "hyper_moment",
            ExistenceCondition::EkMoment => "ek_moment",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExistenceReport<T> {
    pub condition: ExistenceCondition,
    pub holds: bool,
    /// Threshold for the decay exponent μ, or for p in the L^p case.
    pub critical_exponent: T,
    /// μ − μ_crit, or p_crit − p.
    pub margin: T,
}

impl<T: Real> fmt::Display for ExistenceReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} (critical {}, margin {})",
            self.condition.name(),
            if self.holds { "holds" } else { "fails" },
            self.critical_exponent,
            self.margin
        )
    }
}

/// Sharp existence test for the k-geodesic transform of a function of the
/// given class.
pub fn check_existence<T: Real>(
    class: &FunctionClass<T>,
    space: &SpaceDescriptor,
) -> ExistenceReport<T> {
    let n = lit::<T>(space.n as f64);
    let k = lit::<T>(space.k as f64);
    let lp = |condition, critical: T, p: T| ExistenceReport {
        condition,
        holds: p >= T::one() && p < critical,
        critical_exponent: critical,
        margin: critical - p,
    };
    match (space.curvature, *class) {
        (Curvature::Euclidean, FunctionClass::Decay(d)) => {
            let t = d.moment(k - T::one());
            ExistenceReport {
                condition: ExistenceCondition::EuclideanMoment,
                holds: t.converges,
                critical_exponent: t.critical,
                margin: t.margin,
            }
        }
        (Curvature::Euclidean, FunctionClass::Lp { p }) => {
            lp(ExistenceCondition::EuclideanMoment, n / k, p)
        }
        (Curvature::Hyperbolic, FunctionClass::Decay(d)) => {
            // the reduced profile carries one more power of decay
            let t = d.times_power(-T::one()).moment(k - T::one());
            ExistenceReport {
                condition: ExistenceCondition::HyperbolicMoment,
                holds: t.converges,
                critical_exponent: t.critical - T::one(),
                margin: t.margin,
            }
        }
        (Curvature::Hyperbolic, FunctionClass::Lp { p }) => {
            let critical = if space.k == 1 {
                T::infinity()
            } else {
                (n - T::one()) / (k - T::one())
            };
            lp(ExistenceCondition::HyperbolicMoment, critical, p)
        }
        (Curvature::Spherical, _) => ExistenceReport {
            condition: ExistenceCondition::EkMoment,
            holds: true,
            critical_exponent: T::zero(),
            margin: T::infinity(),
        },
    }
}

fn relabel<T: Real>(e: Error, report: &ExistenceReport<T>) -> Error {
    match e {
        Error::Divergent(mut rep) => {
            rep.condition = report.condition.name().to_owned();
            rep.critical_exponent = to_f64(report.critical_exponent);
            rep.margin = to_f64(report.margin);
            Error::Divergent(rep)
        }
        other => other,
    }
}

/// (Rf)(ξ) for radial f = f₀(|x|) on ℝⁿ or zonal f = f₀(x_{n+1}) on ℍⁿ,
/// where r is the distance parameter of ξ (d on ℝⁿ, sinh d on ℍⁿ).
pub fn radon_radial<T: Real>(f0: &Profile<T>, space: &SpaceDescriptor, r: T) -> Result<T> {
    if f0.is_zero() {
        return Ok(T::zero());
    }
    let half = FractionalOrder::half(space.k)?;
    let pk = T::PI().powf(half.alpha);
    let report = check_existence(&FunctionClass::Decay(f0.decay()), space);
    match space.curvature {
        Curvature::Euclidean => {
            Ok(pk * ek_integral(f0, &half, Sign::Minus, r).map_err(|e| relabel(e, &report))?)
        }
        Curvature::Hyperbolic => {
            let reduced = reduced_zonal_profile(f0);
            let v =
                ek_integral(&reduced, &half, Sign::Minus, r).map_err(|e| relabel(e, &report))?;
            Ok(pk * v / space.weight_lambda(r))
        }
        Curvature::Spherical => Err(Error::Unsupported(
            "zonal Funk transforms go through funk_zonal or the sampled route".into(),
        )),
    }
}

/// r ↦ (Rf)(ξ_r) on [0, r_max], fitted once by a Chebyshev expansion.
pub fn radial_transform_profile<T: Real>(
    f0: &Profile<T>,
    space: &SpaceDescriptor,
    r_max: T,
    rel_tol: T,
) -> Result<Profile<T>> {
    // surface divergence before sampling
    radon_radial(f0, space, r_max)?;
    radon_radial(f0, space, T::zero())?;
    let half = lit::<T>(space.k as f64) / lit(2.0);
    let decay = match space.curvature {
        Curvature::Hyperbolic => f0
            .decay()
            .times_power(-T::one())
            .after_ek(half)
            .times_power(T::one() - lit(space.k as f64)),
        _ => f0.decay().after_ek(half),
    };
    let (g, sp) = (f0.clone(), *space);
    let exact = Profile::analytic(move |r| radon_radial(&g, &sp, r).unwrap_or(T::nan()), decay);
    exact.materialize(T::zero(), r_max, rel_tol)
}

/// Truncation radius beyond which a function of this decay class is
/// negligible next to unit-size values.
fn cutoff<T: Real>(decay: &Decay<T>) -> T {
    match *decay {
        Decay::Gaussian => lit(6.5),
        Decay::Exponential { rate } => lit::<T>(42.0) / rate,
        Decay::Compact { radius } => radius,
        Decay::Power { .. } | Decay::PowerLog { .. } => lit(16.0),
    }
}

/// ∫ f over a line or plane of ℝ² / ℝ³, by half-line quadratures with
/// decay-adapted tails. `tail` describes the decay of f in |y|.
pub fn radon_sampled<T, F>(
    f: F,
    geo: &GeodesicParam<T>,
    tail: &TailSpec<T>,
    rel_tol: T,
) -> Result<T>
where
    T: Real,
    F: Fn(&[T]) -> T,
{
    let spec = QuadratureSpec::default().with_tol(rel_tol);
    let along = |foot: &[T], dir: &[T]| -> Result<T> {
        let d = foot.len();
        let half = |sign: T| {
            integrate_tail(
                |v: T| {
                    let mut y = [T::zero(); 3];
                    for i in 0..d {
                        y[i] = foot[i] + sign * v * dir[i];
                    }
                    f(&y[..d])
                },
                T::zero(),
                tail,
                &spec,
            )
        };
        Ok(half(T::one())?.value + half(-T::one())?.value)
    };
    match geo {
        GeodesicParam::Line2 { theta, u } => {
            let (c, s) = (theta.cos(), theta.sin());
            along(&[*u * c, *u * s], &[-s, c])
        }
        GeodesicParam::Line3 { direction, offset } => along(offset, direction),
        GeodesicParam::Plane3 { normal, u } => {
            let foot: Vec<T> = normal.iter().map(|&c| c * *u).collect();
            let basis = complement_basis(normal);
            let ring = AngularRule::default().sphere::<T>(2)?;
            let radial_tail = TailSpec {
                decay: tail.decay.times_power(T::one()),
                ..*tail
            };
            let mut acc = T::zero();
            for (dir, w) in ring {
                let d: Vec<T> = (0..3)
                    .map(|i| dir[0] * basis[0][i] + dir[1] * basis[1][i])
                    .collect();
                let q = integrate_tail(
                    |rho: T| {
                        let y = [
                            foot[0] + rho * d[0],
                            foot[1] + rho * d[1],
                            foot[2] + rho * d[2],
                        ];
                        rho * f(&y)
                    },
                    T::zero(),
                    &radial_tail,
                    &spec,
                )?;
                acc += w * q.value;
            }
            Ok(acc * T::TAU())
        }
        _ => Err(Error::Unsupported(
            "sampled transforms are implemented for lines and planes of ℝ², ℝ³".into(),
        )),
    }
}

/// ∫ f over the great subsphere ω^⊥ ∩ Sⁿ (unnormalized; area σ_{n−1} for
/// f ≡ 1), for n ∈ {2, 3}.
pub fn funk_sampled<T, F>(f: F, omega: &[T], rule: &AngularRule) -> Result<T>
where
    T: Real,
    F: Fn(&[T]) -> T,
{
    let basis = complement_basis(omega);
    let d = basis.len();
    let nodes = rule.sphere::<T>(d)?;
    let mut y = vec![T::zero(); omega.len()];
    let mut acc = T::zero();
    for (sigma, w) in &nodes {
        for (j, yj) in y.iter_mut().enumerate() {
            *yj = (0..d).map(|i| sigma[i] * basis[i][j]).sum();
        }
        acc += *w * f(&y);
    }
    Ok(acc * surface_area::<T>(d)?)
}

type GeoFn<T> = Arc<dyn Fn(&GeodesicParam<T>) -> T + Send + Sync>;

#[derive(Clone)]
enum Storage<T: Real> {
    Analytic(GeoFn<T>),
    Sampled(Sinogram<T>),
}

/// A Radon transform φ on the family of k-geodesics, either callable or
/// sampled on a sinogram grid.
#[derive(Clone)]
pub struct TransformField<T: Real> {
    pub space: SpaceDescriptor,
    /// Decay of φ in the distance parameter, with a truncation radius.
    pub decay: TailSpec<T>,
    storage: Storage<T>,
}

impl<T: Real> fmt::Debug for TransformField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.storage {
            Storage::Analytic(_) => "analytic",
            Storage::Sampled(_) => "sampled",
        };
        f.debug_struct("TransformField")
            .field("space", &self.space)
            .field("storage", &kind)
            .field("decay", &self.decay)
            .finish()
    }
}

impl<T: Real> TransformField<T> {
    pub fn analytic<F>(space: SpaceDescriptor, decay: TailSpec<T>, f: F) -> Self
    where
        F: Fn(&GeodesicParam<T>) -> T + Send + Sync + 'static,
    {
        TransformField {
            space,
            decay,
            storage: Storage::Analytic(Arc::new(f)),
        }
    }

    pub fn from_sinogram(sinogram: Sinogram<T>, decay: TailSpec<T>) -> Self {
        TransformField {
            space: sinogram.space,
            decay,
            storage: Storage::Sampled(sinogram),
        }
    }

    /// Transform of a radial (ℝⁿ) or zonal (ℍⁿ) function, tabulated in the
    /// distance parameter up to `r_max`.
    pub fn radial(f0: &Profile<T>, space: SpaceDescriptor, r_max: T, rel_tol: T) -> Result<Self> {
        let prof = radial_transform_profile(f0, &space, r_max, rel_tol)?;
        let x0 = Point::origin(&space);
        let decay = TailSpec::new(prof.decay(), r_max);
        Ok(Self::analytic(
            space,
            decay,
            move |g| match distance_function(&x0, g, &space) {
                Ok(r) => prof.eval(r),
                Err(_) => T::nan(),
            },
        ))
    }

    /// Line or plane integrals of a phantom on ℝ² / ℝ³, computed on demand.
    pub fn sampled_lines(ph: &Phantom<T>, rel_tol: T) -> Result<Self> {
        let space = ph.space;
        if space.curvature != Curvature::Euclidean || space.n > 3 {
            return Err(Error::Unsupported(format!(
                "sampled line transforms on {space}"
            )));
        }
        let report = check_existence(&FunctionClass::Decay(ph.decay), &space);
        if !report.holds {
            return Err(Error::Divergent(crate::DivergenceReport {
                condition: report.condition.name().into(),
                critical_exponent: to_f64(report.critical_exponent),
                margin: to_f64(report.margin),
                partial_integrals: Vec::new(),
            }));
        }
        let radius = ph.extent + cutoff(&ph.decay);
        let tail = TailSpec::new(ph.decay, radius);
        let f = ph.function();
        let decay = TailSpec::new(ph.decay.times_power(lit(space.k as f64)), radius);
        Ok(Self::analytic(space, decay, move |g| {
            radon_sampled(|y: &[T]| f(y), g, &tail, rel_tol).unwrap_or(T::nan())
        }))
    }

    /// Line transform of a phantom on ℝ², tabulated on a sinogram grid.
    pub fn sinogram_of(ph: &Phantom<T>, grid: Option<SinogramGrid<T>>, rel_tol: T) -> Result<Self> {
        if ph.space != SpaceDescriptor::euclidean(2, 1)? {
            return Err(Error::Unsupported(
                "sinograms are built for lines in ℝ²".into(),
            ));
        }
        let lines = Self::sampled_lines(ph, rel_tol)?;
        let grid = grid.unwrap_or_else(|| SinogramGrid::new(ph.extent + cutoff(&ph.decay)));
        let tail = TailSpec::new(ph.decay, ph.extent + cutoff(&ph.decay));
        let f = ph.function();
        let sino = Sinogram::build(grid, |theta, u| {
            radon_sampled(
                |y: &[T]| f(y),
                &GeodesicParam::line2(theta, u),
                &tail,
                rel_tol,
            )
        })?;
        Ok(Self::from_sinogram(sino, lines.decay))
    }

    /// Funk transform of a phantom on S² or S³ by quadrature over great
    /// subspheres.
    pub fn funk(ph: &Phantom<T>, rule: AngularRule) -> Result<Self> {
        let space = ph.space;
        if space.curvature != Curvature::Spherical || space.k != space.n - 1 {
            return Err(Error::Unsupported(format!("Funk transform on {space}")));
        }
        rule.sphere::<T>(space.n)?;
        let f = ph.function();
        Ok(Self::analytic(
            space,
            TailSpec::new(Decay::Compact { radius: T::one() }, T::one()),
            move |g| match g {
                GeodesicParam::Hyperplane { normal } => {
                    funk_sampled(|y: &[T]| f(y), normal, &rule).unwrap_or(T::nan())
                }
                _ => T::nan(),
            },
        ))
    }

    /// Picks the forward route for a phantom: the one-dimensional formula
    /// for radial/zonal data, quadrature otherwise.
    pub fn for_phantom(ph: &Phantom<T>, rel_tol: T) -> Result<Self> {
        match (ph.space.curvature, ph.profile()) {
            (Curvature::Spherical, _) => Self::funk(
                ph,
                AngularRule {
                    circle: 128,
                    polar: 24,
                    azimuth: 48,
                    inner_circle: 32,
                },
            ),
            (_, Some(f0)) => Self::radial(f0, ph.space, default_r_max(ph), rel_tol),
            (Curvature::Euclidean, None) => Self::sampled_lines(ph, rel_tol),
            (Curvature::Hyperbolic, None) => Err(Error::Unsupported(
                "non-zonal data on ℍⁿ: only zonal forward transforms are implemented".into(),
            )),
        }
    }

    pub fn eval(&self, g: &GeodesicParam<T>) -> T {
        match &self.storage {
            Storage::Analytic(f) => f(g),
            Storage::Sampled(s) => s.eval_line(g).unwrap_or(T::nan()),
        }
    }

    pub fn sinogram(&self) -> Option<&Sinogram<T>> {
        match &self.storage {
            Storage::Sampled(s) => Some(s),
            Storage::Analytic(_) => None,
        }
    }
}

/// Range of distance parameters on which transforms and dual profiles of
/// this phantom are tabulated.
pub fn default_r_max<T: Real>(ph: &Phantom<T>) -> T {
    match ph.space.curvature {
        Curvature::Spherical => T::one(),
        Curvature::Euclidean => ph.extent + cutoff(&ph.decay),
        // sinh d grows like x_{n+1}: a cutoff in x_{n+1} is one in r as well
        Curvature::Hyperbolic => ph.extent + cutoff(&ph.decay) + T::one(),
    }
}

/// Right-hand side of the sphere dual-composition identity together with
/// the size of the ignored odd part of the mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunkZonal<T> {
    pub value: T,
    /// max |𝕄f(s) − 𝕄f(−s)| / 2 on a probe grid; zero for even f.
    pub odd_part: T,
}

/// (R*_x R f)(r) on Sⁿ through the plane-section mean:
/// 2π^{k/2} r^{1−k} I^{k/2}_{+,2}[s ↦ s^{−1}(𝕄_x f)(s)](r). Only the even
/// part of f contributes, since R annihilates odd functions.
pub fn funk_zonal<T: Real>(ph: &Phantom<T>, x: &Point<T>, r: T) -> Result<FunkZonal<T>> {
    let space = ph.space;
    if space.curvature != Curvature::Spherical {
        return Err(Error::invalid("funk_zonal works on Sⁿ"));
    }
    if !(r > T::zero() && r < T::one()) {
        return Err(Error::invalid(format!(
            "funk_zonal needs r ∈ (0, 1), got {r}; use the dual transform at r = 1"
        )));
    }
    let f = ph.function();
    let mean = |s: T| spherical_mean(|y: &[T]| f(y), x, s, &space);
    let mut odd_part = T::zero();
    let mut scale = T::zero();
    for s in [0.25, 0.5, 0.75] {
        let s = lit::<T>(s);
        let (p, m) = (mean(s)?, mean(-s)?);
        odd_part = odd_part.max((p - m).abs() / lit(2.0));
        scale = scale.max(p.abs()).max(m.abs());
    }
    let (f2, x2) = (ph.function(), x.clone());
    let g = Profile::analytic(
        move |s: T| {
            let m = |t: T| spherical_mean(|y: &[T]| f2(y), &x2, t, &space).unwrap_or(T::nan());
            (m(s) + m(-s)) / (lit::<T>(2.0) * s)
        },
        Decay::Compact { radius: T::one() },
    );
    let half = FractionalOrder::half(space.k)?;
    let k = lit::<T>(space.k as f64);
    // For (nearly) odd f the even part is rounding noise and a relative
    // tolerance cannot be met; accept an error small against the data scale.
    let integral = match ek_integral(&g, &half, Sign::Plus, r) {
        Err(Error::NumericFailure {
            best,
            error_estimate,
            ..
        }) if lit::<T>(error_estimate) <= lit::<T>(1e-12) * scale => lit(best),
        other => other?,
    };
    let value = lit::<T>(2.0) * T::PI().powf(half.alpha) * r.powf(T::one() - k) * integral;
    Ok(FunkZonal { value, odd_part })
}

/// Both sides of the dual-composition identity at (x, r): the shifted dual
/// transform of `field`, and the fractional integral of the spherical mean
/// of `ph`.
pub fn dual_composition<T: Real>(
    ph: &Phantom<T>,
    field: &TransformField<T>,
    x: &Point<T>,
    r: T,
) -> Result<(T, T)> {
    let space = ph.space;
    if field.space != space {
        return Err(Error::invalid("field and phantom live on different spaces"));
    }
    let lhs = shifted_dual_transform(|g| field.eval(g), x, r, &space)?;
    let half = FractionalOrder::half(space.k)?;
    let pk = T::PI().powf(half.alpha);
    let (f, xc) = (ph.function(), x.clone());
    let rhs = match space.curvature {
        Curvature::Euclidean => {
            let mean = Profile::analytic(
                move |t: T| spherical_mean(|y: &[T]| f(y), &xc, t, &space).unwrap_or(T::nan()),
                ph.decay,
            );
            pk * ek_integral(&mean, &half, Sign::Minus, r)?
        }
        Curvature::Hyperbolic => {
            let mean = Profile::analytic(
                move |t: T| tilde_mean(|y: &[T]| f(y), &xc, t, &space).unwrap_or(T::nan()),
                ph.decay.times_power(-T::one()),
            );
            pk * ek_integral(&mean, &half, Sign::Minus, r)? / space.weight_lambda(r)
        }
        Curvature::Spherical => funk_zonal(ph, x, r)?.value,
    };
    Ok((lhs, rhs))
}
