//! Test functions with known values, used by the end-to-end pipelines and
//! the CLI. Each phantom carries its decay class and, when it is radial or
//! zonal about the base point, its one-dimensional profile.

use std::fmt;
use std::sync::Arc;

use crate::fraccalc::{Decay, Profile};
use crate::geometry::{dot, Curvature, Point, SpaceDescriptor};
use crate::numerics::{lit, Real};
use crate::{Error, Result};

type PointFn<T> = Arc<dyn Fn(&[T]) -> T + Send + Sync>;

/// Named families of sharp-existence counterexamples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Counterexample<T> {
    /// ℝⁿ: (2+|x|)^{−n/p − shift} / log^{1/p+δ}(2+|x|).
    EuclidF2 { p: T, delta: T, shift: T },
    /// ℍⁿ: x_{n+1}^{(1−n)/p − shift} / log(1+x_{n+1}).
    HyperF1 { p: T, shift: T },
    /// ℍⁿ: x_{n+1}^{−μ} / log(1+x_{n+1}).
    HyperF2 { mu: T },
}

impl<T: Real> Counterexample<T> {
    pub fn name(&self) -> &'static str {
        match self {
            Counterexample::EuclidF2 { .. } => "euclid_f2",
            Counterexample::HyperF1 { .. } => "hyper_f1",
            Counterexample::HyperF2 { .. } => "hyper_f2",
        }
    }

    /// The exact profile (in |x| on ℝⁿ, in x_{n+1} on ℍⁿ) with its decay.
    pub fn profile(&self, space: &SpaceDescriptor) -> Result<Profile<T>> {
        let n = lit::<T>(space.n as f64);
        match (*self, space.curvature) {
            (Counterexample::EuclidF2 { p, delta, shift }, Curvature::Euclidean) => {
                if !(p >= T::one()) || !(delta > T::zero()) || !(shift >= T::zero()) {
                    return Err(Error::invalid("euclid_f2 needs p ≥ 1, δ > 0, shift ≥ 0"));
                }
                let conj = T::one() - T::one() / p;
                if p > T::one() && delta >= conj && shift == T::zero() {
                    return Err(Error::invalid(format!("euclid_f2 needs δ < 1/p′ = {conj}")));
                }
                let mu = n / p + shift;
                let lambda = T::one() / p + delta;
                Ok(Profile::analytic(
                    move |t: T| {
                        let a = lit::<T>(2.0) + t;
                        a.powf(-mu) / a.ln().powf(lambda)
                    },
                    Decay::PowerLog { mu, lambda },
                ))
            }
            (Counterexample::HyperF1 { p, shift }, Curvature::Hyperbolic) => {
                if !(p >= T::one()) || !(shift >= T::zero()) {
                    return Err(Error::invalid("hyper_f1 needs p ≥ 1 and shift ≥ 0"));
                }
                let mu = (n - T::one()) / p + shift;
                Ok(Profile::analytic(
                    move |s: T| s.powf(-mu) / (T::one() + s).ln(),
                    Decay::PowerLog {
                        mu,
                        lambda: T::one(),
                    },
                ))
            }
            (Counterexample::HyperF2 { mu }, Curvature::Hyperbolic) => Ok(Profile::analytic(
                move |s: T| s.powf(-mu) / (T::one() + s).ln(),
                Decay::PowerLog {
                    mu,
                    lambda: T::one(),
                },
            )),
            (c, _) => Err(Error::invalid(format!(
                "{} does not live on {space}",
                c.name()
            ))),
        }
    }
}

/// A function on a model space.
#[derive(Clone)]
pub struct Phantom<T: Real> {
    pub name: String,
    pub space: SpaceDescriptor,
    /// Decay in |y| on ℝⁿ and in y_{n+1} on ℍⁿ.
    pub decay: Decay<T>,
    /// Characteristic length, used to size derivative steps.
    pub scale: T,
    /// Distance from the base point to the bulk of the function.
    pub extent: T,
    eval: PointFn<T>,
    profile: Option<Profile<T>>,
    even: bool,
}

impl<T: Real> fmt::Debug for Phantom<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Phantom")
            .field("name", &self.name)
            .field("space", &self.space)
            .field("decay", &self.decay)
            .finish()
    }
}

impl<T: Real> Phantom<T> {
    fn new(
        name: impl Into<String>,
        space: SpaceDescriptor,
        decay: Decay<T>,
        eval: PointFn<T>,
    ) -> Self {
        Phantom {
            name: name.into(),
            space,
            decay,
            scale: T::one(),
            extent: T::zero(),
            eval,
            profile: None,
            even: false,
        }
    }

    /// Radial phantom f(y) = f₀(|y|) on ℝⁿ, or zonal f(y) = f₀(y_{n+1}) on
    /// ℍⁿ.
    pub fn from_profile(
        name: impl Into<String>,
        space: SpaceDescriptor,
        f0: Profile<T>,
    ) -> Result<Self> {
        let n = space.n;
        let g = f0.clone();
        let eval: PointFn<T> = match space.curvature {
            Curvature::Euclidean => Arc::new(move |y: &[T]| g.eval(dot(y, y).sqrt())),
            Curvature::Hyperbolic => Arc::new(move |y: &[T]| g.eval(y[n])),
            Curvature::Spherical => {
                return Err(Error::invalid("profile phantoms live on ℝⁿ or ℍⁿ"))
            }
        };
        let mut ph = Phantom::new(name, space, f0.decay(), eval);
        ph.profile = Some(f0);
        Ok(ph)
    }

    /// e^{−|y|²} on ℝⁿ.
    pub fn radial_gaussian(space: SpaceDescriptor) -> Result<Self> {
        if space.curvature != Curvature::Euclidean {
            return Err(Error::invalid("radial_gaussian lives on ℝⁿ"));
        }
        Self::from_profile(
            "radial_gaussian",
            space,
            Profile::analytic(|t: T| (-t * t).exp(), Decay::Gaussian),
        )
    }

    /// e^{−|y−a|²} on ℝⁿ.
    pub fn shifted_gaussian(space: SpaceDescriptor, a: Vec<T>) -> Result<Self> {
        if space.curvature != Curvature::Euclidean || a.len() != space.n {
            return Err(Error::invalid("shifted_gaussian needs a center in ℝⁿ"));
        }
        let center = a.clone();
        let eval: PointFn<T> = Arc::new(move |y: &[T]| {
            let d2: T = y
                .iter()
                .zip(&center)
                .map(|(&p, &q)| (p - q) * (p - q))
                .sum();
            (-d2).exp()
        });
        let mut ph = Phantom::new("shifted_gaussian", space, Decay::Gaussian, eval);
        ph.extent = dot(&a, &a).sqrt();
        if a.iter().all(|&c| c == T::zero()) {
            ph.profile = Some(Profile::analytic(|t: T| (-t * t).exp(), Decay::Gaussian));
        }
        Ok(ph)
    }

    /// Zonal phantom on ℍⁿ whose reduced profile is f̃₀(t) = e^{−t²}, that
    /// is f₀(s) = s·e^{1−s²}.
    pub fn zonal_gaussian(space: SpaceDescriptor) -> Result<Self> {
        if space.curvature != Curvature::Hyperbolic {
            return Err(Error::invalid("zonal_gaussian lives on ℍⁿ"));
        }
        let f0 = Profile::analytic(|s: T| s * (T::one() - s * s).exp(), Decay::Gaussian);
        Self::from_profile("zonal_gaussian", space, f0)
    }

    /// y_{n+1}^{−μ} on ℍⁿ.
    pub fn zonal_power(space: SpaceDescriptor, mu: T) -> Result<Self> {
        if space.curvature != Curvature::Hyperbolic {
            return Err(Error::invalid("zonal_power lives on ℍⁿ"));
        }
        Self::from_profile(
            "zonal_power",
            space,
            Profile::analytic(move |s: T| s.powf(-mu), Decay::Power { mu }),
        )
    }

    /// The constant c on Sⁿ.
    pub fn constant(space: SpaceDescriptor, c: T) -> Result<Self> {
        if space.curvature != Curvature::Spherical {
            return Err(Error::invalid(
                "constant phantoms are only integrable on Sⁿ",
            ));
        }
        let mut ph = Phantom::new(
            "constant",
            space,
            Decay::Compact { radius: T::one() },
            Arc::new(move |_| c),
        );
        ph.even = true;
        Ok(ph)
    }

    /// 1 + c·(y·e)² on Sⁿ: smooth, even and not constant.
    pub fn sphere_quadratic(space: SpaceDescriptor, e: Vec<T>, c: T) -> Result<Self> {
        if space.curvature != Curvature::Spherical || e.len() != space.n + 1 {
            return Err(Error::invalid(
                "sphere_quadratic needs a direction in ℝ^{n+1}",
            ));
        }
        let eval: PointFn<T> = Arc::new(move |y: &[T]| {
            let p = dot(y, &e);
            T::one() + c * p * p
        });
        let mut ph = Phantom::new(
            "sphere_quadratic",
            space,
            Decay::Compact { radius: T::one() },
            eval,
        );
        ph.even = true;
        Ok(ph)
    }

    /// y·e on Sⁿ, an odd function.
    pub fn sphere_odd(space: SpaceDescriptor, e: Vec<T>) -> Result<Self> {
        if space.curvature != Curvature::Spherical || e.len() != space.n + 1 {
            return Err(Error::invalid("sphere_odd needs a direction in ℝ^{n+1}"));
        }
        Ok(Phantom::new(
            "sphere_odd",
            space,
            Decay::Compact { radius: T::one() },
            Arc::new(move |y: &[T]| dot(y, &e)),
        ))
    }

    /// A rough radial phantom on ℝⁿ: the cone (1 − |y|)₊, continuous but
    /// not differentiable.
    pub fn rough_cone(space: SpaceDescriptor) -> Result<Self> {
        if space.curvature != Curvature::Euclidean {
            return Err(Error::invalid("rough_cone lives on ℝⁿ"));
        }
        let f0 = Profile::analytic(
            |t: T| (T::one() - t).max(T::zero()),
            Decay::Compact { radius: T::one() },
        );
        let mut ph = Self::from_profile("rough_cone", space, f0)?;
        ph.profile.as_mut().unwrap().smoothness_hint = 0;
        Ok(ph)
    }

    pub fn counterexample(space: SpaceDescriptor, which: Counterexample<T>) -> Result<Self> {
        Self::from_profile(which.name(), space, which.profile(&space)?)
    }

    pub fn eval(&self, y: &[T]) -> T {
        (self.eval)(y)
    }

    pub fn at(&self, x: &Point<T>) -> T {
        self.eval(&x.coords)
    }

    /// Shared handle to the point function.
    pub fn function(&self) -> PointFn<T> {
        self.eval.clone()
    }

    /// Radial (ℝⁿ) or zonal (ℍⁿ) profile about the base point.
    pub fn profile(&self) -> Option<&Profile<T>> {
        self.profile.as_ref()
    }

    /// Known to be even on Sⁿ.
    pub fn is_even(&self) -> bool {
        self.even
    }
}

/// f̃₀(t) = (1+t²)^{−1/2} f₀(√(1+t²)), the reduced form of a zonal profile
/// on ℍⁿ.
pub fn reduced_zonal_profile<T: Real>(f0: &Profile<T>) -> Profile<T> {
    let g = f0.clone();
    let mut p = Profile::analytic(
        move |t: T| {
            let s = (T::one() + t * t).sqrt();
            g.eval(s) / s
        },
        f0.decay().times_power(-T::one()),
    );
    p.smoothness_hint = f0.smoothness_hint;
    p
}
