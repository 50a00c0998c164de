//! Inversion by ordinary differentiation in r: the λ-weighted shifted dual
//! transform (even k) and the sgn/log kernel operators on ℝⁿ.

use rayon::prelude::*;

use crate::fraccalc::{accept, Decay, Profile};
use crate::geometry::{
    dot, norm, shifted_dual_transform, AngularRule, Curvature, GeodesicParam, Point,
    SpaceDescriptor,
};
use crate::numerics::{
    derivative_at_with, factorial, inner_tol, integrate_tail, lit, surface_area,
    tanh_sinh_with_distances, DerivativeOptions, LimitEstimate, QuadratureSpec, Real, Side,
    TailSpec,
};
use crate::radon::TransformField;
use crate::{Error, Result};

/// Area of the unit sphere S^d (σ₀ = 2).
fn sigma<T: Real>(d: usize) -> T {
    surface_area::<T>(d + 1).expect("d + 1 ≥ 1")
}

fn parity_sign<T: Real>(e: usize) -> T {
    if e % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// Normalizing constants of the direct formulas for one (X, n, k).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectConstants<T> {
    pub space: SpaceDescriptor,
    pub k: usize,
    /// ∂_r^k [λ_X R*_x φ](0) = c_X f(x); defined for even k.
    pub c_x: Option<T>,
    /// ∂_r^{k+1} [L*_x φ](0) = d_X f(x); defined for even k.
    pub d_x: Option<T>,
    /// ∂_r^{k+1} [L̃*_x φ](0) = d̃_X f(x); defined for odd k.
    pub tilde_d_x: Option<T>,
}

impl<T: Real> DirectConstants<T> {
    pub fn new(space: SpaceDescriptor) -> Self {
        let (n, k) = (space.n, space.k);
        let fact = factorial::<T>(k - 1);
        let two = lit::<T>(2.0);
        let sphere = space.curvature == Curvature::Spherical;
        // σ_k / σ_n on Sⁿ, 1 otherwise
        let ratio = if sphere {
            sigma::<T>(k) / sigma::<T>(n)
        } else {
            T::one()
        };
        let outer = sigma::<T>(n - k - 1) * sigma::<T>(k - 1) * fact;
        let (c_x, d_x, tilde_d_x) = if k % 2 == 0 {
            let c = parity_sign::<T>(k / 2) * fact * sigma::<T>(k - 1);
            let c = if sphere { two * c } else { c };
            let d = if sphere {
                two * outer * ratio
            } else {
                two * parity_sign::<T>((k + 2) / 2) * outer
            };
            (Some(c), Some(d), None)
        } else {
            let d = T::PI() * parity_sign::<T>((k - 1) / 2) * outer * ratio;
            let d = if sphere { two * d } else { d };
            (None, None, Some(d))
        };
        DirectConstants {
            space,
            k,
            c_x,
            d_x,
            tilde_d_x,
        }
    }

    /// The weight λ_X(r).
    pub fn lambda(&self, r: T) -> T {
        self.space.weight_lambda(r)
    }

    /// c_k = (−1)^{k/2} / ((k−1)! σ_{k−1}) for the unweighted ℝⁿ formula
    /// f(x) = lim c_k (−∂_r)^k (R*_x φ)(r).
    pub fn appendix_c_k(&self) -> Option<T> {
        (self.k % 2 == 0).then(|| {
            parity_sign::<T>(self.k / 2) / (factorial::<T>(self.k - 1) * sigma::<T>(self.k - 1))
        })
    }
}

fn options<T: Real>() -> DerivativeOptions<T> {
    DerivativeOptions {
        levels: 7,
        rel_tol: lit(1e-4),
        abs_tol: lit(1e-8),
    }
}

fn need_even(k: usize) -> Result<()> {
    if k % 2 != 0 {
        return Err(Error::invalid(format!(
            "the λ-weighted formula needs even k, got {k}"
        )));
    }
    Ok(())
}

/// r ↦ λ_X(r)(R*_x φ)(r) in the distance parameter of the space (sin d on
/// Sⁿ, where the dual chart is r = cos d).
fn weighted_dual<'a, T: Real>(phi: &'a TransformField<T>, x: &'a Point<T>) -> impl Fn(T) -> T + 'a {
    let space = phi.space;
    move |r: T| {
        let chart = if space.curvature == Curvature::Spherical {
            (T::one() - r * r).max(T::zero()).sqrt()
        } else {
            r
        };
        let dual = shifted_dual_transform(|g| phi.eval(g), x, chart, &space).unwrap_or(T::nan());
        space.weight_lambda(r) * dual
    }
}

/// f(x) = c_X⁻¹ ∂_r^k [λ_X R*_x φ](0) for even k, with a one-sided
/// derivative started at `step0`.
pub fn helgason_reconstruct<T: Real>(
    phi: &TransformField<T>,
    x: &Point<T>,
    step0: T,
) -> Result<LimitEstimate<T>> {
    let space = phi.space;
    need_even(space.k)?;
    if space.curvature == Curvature::Spherical && space.k != space.n - 1 {
        return Err(Error::Unsupported(format!(
            "shifted dual transforms on {space}"
        )));
    }
    let c = DirectConstants::<T>::new(space).c_x.expect("even k");
    let d = derivative_at_with(
        weighted_dual(phi, x),
        T::zero(),
        space.k,
        Side::Right,
        step0,
        &options(),
    )?;
    Ok(LimitEstimate {
        value: d.value / c,
        error_estimate: d.error_estimate / c.abs(),
        levels_used: d.levels_used,
    })
}

/// The two parts of σ_{k−1}⁻¹ (R*_x φ)(r) for even k on ℝⁿ, from the mean
/// profile t ↦ (𝕄_x f)(t):
///
/// A(r) = ∫_0^∞ 𝕄(t)(t² − r²)^{k/2−1} t dt, a polynomial of degree k − 2,
/// and B(r) = ∫_0^r 𝕄(t)(r² − t²)^{k/2−1} t dt, so that
/// R*_x φ = σ_{k−1}[A + (−1)^{k/2} B].
pub fn appendix_parts<T: Real>(mean: &Profile<T>, k: usize, r: T) -> Result<(T, T)> {
    need_even(k)?;
    let e = (k / 2 - 1) as i32;
    let tail = TailSpec::choose(
        mean.decay(),
        |t| mean.eval(t) * t.powi(k as i32 - 1),
        T::zero(),
        inner_tol(),
    );
    let a = integrate_tail(
        |t: T| mean.eval(t) * (t * t - r * r).powi(e) * t,
        T::zero(),
        &tail,
        &QuadratureSpec::default().with_tol(inner_tol()),
    )?;
    let b = if r > T::zero() {
        let q = tanh_sinh_with_distances(
            |t, _, dr| mean.eval(t) * (dr * (r + t)).powi(e) * t,
            T::zero(),
            r,
            inner_tol(),
        );
        accept(q, "appendix B(r)")?
    } else {
        T::zero()
    };
    Ok((a.value, b))
}

/// Kernel of the Ξ-integral operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaderKernel {
    /// sgn(ρ − r), paired with even k.
    Sgn,
    /// log|ρ² − r²|, paired with odd k.
    Log,
}

impl MaderKernel {
    pub fn for_k(k: usize) -> Self {
        if k % 2 == 0 {
            MaderKernel::Sgn
        } else {
            MaderKernel::Log
        }
    }
}

fn mader_checks<T: Real>(phi: &TransformField<T>, kernel: MaderKernel) -> Result<()> {
    let space = phi.space;
    if space.curvature != Curvature::Euclidean
        || !(space.n == 2 || space.n == 3)
        || space.k != space.n - 1
    {
        return Err(Error::Unsupported(format!(
            "kernel operators are implemented for hyperplanes of ℝ² and ℝ³, not {space}"
        )));
    }
    if kernel != MaderKernel::for_k(space.k) {
        return Err(Error::invalid(format!(
            "{kernel:?} kernel does not match k = {}",
            space.k
        )));
    }
    match phi.decay.decay {
        Decay::Compact { .. } | Decay::Gaussian | Decay::Exponential { .. } => Ok(()),
        d => Err(Error::invalid(format!(
            "kernel operators need compactly supported or fast-decaying data, got {d:?}"
        ))),
    }
}

/// ∫_0^R G(v) K(v, r) dv with the kernel's singular points as endpoints.
fn kernel_integral<T: Real, G: Fn(T) -> T>(g: G, kernel: MaderKernel, r: T, reach: T) -> Result<T> {
    let tol = inner_tol::<T>();
    let r = r.min(reach);
    let piece = |a: T, b: T, near: bool| -> Result<T> {
        let q = tanh_sinh_with_distances(
            |v, dl, dr| {
                let w = match kernel {
                    MaderKernel::Sgn => {
                        if near {
                            -T::one()
                        } else {
                            T::one()
                        }
                    }
                    // |v − r| is the distance to the endpoint at r
                    MaderKernel::Log => {
                        let gap = if near { dr } else { dl };
                        gap.ln() + (v + r).ln()
                    }
                };
                let gv = g(v);
                if gv == T::zero() {
                    T::zero()
                } else {
                    gv * w
                }
            },
            a,
            b,
            tol,
        );
        accept(q, "kernel operator")
    };
    let inner = if r > T::zero() {
        piece(T::zero(), r, true)?
    } else {
        T::zero()
    };
    Ok(inner + piece(r, reach, false)?)
}

/// (L*_x φ)(r) (sgn kernel) or (L̃*_x φ)(r) (log kernel) on hyperplanes of
/// ℝⁿ, where ρ^{k+1−n} ≡ 1. The measure on Ξ makes the hyperplanes through
/// a point a probability space.
pub fn mader_operator<T: Real>(
    phi: &TransformField<T>,
    x: &Point<T>,
    r: T,
    kernel: MaderKernel,
) -> Result<T> {
    mader_checks(phi, kernel)?;
    if r < T::zero() {
        return Err(Error::invalid("kernel operators need r ≥ 0"));
    }
    let n = phi.space.n;
    let rule = AngularRule::default();
    let nodes = rule.sphere::<T>(n)?;
    let reach = phi.decay.truncation_radius + norm(&x.coords);
    let geodesic = |theta: &[T], u: T| match n {
        2 => GeodesicParam::line2(theta[1].atan2(theta[0]), u),
        _ => GeodesicParam::Plane3 {
            normal: [theta[0], theta[1], theta[2]],
            u,
        },
    };
    let parts: Vec<Result<T>> = nodes
        .par_iter()
        .map(|(theta, w)| {
            let c = dot(&x.coords, theta);
            let g = |v: T| phi.eval(&geodesic(theta, c + v)) + phi.eval(&geodesic(theta, c - v));
            Ok(*w * kernel_integral(g, kernel, r, reach)?)
        })
        .collect();
    parts.into_iter().sum()
}

/// f(x) = d_X⁻¹ ∂_r^{k+1}(L*_x φ)(0) for even k, d̃_X⁻¹ ∂_r^{k+1}(L̃*_x φ)(0)
/// for odd k.
pub fn mader_reconstruct<T: Real>(
    phi: &TransformField<T>,
    x: &Point<T>,
    step0: T,
) -> Result<LimitEstimate<T>> {
    let k = phi.space.k;
    let kernel = MaderKernel::for_k(k);
    mader_checks(phi, kernel)?;
    let consts = DirectConstants::<T>::new(phi.space);
    let c = consts
        .d_x
        .or(consts.tilde_d_x)
        .expect("one constant is defined");
    let f = |r: T| mader_operator(phi, x, r, kernel).unwrap_or(T::nan());
    let d = derivative_at_with(f, T::zero(), k + 1, Side::Right, step0, &options())?;
    Ok(LimitEstimate {
        value: d.value / c,
        error_estimate: d.error_estimate / c.abs(),
        levels_used: d.levels_used,
    })
}
