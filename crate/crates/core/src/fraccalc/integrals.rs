use super::{Decay, FractionalOrder, Profile, Sign};
use crate::numerics::quadrature::power_tail;
use crate::numerics::special::gamma;
use crate::numerics::{
    exp_sinh, gauss_legendre_adaptive, inner_tol, lit, tanh_sinh_with_distances, to_f64,
    QuadResult, Real,
};
use crate::{DivergenceReport, Error, Result};

/// ∫_1^∞ |f(s)| s^{α−1} ds < ∞, decided from the decay class.
pub fn exists_rl<T: Real>(f: &Profile<T>, alpha: &FractionalOrder<T>) -> bool {
    f.is_zero() || f.decay().moment(alpha.alpha - T::one()).converges
}

/// ∫_1^∞ |f(s)| s^{2α−1} ds < ∞, decided from the decay class.
pub fn exists_ek<T: Real>(f: &Profile<T>, alpha: &FractionalOrder<T>) -> bool {
    f.is_zero()
        || f.decay()
            .moment(alpha.alpha + alpha.alpha - T::one())
            .converges
}

/// Behaviour of an integrand in the substituted variable u ∈ [0, ∞).
#[derive(Debug, Clone, Copy)]
pub(crate) enum UTail<T> {
    /// Integrand vanishes beyond u = bound.
    Finite(T),
    /// Super-polynomial decay.
    Fast,
    /// |g(u)| ≲ u^{−p} (log u)^{−λ}.
    Algebraic { p: T, lambda: T },
}

impl<T: Real> UTail<T> {
    /// Tail class of u ↦ f(s(u)) · s(u)^{c} · u^{a−1}, where s(u)^{2} grows
    /// like u (`quadratic = true`) or s grows like u.
    pub(crate) fn of(
        decay: Decay<T>,
        c: T,
        a: T,
        support_to_u: impl Fn(T) -> T,
        quadratic: bool,
    ) -> Self {
        match decay.times_power(c) {
            Decay::Compact { radius } => UTail::Finite(support_to_u(radius)),
            Decay::Gaussian | Decay::Exponential { .. } => UTail::Fast,
            Decay::Power { mu } | Decay::PowerLog { mu, .. } => {
                let mu_u = if quadratic { mu / lit(2.0) } else { mu };
                UTail::Algebraic {
                    p: mu_u + T::one() - a,
                    lambda: decay.log_exponent(),
                }
            }
        }
    }
}

/// ∫_0^∞ g(u) du. `g` may carry an integrable singularity at u = 0; the
/// argument passed near 0 is exact.
pub(crate) fn half_line<T: Real, G: Fn(T) -> T>(
    g: G,
    tail: UTail<T>,
    split: T,
    tol: T,
) -> Result<QuadResult<T>> {
    match tail {
        UTail::Finite(bound) => {
            if bound <= T::zero() {
                return Ok(QuadResult {
                    value: T::zero(),
                    error: T::zero(),
                    converged: true,
                    evaluations: 0,
                });
            }
            Ok(tanh_sinh_with_distances(
                |_, dl, _| g(dl),
                T::zero(),
                bound,
                tol,
            ))
        }
        UTail::Fast => Ok(exp_sinh(|_, d| g(d), T::zero(), tol)),
        UTail::Algebraic { p, lambda } => {
            let split = split.max(lit(1.0));
            if p > T::one() + lit(1e-3) {
                let head = tanh_sinh_with_distances(|_, dl, _| g(dl), T::zero(), split, tol);
                let rest = power_tail(&g, split, p, tol);
                Ok(sum(head, rest))
            } else if p > T::one() - lit(1e-12) && lambda > T::one() {
                // u^{-1} (log u)^{-λ}: integrate in x = log u
                let split = split.max(lit(std::f64::consts::E));
                let head = tanh_sinh_with_distances(|_, dl, _| g(dl), T::zero(), split, tol);
                let rest = power_tail(|x: T| g(x.exp()) * x.exp(), split.ln(), lambda, tol);
                Ok(sum(head, rest))
            } else if p > T::one() {
                // barely convergent power: integrate in x = log u with an
                // exponential tail e^{-(p-1)x}
                let head = tanh_sinh_with_distances(|_, dl, _| g(dl), T::zero(), split, tol);
                let rest = exp_sinh(|x: T, _| g(x.exp()) * x.exp(), split.ln(), tol);
                Ok(sum(head, rest))
            } else {
                Err(Error::invalid(
                    "half-line integrand does not decay fast enough",
                ))
            }
        }
    }
}

fn sum<T: Real>(a: QuadResult<T>, b: QuadResult<T>) -> QuadResult<T> {
    QuadResult {
        value: a.value + b.value,
        error: a.error + b.error,
        converged: a.converged && b.converged,
        evaluations: a.evaluations + b.evaluations,
    }
}

/// Accepts a quadrature result or reports a numeric failure. Results below
/// 10⁻⁴⁰ in magnitude are accepted on their absolute error alone.
pub(crate) fn accept<T: Real>(r: QuadResult<T>, context: &str) -> Result<T> {
    let loose = lit::<T>(1e-7);
    let floor = lit::<T>(1e-40).max(T::min_positive_value());
    if !r.value.is_finite() || (!r.converged && r.error > loose * r.value.abs() + floor) {
        return Err(Error::NumericFailure {
            context: context.to_string(),
            best: to_f64(r.value),
            error_estimate: to_f64(r.error),
        });
    }
    Ok(r.value)
}

/// Truncated integrals ∫_0^{U·10^j} g, j = 1..6, documenting a divergence.
pub(crate) fn divergence_report<T: Real, G: Fn(T) -> T>(
    condition: &str,
    critical: T,
    margin: T,
    g: G,
    split: T,
    to_outer: impl Fn(T) -> T,
) -> Error {
    let split = split.max(T::one());
    let tol = lit::<T>(1e-10);
    let mut acc = tanh_sinh_with_distances(|_, dl, _| g(dl), T::zero(), split, tol).value;
    let mut lo = split;
    let mut partial = Vec::new();
    for _ in 0..6 {
        let hi = lo * lit(10.0);
        acc += gauss_legendre_adaptive(|x: T| g(x.exp()) * x.exp(), lo.ln(), hi.ln(), tol).value;
        partial.push((to_f64(to_outer(hi)), to_f64(acc)));
        lo = hi;
    }
    Error::Divergent(DivergenceReport {
        condition: condition.to_string(),
        critical_exponent: to_f64(critical),
        margin: to_f64(margin),
        partial_integrals: partial,
    })
}

/// Riemann–Liouville integral (I^α_± f)(t).
pub fn rl_integral<T: Real>(
    f: &Profile<T>,
    alpha: &FractionalOrder<T>,
    sign: Sign,
    t: T,
) -> Result<T> {
    if f.is_zero() {
        return Ok(T::zero());
    }
    let a = alpha.alpha;
    let norm = T::one() / gamma(a);
    let tol = inner_tol::<T>();
    match sign {
        Sign::Plus => {
            if !(t >= T::zero()) {
                return Err(Error::invalid("I_+ needs t ≥ 0"));
            }
            if t == T::zero() {
                return Ok(T::zero());
            }
            let r = tanh_sinh_with_distances(
                |s, _, dr| f.eval(s) * dr.powf(a - T::one()),
                T::zero(),
                t,
                tol,
            );
            Ok(accept(r, "Riemann–Liouville I_+")? * norm)
        }
        Sign::Minus => {
            let g = |u: T| f.eval(t + u) * u.powf(a - T::one());
            let moment = f.decay().moment(a - T::one());
            if !moment.converges {
                return Err(divergence_report(
                    "∫_1^∞ |f(s)| s^{α−1} ds < ∞",
                    moment.critical,
                    moment.margin,
                    g,
                    t.max(T::one()),
                    |u| t + u,
                ));
            }
            let tail = UTail::of(f.decay(), T::zero(), a, |r| r - t, false);
            let r = half_line(g, tail, t.max(T::one()), tol)?;
            Ok(accept(r, "Riemann–Liouville I_-")? * norm)
        }
    }
}

/// Modified Erdélyi–Kober integral (I^α_{±,2} f)(t).
pub fn ek_integral<T: Real>(
    f: &Profile<T>,
    alpha: &FractionalOrder<T>,
    sign: Sign,
    t: T,
) -> Result<T> {
    match sign {
        Sign::Minus => ek_minus_weighted(f, alpha.alpha, T::zero(), t),
        Sign::Plus => {
            if f.is_zero() {
                return Ok(T::zero());
            }
            if !(t >= T::zero()) {
                return Err(Error::invalid("I_{+,2} needs t ≥ 0"));
            }
            if t == T::zero() {
                return Ok(T::zero());
            }
            let a = alpha.alpha;
            let r = tanh_sinh_with_distances(
                |s, _, dr| f.eval(s) * s * (dr * (t + s)).powf(a - T::one()),
                T::zero(),
                t,
                inner_tol(),
            );
            Ok(accept(r, "Erdélyi–Kober I_{+,2}")? * lit(2.0) / gamma(a))
        }
    }
}

/// (1/Γ(β)) ∫_0^∞ φ(√(t²+u)) (t²+u)^c u^{β−1} du, i.e. I^β_{−,2}[s^{2c} φ](t)
/// with the power fused into the kernel.
pub fn ek_minus_weighted<T: Real>(phi: &Profile<T>, beta: T, c: T, t: T) -> Result<T> {
    if phi.is_zero() {
        return Ok(T::zero());
    }
    if !(beta > T::zero()) || !(t >= T::zero()) {
        return Err(Error::invalid("I_{-,2} needs β > 0 and t ≥ 0"));
    }
    let t2 = t * t;
    let g = |u: T| {
        let w = t2 + u;
        let v = phi.eval(w.sqrt());
        if v == T::zero() {
            return T::zero();
        }
        v * w.powf(c) * u.powf(beta - T::one())
    };
    let scaled = phi.decay().times_power(c + c);
    let moment = scaled.moment(beta + beta - T::one());
    if !moment.converges {
        return Err(divergence_report(
            "∫_1^∞ |f(s)| s^{2α−1} ds < ∞",
            moment.critical,
            moment.margin,
            g,
            t2.max(T::one()),
            |u| (t2 + u).sqrt(),
        ));
    }
    if t == T::zero() && !(c + beta > T::zero()) {
        return Err(Error::invalid(
            "weighted I_{-,2} at t = 0 has a non-integrable kernel",
        ));
    }
    let tail = UTail::of(phi.decay(), c + c, beta, |r| r * r - t2, true);
    let r = half_line(g, tail, t2.max(T::one()), inner_tol())?;
    Ok(accept(r, "Erdélyi–Kober I_{-,2}")? / gamma(beta))
}
