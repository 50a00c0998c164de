//! Quadrature rules.
//!
//! * Gauss–Legendre, fixed and adaptive, for smooth integrands.
//! * tanh-sinh on finite intervals and exp-sinh on half lines. Both cluster
//!   nodes double-exponentially at the endpoints, which makes them accurate
//!   for algebraic and logarithmic endpoint singularities. Integrands receive
//!   the distance to the endpoints computed without cancellation.
//! * [`integrate_singular`] removes a declared endpoint power singularity by a
//!   power substitution before applying Gauss–Legendre.

use super::{lit, Real};
use crate::fraccalc::Decay;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: T,
    pub converged: bool,
    pub evaluations: usize,
}

impl<T: Real> QuadResult<T> {
    fn zero() -> Self {
        QuadResult {
            value: T::zero(),
            error: T::zero(),
            converged: true,
            evaluations: 0,
        }
    }

    fn combine(self, other: Self) -> Self {
        QuadResult {
            value: self.value + other.value,
            error: self.error + other.error,
            converged: self.converged && other.converged,
            evaluations: self.evaluations + other.evaluations,
        }
    }

    fn scale(self, c: T) -> Self {
        QuadResult {
            value: self.value * c,
            error: self.error * c.abs(),
            ..self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    EndpointSingularPower,
    SmoothAdaptive,
}

/// Which endpoint carries the declared power singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Lower,
    Upper,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec<T> {
    pub rule_kind: RuleKind,
    /// Exponent β of the factor (b−s)^β or (s−a)^β; must exceed −1.
    pub singular_exponent: T,
    pub endpoint: Endpoint,
    /// Gauss–Legendre order used on each panel.
    pub node_count: usize,
    pub rel_tol: T,
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        QuadratureSpec {
            rule_kind: RuleKind::SmoothAdaptive,
            singular_exponent: T::zero(),
            endpoint: Endpoint::Both,
            node_count: 20,
            rel_tol: lit(1e-8),
        }
    }
}

impl<T: Real> QuadratureSpec<T> {
    pub fn singular(exponent: T, endpoint: Endpoint) -> Self {
        QuadratureSpec {
            rule_kind: RuleKind::EndpointSingularPower,
            singular_exponent: exponent,
            endpoint,
            ..Self::default()
        }
    }

    pub fn with_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.singular_exponent > -T::one()) {
            return Err(Error::invalid(format!(
                "singular exponent {} must exceed -1",
                self.singular_exponent
            )));
        }
        if !(self.rel_tol > T::zero()) {
            return Err(Error::invalid("rel_tol must be positive"));
        }
        if self.node_count < 2 {
            return Err(Error::invalid("node_count must be at least 2"));
        }
        Ok(())
    }
}

/// Truncation data for a half-line integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailSpec<T> {
    pub decay: Decay<T>,
    pub truncation_radius: T,
    /// Declared bound on |∫_R^∞ f|; `0` means "not declared".
    pub tail_bound: T,
}

impl<T: Real> TailSpec<T> {
    pub fn new(decay: Decay<T>, truncation_radius: T) -> Self {
        TailSpec {
            decay,
            truncation_radius,
            tail_bound: T::zero(),
        }
    }

    pub fn with_bound(mut self, tail_bound: T) -> Self {
        self.tail_bound = tail_bound;
        self
    }

    /// Picks a truncation radius from the decay class so that the analytic
    /// tail estimate drops below `rel_tol` times the partial integral, and
    /// records that estimate (with a safety factor) as the tail bound.
    pub fn choose<F: Fn(T) -> T>(decay: Decay<T>, f: F, a: T, rel_tol: T) -> Self {
        let mut radius = a.abs() + T::one();
        let mut estimate = T::zero();
        for _ in 0..60 {
            let partial = gauss_legendre_adaptive(&f, a, radius, lit(1e-10))
                .value
                .abs();
            estimate = decay.tail_estimate(f(radius).abs(), radius);
            if estimate <= rel_tol * partial.max(lit(1e-300)) {
                break;
            }
            radius *= lit(2.0);
        }
        TailSpec {
            decay,
            truncation_radius: radius,
            tail_bound: estimate * lit(4.0),
        }
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p1 = x;
                p0 = 1.0;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = lit(-x);
        nodes[n - 1 - i] = lit(x);
        weights[i] = lit(w);
        weights[n - 1 - i] = lit(w);
    }
    (nodes, weights)
}

struct GlRule<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GlRule<T> {
    fn new(n: usize) -> Self {
        let (nodes, weights) = gauss_legendre(n);
        GlRule { nodes, weights }
    }

    fn apply<F: FnMut(T) -> T>(&self, f: &mut F, a: T, b: T) -> T {
        let half = (b - a) / lit(2.0);
        let mid = (a + b) / lit(2.0);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<T>()
            * half
    }
}

/// Adaptive Gauss–Legendre (20-point panels, bisection on disagreement).
pub fn gauss_legendre_adaptive<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    rel_tol: T,
) -> QuadResult<T> {
    adaptive_gl_with(GlRule::new(20), f, a, b, rel_tol)
}

fn adaptive_gl_with<T: Real, F: FnMut(T) -> T>(
    rule: GlRule<T>,
    mut f: F,
    a: T,
    b: T,
    rel_tol: T,
) -> QuadResult<T> {
    if a == b {
        return QuadResult::zero();
    }
    let n = rule.nodes.len();
    let whole = rule.apply(&mut f, a, b);
    let mut evaluations = n;
    let mut stack = vec![(a, b, whole, 0usize)];
    let mut total = T::zero();
    let mut error = T::zero();
    let mut converged = true;
    // absolute floor relative to the first estimate
    let scale = whole.abs().max(lit(1e-300));
    while let Some((lo, hi, est, depth)) = stack.pop() {
        let mid = (lo + hi) / lit(2.0);
        let left = rule.apply(&mut f, lo, mid);
        let right = rule.apply(&mut f, mid, hi);
        evaluations += 2 * n;
        let refined = left + right;
        let diff = (refined - est).abs();
        let width_share = ((hi - lo) / (b - a)).abs();
        if diff <= rel_tol * scale * width_share.max(lit(1e-3))
            || diff <= T::epsilon() * refined.abs()
        {
            total += refined;
            error += diff;
        } else if depth >= 40 || evaluations > 2_000_000 {
            total += refined;
            error += diff;
            converged = false;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    QuadResult {
        value: total,
        error,
        converged,
        evaluations,
    }
}

/// tanh-sinh quadrature on [a, b] for an integrand of `x` alone.
pub fn tanh_sinh<T: Real, F: FnMut(T) -> T>(mut f: F, a: T, b: T, rel_tol: T) -> QuadResult<T> {
    tanh_sinh_with_distances(|x, _, _| f(x), a, b, rel_tol)
}

/// tanh-sinh quadrature where the integrand also receives `x − a` and
/// `b − x`, computed without cancellation near the endpoints.
pub fn tanh_sinh_with_distances<T: Real, F: FnMut(T, T, T) -> T>(
    mut f: F,
    a: T,
    b: T,
    rel_tol: T,
) -> QuadResult<T> {
    if a == b {
        return QuadResult::zero();
    }
    if b < a {
        return tanh_sinh_ordered(&mut |x, dl, dr| f(x, dr, dl), b, a, rel_tol).scale(-T::one());
    }
    tanh_sinh_ordered(&mut f, a, b, rel_tol)
}

fn tanh_sinh_ordered<T: Real>(
    f: &mut dyn FnMut(T, T, T) -> T,
    a: T,
    b: T,
    rel_tol: T,
) -> QuadResult<T> {
    let half = (b - a) / lit(2.0);
    let pi_2 = T::FRAC_PI_2();
    let big = -(T::min_positive_value().ln());
    let t_limit = (big / T::PI()).asinh();
    let mut term = |t: T| -> T {
        let u = pi_2 * t.abs().sinh();
        let e = (-(u + u)).exp();
        let comp = lit::<T>(2.0) * e / (T::one() + e);
        let w = half * pi_2 * t.cosh() * lit::<T>(4.0) * e / ((T::one() + e) * (T::one() + e));
        if w == T::zero() || comp == T::zero() {
            return T::zero();
        }
        let near = half * comp;
        let far = (half + half) - near;
        let v = if t >= T::zero() {
            f(b - near, far, near)
        } else {
            f(a + near, near, far)
        };
        if v.is_finite() {
            w * v
        } else {
            T::zero()
        }
    };
    double_exponential_sum(&mut term, -t_limit, t_limit, rel_tol)
}

/// exp-sinh quadrature on [a, ∞); the integrand receives `x` and `x − a`.
pub fn exp_sinh<T: Real, F: FnMut(T, T) -> T>(mut f: F, a: T, rel_tol: T) -> QuadResult<T> {
    let pi_2 = T::FRAC_PI_2();
    let big = T::max_value().ln().min(-(T::min_positive_value().ln())) * lit(0.95);
    let t_limit = (big / pi_2).asinh();
    let mut term = |t: T| -> T {
        let d = (pi_2 * t.sinh()).exp();
        let w = pi_2 * t.cosh() * d;
        if d == T::zero() || !w.is_finite() {
            return T::zero();
        }
        let v = f(a + d, d);
        let r = w * v;
        if r.is_finite() {
            r
        } else {
            T::zero()
        }
    };
    double_exponential_sum(&mut term, -t_limit, t_limit, rel_tol)
}

/// Trapezoid sums of a double-exponentially decaying summand on [lo, hi],
/// halving the step until successive levels agree.
fn double_exponential_sum<T: Real, F: FnMut(T) -> T>(
    term: &mut F,
    lo: T,
    hi: T,
    rel_tol: T,
) -> QuadResult<T> {
    // coarse scan with unit-ish step to trim the range where terms are negligible
    let coarse = lit::<T>(0.5);
    let n_lo = (lo / coarse).ceil().to_i64().unwrap_or(0);
    let n_hi = (hi / coarse).floor().to_i64().unwrap_or(0);
    let mut values = Vec::with_capacity((n_hi - n_lo + 1) as usize);
    let mut evaluations = 0usize;
    for k in n_lo..=n_hi {
        values.push(term(lit::<T>(k as f64) * coarse));
        evaluations += 1;
    }
    let peak = values.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if peak == T::zero() {
        return QuadResult {
            value: T::zero(),
            error: T::zero(),
            converged: true,
            evaluations,
        };
    }
    let negligible = peak * T::epsilon() * lit(1e-6);
    let first = values
        .iter()
        .position(|v| v.abs() > negligible)
        .unwrap_or(0);
    let last = values
        .iter()
        .rposition(|v| v.abs() > negligible)
        .unwrap_or(values.len() - 1);
    let t_lo = (lit::<T>((n_lo + first as i64) as f64) * coarse - coarse).max(lo);
    let t_hi = (lit::<T>((n_lo + last as i64) as f64) * coarse + coarse).min(hi);

    let mut h = coarse;
    let mut sum: T = values[first..=last].iter().copied().sum();
    // include the trimmed boundary points on the coarse grid
    let edge_lo = lit::<T>((n_lo + first as i64 - 1) as f64) * coarse;
    let edge_hi = lit::<T>((n_lo + last as i64 + 1) as f64) * coarse;
    if edge_lo >= t_lo {
        sum += term(edge_lo);
        evaluations += 1;
    }
    if edge_hi <= t_hi {
        sum += term(edge_hi);
        evaluations += 1;
    }
    let mut estimate = sum * h;
    let mut error = estimate.abs();
    let mut converged = false;
    for level in 1..=12 {
        h /= lit(2.0);
        // new nodes: odd multiples of h inside [t_lo, t_hi]
        let k_lo = (t_lo / h).ceil().to_i64().unwrap_or(0);
        let k_hi = (t_hi / h).floor().to_i64().unwrap_or(0);
        let mut added = T::zero();
        let mut k = if k_lo % 2 == 0 { k_lo + 1 } else { k_lo };
        while k <= k_hi {
            added += term(lit::<T>(k as f64) * h);
            evaluations += 1;
            k += 2;
        }
        sum += added;
        let next = sum * h;
        error = (next - estimate).abs();
        estimate = next;
        if level >= 3 && (error <= rel_tol * estimate.abs() || error <= T::min_positive_value()) {
            converged = true;
            break;
        }
    }
    QuadResult {
        value: estimate,
        error,
        converged,
        evaluations,
    }
}

/// ∫_a^b f for integrands carrying at most the declared endpoint power
/// singularity.
pub fn integrate_singular<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    spec: &QuadratureSpec<T>,
) -> Result<QuadResult<T>> {
    spec.validate()?;
    if !(a < b) {
        return Err(Error::invalid(format!(
            "integrate_singular requires a < b, got [{a}, {b}]"
        )));
    }
    let rule = || GlRule::new(spec.node_count);
    if spec.rule_kind == RuleKind::SmoothAdaptive {
        return Ok(adaptive_gl_with(rule(), &f, a, b, spec.rel_tol));
    }
    let q = T::one() / (T::one() + spec.singular_exponent);
    // s = end ∓ width·v^q turns (distance)^β ds into a bounded multiple of dv
    let toward = |end: T, width: T, dir: T| {
        let f = &f;
        move |v: T| {
            if v <= T::zero() {
                return T::zero();
            }
            let s = end + dir * width * v.powf(q);
            f(s) * width * q * v.powf(q - T::one())
        }
    };
    let res = match spec.endpoint {
        Endpoint::Upper => adaptive_gl_with(
            rule(),
            toward(b, b - a, -T::one()),
            T::zero(),
            T::one(),
            spec.rel_tol,
        ),
        Endpoint::Lower => adaptive_gl_with(
            rule(),
            toward(a, b - a, T::one()),
            T::zero(),
            T::one(),
            spec.rel_tol,
        ),
        Endpoint::Both => {
            let mid = (a + b) / lit(2.0);
            let w = mid - a;
            adaptive_gl_with(
                rule(),
                toward(a, w, T::one()),
                T::zero(),
                T::one(),
                spec.rel_tol,
            )
            .combine(adaptive_gl_with(
                rule(),
                toward(b, w, -T::one()),
                T::zero(),
                T::one(),
                spec.rel_tol,
            ))
        }
    };
    Ok(res)
}

/// ∫_a^∞ f: quadrature on [a, R] plus a decay-adapted evaluation of the
/// remainder beyond the truncation radius R.
pub fn integrate_tail<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    tail: &TailSpec<T>,
    spec: &QuadratureSpec<T>,
) -> Result<QuadResult<T>> {
    spec.validate()?;
    let radius = tail.truncation_radius.max(a);
    let head = if radius > a {
        integrate_singular(&f, a, radius, spec)?
    } else {
        QuadResult::zero()
    };
    let rest = remainder(&f, radius, &tail.decay, spec.rel_tol)?;
    if tail.tail_bound > T::zero() {
        let slack = tail.tail_bound * lit(1e-6) + head.value.abs() * spec.rel_tol;
        if rest.value.abs() > tail.tail_bound + slack {
            return Err(Error::InconsistentDecay {
                declared: super::to_f64(tail.tail_bound),
                observed: super::to_f64(rest.value.abs()),
            });
        }
    }
    Ok(head.combine(rest))
}

/// ∫_R^∞ f under the declared decay class.
pub(crate) fn remainder<T: Real, F: Fn(T) -> T>(
    f: F,
    radius: T,
    decay: &Decay<T>,
    rel_tol: T,
) -> Result<QuadResult<T>> {
    match *decay {
        Decay::Compact { radius: support } => {
            if support <= radius {
                Ok(QuadResult::zero())
            } else {
                Ok(tanh_sinh(&f, radius, support, rel_tol))
            }
        }
        Decay::Power { mu } | Decay::PowerLog { mu, .. } => {
            if !(mu > T::one()) {
                return Err(Error::invalid(format!(
                    "half-line integral of an s^-{mu} tail does not converge"
                )));
            }
            Ok(power_tail(f, radius.max(lit(1e-300)), mu, rel_tol))
        }
        Decay::Gaussian | Decay::Exponential { .. } => Ok(exp_sinh(|s, _| f(s), radius, rel_tol)),
    }
}

/// ∫_R^∞ f for f ~ s^{-p}: the substitution s = R v^{-1/(p-1)} maps the tail
/// onto (0, 1] with a bounded integrand.
pub(crate) fn power_tail<T: Real, F: Fn(T) -> T>(
    f: F,
    radius: T,
    p: T,
    rel_tol: T,
) -> QuadResult<T> {
    let e = T::one() / (p - T::one());
    tanh_sinh_with_distances(
        |v, dv, _| {
            let v = dv.max(v);
            let s = radius * v.powf(-e);
            if !s.is_finite() {
                return T::zero();
            }
            f(s) * radius * e * v.powf(-e - T::one())
        },
        T::zero(),
        T::one(),
        rel_tol,
    )
}
