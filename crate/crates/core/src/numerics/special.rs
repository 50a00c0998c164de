use super::{lit, Real};
use crate::{Error, Result};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos<T: Real>(x: T) -> T {
    // Γ(x) for x ≥ 1/2
    let x = x - T::one();
    let mut acc = lit::<T>(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += lit::<T>(c) / (x + lit(i as f64));
    }
    let t = x + lit(LANCZOS_G + 0.5);
    (T::PI() * lit(2.0)).sqrt() * t.powf(x + lit(0.5)) * (-t).exp() * acc
}

/// Gamma function for positive arguments.
pub fn gamma_fn<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(Error::invalid(format!(
            "gamma_fn requires a positive finite argument, got {x}"
        )));
    }
    if x == x.round() && x <= lit(30.0) {
        return Ok(factorial::<T>(x.to_usize().unwrap_or(1) - 1));
    }
    if x < lit(0.5) {
        // reflection keeps the Lanczos sum in its accurate range
        let pi = T::PI();
        return Ok(pi / ((pi * x).sin() * lanczos(T::one() - x)));
    }
    Ok(lanczos(x))
}

/// Γ for arguments known to be positive; panics otherwise.
pub(crate) fn gamma<T: Real>(x: T) -> T {
    gamma_fn(x).expect("gamma of positive argument")
}

/// Area σ_{d-1} = 2π^{d/2}/Γ(d/2) of the unit sphere S^{d-1} ⊂ ℝ^d.
pub fn surface_area<T: Real>(d: usize) -> Result<T> {
    if d == 0 {
        return Err(Error::invalid("surface_area requires d >= 1"));
    }
    let half = lit::<T>(d as f64) / lit(2.0);
    Ok(lit::<T>(2.0) * T::PI().powf(half) / gamma(half))
}

pub fn factorial<T: Real>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * lit(i as f64))
}

pub fn binomial<T: Real>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(T::one(), |acc, i| {
        acc * lit((n - i) as f64) / lit((i + 1) as f64)
    })
}
