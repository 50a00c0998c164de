use super::model::{boost, complement_basis, dot, AngularRule};
use super::{Curvature, GeodesicParam, Point, SpaceDescriptor};
use crate::numerics::{lit, Real};
use crate::{Error, Result};

fn check_point<T: Real>(x: &Point<T>, space: &SpaceDescriptor) -> Result<()> {
    if x.dim() != space.model_dim() {
        return Err(Error::invalid(format!(
            "{space}: point has {} coordinates, expected {}",
            x.dim(),
            space.model_dim()
        )));
    }
    Ok(())
}

/// Mean of `f` over the geodesic sphere about `x`, using the default
/// angular rule.
///
/// The parameter is the radius r ≥ 0 on ℝⁿ, s = cosh d ≥ 1 on ℍⁿ and
/// s = cos d ∈ [−1, 1] on Sⁿ.
pub fn spherical_mean<T, F>(f: F, x: &Point<T>, param: T, space: &SpaceDescriptor) -> Result<T>
where
    T: Real,
    F: Fn(&[T]) -> T,
{
    spherical_mean_with(f, x, param, space, &AngularRule::default())
}

pub fn spherical_mean_with<T, F>(
    f: F,
    x: &Point<T>,
    param: T,
    space: &SpaceDescriptor,
    rule: &AngularRule,
) -> Result<T>
where
    T: Real,
    F: Fn(&[T]) -> T,
{
    check_point(x, space)?;
    let n = space.n;
    let x = &x.coords;
    let nodes = rule.sphere::<T>(n)?;
    let mut acc = T::zero();
    match space.curvature {
        Curvature::Euclidean => {
            if !(param >= T::zero()) {
                return Err(Error::invalid(format!(
                    "Euclidean mean needs r ≥ 0, got {param}"
                )));
            }
            let mut y = vec![T::zero(); n];
            for (sigma, w) in &nodes {
                for i in 0..n {
                    y[i] = x[i] + param * sigma[i];
                }
                acc += *w * f(&y);
            }
        }
        Curvature::Hyperbolic => {
            if !(param >= T::one()) {
                return Err(Error::invalid(format!(
                    "hyperbolic mean needs s = cosh d ≥ 1, got {param}"
                )));
            }
            let rad = (param * param - T::one()).sqrt();
            let mut v = vec![T::zero(); n + 1];
            v[n] = param;
            for (sigma, w) in &nodes {
                for i in 0..n {
                    v[i] = rad * sigma[i];
                }
                acc += *w * f(&boost(x, &v));
            }
        }
        Curvature::Spherical => {
            if !(param.abs() <= T::one()) {
                return Err(Error::invalid(format!(
                    "spherical mean needs s = cos d ∈ [−1, 1], got {param}"
                )));
            }
            let rad = (T::one() - param * param).max(T::zero()).sqrt();
            let basis = complement_basis(x);
            let mut y = vec![T::zero(); n + 1];
            for (sigma, w) in &nodes {
                for (j, yj) in y.iter_mut().enumerate() {
                    *yj = param * x[j] + rad * (0..n).map(|i| sigma[i] * basis[i][j]).sum::<T>();
                }
                acc += *w * f(&y);
            }
        }
    }
    Ok(acc)
}

/// (M̃_x f)(t) = (1+t²)^{−1/2} (M_x f)(√(1+t²)) on ℍⁿ.
pub fn tilde_mean<T, F>(f: F, x: &Point<T>, t: T, space: &SpaceDescriptor) -> Result<T>
where
    T: Real,
    F: Fn(&[T]) -> T,
{
    if space.curvature != Curvature::Hyperbolic {
        return Err(Error::invalid(
            "the tilde mean is defined on hyperbolic space only",
        ));
    }
    if !(t >= T::zero()) {
        return Err(Error::invalid(format!("tilde mean needs t ≥ 0, got {t}")));
    }
    let s = (T::one() + t * t).sqrt();
    Ok(spherical_mean(f, x, s, space)? / s)
}

/// (R*_x φ)(r) with the default angular rule.
pub fn shifted_dual_transform<T, F>(
    phi: F,
    x: &Point<T>,
    r: T,
    space: &SpaceDescriptor,
) -> Result<T>
where
    T: Real,
    F: Fn(&GeodesicParam<T>) -> T,
{
    shifted_dual_transform_with(phi, x, r, space, &AngularRule::default())
}

/// Plain dual transform: the average of φ over the geodesics through x.
pub fn dual_transform<T, F>(phi: F, x: &Point<T>, space: &SpaceDescriptor) -> Result<T>
where
    T: Real,
    F: Fn(&GeodesicParam<T>) -> T,
{
    let r = if space.curvature == Curvature::Spherical {
        T::one()
    } else {
        T::zero()
    };
    shifted_dual_transform(phi, x, r, space)
}

/// Average of φ over the rotation family of geodesics at distance
/// parameter r from x.
///
/// * ℝ²: lines tangent to the circle of radius r about x.
/// * ℝ³: planes at distance r, or lines at distance r from x.
/// * ℍⁿ (k = n−1): hyperplanes with normal B_x(√(1+r²)σ, r), so that
///   sinh d(x, ξ) = r.
/// * Sⁿ (k = n−1): great spheres with normal √(1−r²)x + rv, v ⊥ x, so that
///   r = cos d(x, ξ); r = 1 is the family through x.
///
/// The quadrature is symmetric under r ↦ −r, so negative r returns the
/// even extension.
pub fn shifted_dual_transform_with<T, F>(
    phi: F,
    x: &Point<T>,
    r: T,
    space: &SpaceDescriptor,
    rule: &AngularRule,
) -> Result<T>
where
    T: Real,
    F: Fn(&GeodesicParam<T>) -> T,
{
    check_point(x, space)?;
    if !r.is_finite() {
        return Err(Error::invalid("shift parameter must be finite"));
    }
    let (n, k) = (space.n, space.k);
    let c = &x.coords;
    let mut acc = T::zero();
    match space.curvature {
        Curvature::Euclidean => match (n, k) {
            (2, 1) => {
                for (nu, w) in rule.sphere::<T>(2)? {
                    let theta = nu[1].atan2(nu[0]);
                    acc += w * phi(&GeodesicParam::line2(theta, dot(c, &nu) + r));
                }
            }
            (3, 2) => {
                for (om, w) in rule.sphere::<T>(3)? {
                    let u = dot(c, &om) + r;
                    acc += w * phi(&GeodesicParam::Plane3 {
                        normal: [om[0], om[1], om[2]],
                        u,
                    });
                }
            }
            (3, 1) => {
                let inner = AngularRule {
                    circle: rule.inner_circle,
                    ..*rule
                }
                .sphere::<T>(2)?;
                for (d, w) in rule.sphere::<T>(3)? {
                    let b = complement_basis(&d);
                    let along = dot(c, &d);
                    let foot: Vec<T> = (0..3).map(|i| c[i] - along * d[i]).collect();
                    let mut sub = T::zero();
                    for (v, wv) in &inner {
                        let off: Vec<T> = (0..3)
                            .map(|i| foot[i] + r * (v[0] * b[0][i] + v[1] * b[1][i]))
                            .collect();
                        sub += *wv
                            * phi(&GeodesicParam::Line3 {
                                direction: [d[0], d[1], d[2]],
                                offset: [off[0], off[1], off[2]],
                            });
                    }
                    acc += w * sub;
                }
            }
            _ => {
                return Err(Error::Unsupported(format!(
                    "{space}: non-radial data only on ℝ² and ℝ³; use the radial transforms"
                )))
            }
        },
        Curvature::Hyperbolic => {
            if k != n - 1 {
                return Err(Error::Unsupported(format!(
                    "{space}: non-zonal data only for hyperplanes"
                )));
            }
            let a = (T::one() + r * r).sqrt();
            let mut v = vec![T::zero(); n + 1];
            v[n] = r;
            for (sigma, w) in rule.sphere::<T>(n)? {
                for i in 0..n {
                    v[i] = a * sigma[i];
                }
                acc += w * phi(&GeodesicParam::Hyperplane {
                    normal: boost(c, &v),
                });
            }
        }
        Curvature::Spherical => {
            if k != n - 1 {
                return Err(Error::Unsupported(format!(
                    "{space}: non-zonal data only for great hyperspheres"
                )));
            }
            if r.abs() > T::one() + lit(1e-14) {
                return Err(Error::invalid(format!(
                    "sphere chart needs r = cos d ∈ [0, 1], got {r}"
                )));
            }
            let r = r.max(-T::one()).min(T::one());
            let a = (T::one() - r * r).max(T::zero()).sqrt();
            let basis = complement_basis(c);
            for (sigma, w) in rule.sphere::<T>(n)? {
                let omega: Vec<T> = (0..=n)
                    .map(|j| a * c[j] + r * (0..n).map(|i| sigma[i] * basis[i][j]).sum::<T>())
                    .collect();
                acc += w * phi(&GeodesicParam::Hyperplane { normal: omega });
            }
        }
    }
    Ok(acc)
}
