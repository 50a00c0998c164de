//! Constant-curvature spaces at desk dimensions: points, charts of the
//! k-geodesic families, distance functions and mean-value operators.
//!
//! Models: ℝⁿ with Euclidean coordinates; ℍⁿ as the upper sheet
//! [x, x] = 1, x_{n+1} > 0 of the hyperboloid in ℝ^{n+1}; Sⁿ as the unit
//! sphere in ℝ^{n+1}. The base point x₀ is the origin of ℝⁿ, and e_{n+1}
//! on ℍⁿ and Sⁿ.

mod means;
mod model;

pub use means::{
    dual_transform, shifted_dual_transform, shifted_dual_transform_with, spherical_mean,
    spherical_mean_with, tilde_mean,
};
pub use model::{boost, complement_basis, dot, minkowski, norm, AngularRule};

use crate::fraccalc::{Decay, Profile};
use crate::numerics::{lit, Real};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Curvature {
    Euclidean,
    Hyperbolic,
    Spherical,
}

impl Curvature {
    pub fn name(&self) -> &'static str {
        match self {
            Curvature::Euclidean => "euclidean",
            Curvature::Hyperbolic => "hyperbolic",
            Curvature::Spherical => "spherical",
        }
    }
}

/// Ambient space X and the dimension k of the geodesic submanifolds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpaceDescriptor {
    pub curvature: Curvature,
    pub n: usize,
    pub k: usize,
}

impl SpaceDescriptor {
    pub fn new(curvature: Curvature, n: usize, k: usize) -> Result<Self> {
        if n < 2 || k < 1 || k >= n {
            return Err(Error::invalid(format!(
                "need n ≥ 2 and 1 ≤ k ≤ n−1, got n={n}, k={k}"
            )));
        }
        Ok(SpaceDescriptor { curvature, n, k })
    }

    pub fn euclidean(n: usize, k: usize) -> Result<Self> {
        Self::new(Curvature::Euclidean, n, k)
    }

    pub fn hyperbolic(n: usize, k: usize) -> Result<Self> {
        Self::new(Curvature::Hyperbolic, n, k)
    }

    pub fn spherical(n: usize, k: usize) -> Result<Self> {
        Self::new(Curvature::Spherical, n, k)
    }

    /// Length of a coordinate vector in the model.
    pub fn model_dim(&self) -> usize {
        match self.curvature {
            Curvature::Euclidean => self.n,
            _ => self.n + 1,
        }
    }

    /// λ_X(r): 1, (1+r²)^{(k−1)/2} or (1−r²)^{(k−1)/2}.
    pub fn weight_lambda<T: Real>(&self, r: T) -> T {
        let e = lit::<T>((self.k as f64 - 1.0) / 2.0);
        match self.curvature {
            Curvature::Euclidean => T::one(),
            Curvature::Hyperbolic => (T::one() + r * r).powf(e),
            Curvature::Spherical => (T::one() - r * r).powf(e),
        }
    }
}

impl std::fmt::Display for SpaceDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} n={} k={}", self.curvature.name(), self.n, self.k)
    }
}

/// A point in the model of its space.
#[derive(Debug, Clone, PartialEq)]
pub struct Point<T> {
    pub coords: Vec<T>,
}

impl<T: Real> Point<T> {
    /// Validates the model constraint to 10⁻¹².
    pub fn new(space: &SpaceDescriptor, coords: Vec<T>) -> Result<Self> {
        if coords.len() != space.model_dim() {
            return Err(Error::invalid(format!(
                "{space}: expected {} coordinates, got {}",
                space.model_dim(),
                coords.len()
            )));
        }
        let tol = lit::<T>(1e-12);
        match space.curvature {
            Curvature::Euclidean => {}
            Curvature::Hyperbolic => {
                let q = minkowski(&coords, &coords);
                if (q - T::one()).abs() > tol || coords[space.n] <= T::zero() {
                    return Err(Error::invalid(
                        "hyperbolic points need [x,x] = 1 and x_{n+1} > 0",
                    ));
                }
            }
            Curvature::Spherical => {
                if (dot(&coords, &coords) - T::one()).abs() > tol {
                    return Err(Error::invalid("spherical points must have unit norm"));
                }
            }
        }
        Ok(Point { coords })
    }

    /// The base point x₀ of the space.
    pub fn origin(space: &SpaceDescriptor) -> Self {
        let mut coords = vec![T::zero(); space.model_dim()];
        if space.curvature != Curvature::Euclidean {
            coords[space.n] = T::one();
        }
        Point { coords }
    }

    /// Hyperboloid point with the given first n coordinates.
    pub fn hyperbolic_from_spatial(spatial: &[T]) -> Self {
        let mut coords = spatial.to_vec();
        coords.push((T::one() + dot(spatial, spatial)).sqrt());
        Point { coords }
    }

    /// Sphere point obtained by normalizing `v`.
    pub fn spherical_from(v: &[T]) -> Self {
        let nv = norm(v);
        Point {
            coords: v.iter().map(|&a| a / nv).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// Charts of the geodesic families.
#[derive(Debug, Clone, PartialEq)]
pub enum GeodesicParam<T> {
    /// Line {y ∈ ℝ² : y·(cos θ, sin θ) = u}, θ ∈ [0, π).
    Line2 { theta: T, u: T },
    /// Plane {y ∈ ℝ³ : y·ω = u}.
    Plane3 { normal: [T; 3], u: T },
    /// Line {offset + t·direction} in ℝ³, offset ⊥ direction.
    Line3 { direction: [T; 3], offset: [T; 3] },
    /// Totally geodesic hypersurface {[y, m] = 0} on ℍⁿ (m spacelike,
    /// [m, m] = −1) or {y·ω = 0} on Sⁿ (|ω| = 1).
    Hyperplane { normal: Vec<T> },
    /// Zonal chart: only the distance parameter to the base point.
    Distance { r: T },
}

impl<T: Real> GeodesicParam<T> {
    /// Line in ℝ² with the angle reduced to [0, π).
    pub fn line2(theta: T, u: T) -> Self {
        let pi = T::PI();
        let mut th = theta % T::TAU();
        if th < T::zero() {
            th += T::TAU();
        }
        if th >= pi {
            GeodesicParam::Line2 {
                theta: th - pi,
                u: -u,
            }
        } else {
            GeodesicParam::Line2 { theta: th, u }
        }
    }
}

/// ρ(x, ξ): d(x, ξ) on ℝⁿ, sinh d(x, ξ) on ℍⁿ, sin d(x, ξ) on Sⁿ.
pub fn distance_function<T: Real>(
    x: &Point<T>,
    geo: &GeodesicParam<T>,
    space: &SpaceDescriptor,
) -> Result<T> {
    if x.dim() != space.model_dim() {
        return Err(Error::invalid("point does not belong to the space"));
    }
    let c = &x.coords;
    let mismatch = || Error::invalid(format!("geodesic chart does not match {space}"));
    match (space.curvature, geo) {
        (Curvature::Euclidean, GeodesicParam::Line2 { theta, u }) if space.n == 2 => {
            Ok((c[0] * theta.cos() + c[1] * theta.sin() - *u).abs())
        }
        (Curvature::Euclidean, GeodesicParam::Plane3 { normal, u }) if space.n == 3 => {
            Ok((dot(c, normal) - *u).abs())
        }
        (Curvature::Euclidean, GeodesicParam::Line3 { direction, offset }) if space.n == 3 => {
            let d: Vec<T> = c.iter().zip(offset).map(|(&a, &b)| a - b).collect();
            let along = dot(&d, direction);
            Ok((dot(&d, &d) - along * along).max(T::zero()).sqrt())
        }
        (Curvature::Hyperbolic, GeodesicParam::Hyperplane { normal })
            if normal.len() == c.len() =>
        {
            Ok(minkowski(c, normal).abs())
        }
        (Curvature::Spherical, GeodesicParam::Hyperplane { normal }) if normal.len() == c.len() => {
            Ok(dot(c, normal).abs())
        }
        (Curvature::Spherical, GeodesicParam::Distance { r }) => {
            Ok((T::one() - *r * *r).max(T::zero()).sqrt())
        }
        (_, GeodesicParam::Distance { r }) => Ok(r.abs()),
        _ => Err(mismatch()),
    }
}

/// The shifted dual transform r ↦ (R*_x φ)(r) at a fixed point, stored as
/// a profile in r.
#[derive(Clone)]
pub struct DualMeanProfile<T: Real> {
    pub x: Point<T>,
    pub values: Profile<T>,
    pub space: SpaceDescriptor,
}

impl<T: Real> std::fmt::Debug for DualMeanProfile<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DualMeanProfile")
            .field("x", &self.x)
            .field("values", &self.values)
            .field("space", &self.space)
            .finish()
    }
}

impl<T: Real> DualMeanProfile<T> {
    pub fn new(x: Point<T>, values: Profile<T>, space: SpaceDescriptor) -> Self {
        DualMeanProfile { x, values, space }
    }

    /// Samples (R*_x φ)(r) adaptively on [0, r_max] (on the sphere [0, 1])
    /// and stores its Chebyshev interpolant; beyond r_max the profile is
    /// taken to vanish.
    pub fn materialize<F>(
        phi: F,
        x: &Point<T>,
        space: &SpaceDescriptor,
        r_max: T,
        rel_tol: T,
    ) -> Result<Self>
    where
        F: Fn(&GeodesicParam<T>) -> T + Sync,
    {
        let r_max = if space.curvature == Curvature::Spherical {
            T::one()
        } else {
            r_max
        };
        let rule = AngularRule::default();
        let eval = |r: T| shifted_dual_transform_with(&phi, x, r, space, &rule).unwrap_or(T::nan());
        // reject bad charts before sampling
        shifted_dual_transform_with(&phi, x, T::zero(), space, &rule)?;
        let fit = crate::numerics::Chebyshev::fit(eval, T::zero(), r_max, rel_tol)?;
        let values = Profile::spectral(fit, Decay::Compact { radius: r_max });
        Ok(DualMeanProfile {
            x: x.clone(),
            values,
            space: *space,
        })
    }

    pub fn weight_lambda(&self, r: T) -> T {
        self.space.weight_lambda(r)
    }

    pub fn eval(&self, r: T) -> T {
        self.values.eval(r)
    }
}
