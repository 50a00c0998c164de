//! Mean-value (Funk–Radon–Helgason) inversion of totally geodesic Radon
//! transforms on the constant-curvature spaces ℝⁿ, ℍⁿ and Sⁿ.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`] – quadrature for weakly singular kernels, Richardson
//!   extrapolation, special functions and spectral interpolation.
//! * [`fraccalc`] – Riemann–Liouville and modified Erdélyi–Kober fractional
//!   integrals, their existence predicates, composition identities and the
//!   four left-inverse realizations.
//! * [`geometry`] – space descriptors, distance functions, spherical means and
//!   shifted dual transforms.
//! * [`radon`] – forward transforms, existence checks and sinograms.
//! * [`inversion`] – the mean-value reconstruction pipelines.
//! * [`direct_diff`] – direct-differentiation inversions (ordinary `∂_r^k`
//!   derivative of the shifted dual transform, sgn/log kernel operators).
//!
//! All numerical code is generic over a floating point scalar implementing
//! [`Real`]; the `f64` aliases at the crate root are what most callers want.

pub mod direct_diff;
mod error;
pub mod fraccalc;
pub mod geometry;
pub mod inversion;
pub mod numerics;
pub mod phantom;
pub mod radon;

pub use error::{DivergenceReport, Error, Result};
pub use numerics::Real;

/// `f64` instantiations of the generic types.
pub type Profile1D = fraccalc::Profile<f64>;
pub type FractionalOrder = fraccalc::FractionalOrder<f64>;
pub type Decay = fraccalc::Decay<f64>;
pub type LimitEstimate = numerics::LimitEstimate<f64>;
pub type QuadratureSpec = numerics::QuadratureSpec<f64>;
pub type TailSpec = numerics::TailSpec<f64>;
pub type SpaceDescriptor = geometry::SpaceDescriptor;
pub type Point = geometry::Point<f64>;
pub type GeodesicParam = geometry::GeodesicParam<f64>;
pub type DualMeanProfile = geometry::DualMeanProfile<f64>;
pub type TransformField = radon::TransformField<f64>;
pub type Sinogram = radon::Sinogram<f64>;
pub type ExistenceReport = radon::ExistenceReport<f64>;
pub type InversionPlan = inversion::InversionPlan<f64>;
pub type ReconstructionResult = inversion::ReconstructionResult<f64>;
pub type DirectConstants = direct_diff::DirectConstants<f64>;
