//! Experiment configuration: a sectioned key = value (TOML) document.
//!
//! ```toml
//! [experiment]
//! name = "euclid_2_1_shifted"
//! space = "euclidean"
//! n = 2
//! k = 1
//! seed = 7
//!
//! [phantom]
//! kind = "shifted_gaussian"
//! a = [0.3, -0.2]
//!
//! [method]
//! kind = "mean_value"
//! variants = ["usual_derivative"]
//!
//! [grid]
//! points = [[0.0, 0.0]]
//! random = { count = 20, radius = 1.0 }
//!
//! [tolerances]
//! rel_err = 1e-3
//!
//! [output]
//! dir = "out"
//! plot_data = true
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use frh::fraccalc::DerivativeVariant;
use frh::geometry::{Curvature, SpaceDescriptor};
use frh::inversion::SphereFormula;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceKind {
    Euclidean,
    Hyperbolic,
    Spherical,
}

impl SpaceKind {
    pub fn curvature(self) -> Curvature {
        match self {
            SpaceKind::Euclidean => Curvature::Euclidean,
            SpaceKind::Hyperbolic => Curvature::Hyperbolic,
            SpaceKind::Spherical => Curvature::Spherical,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::Euclidean => "euclidean",
            SpaceKind::Hyperbolic => "hyperbolic",
            SpaceKind::Spherical => "spherical",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub name: String,
    pub space: SpaceKind,
    pub n: usize,
    pub k: usize,
    /// Seed for the random evaluation points, at most i64::MAX.
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CounterexampleKind {
    EuclidF2,
    HyperF1,
    HyperF2,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PhantomSpec {
    RadialGaussian,
    ShiftedGaussian {
        a: Vec<f64>,
    },
    ZonalPower {
        mu: f64,
    },
    ZonalGaussian,
    Constant {
        #[serde(default = "one")]
        value: f64,
    },
    /// 1 + c·(y·e)² on the sphere.
    SphereQuadratic {
        e: Vec<f64>,
        c: f64,
    },
    Counterexample {
        which: CounterexampleKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        delta: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shift: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mu: Option<f64>,
    },
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MethodSpec {
    /// Mean-value route with the named left-inverse realizations.
    MeanValue { variants: Vec<String> },
    /// Mean-value route on Sⁿ with the named inversion formulas.
    SphereFormula { formulas: Vec<String> },
    /// k-th derivative of the weighted shifted dual at zero.
    Helgason {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        step: Option<f64>,
    },
    /// sgn/log kernel operators on hyperplanes of ℝⁿ.
    Mader {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        step: Option<f64>,
    },
    /// Exploratory mean-value run with admissibility judged on L^p
    /// membership instead of pointwise decay.
    LpDirect { p: f64, variants: Vec<String> },
}

impl MethodSpec {
    pub fn family(&self) -> MethodFamily {
        match self {
            MethodSpec::MeanValue { .. } | MethodSpec::LpDirect { .. } => MethodFamily::MeanValue,
            MethodSpec::SphereFormula { .. } => MethodFamily::SphereFormula,
            MethodSpec::Helgason { .. } => MethodFamily::Helgason,
            MethodSpec::Mader { .. } => MethodFamily::Mader,
        }
    }

    /// Plain realizations named by this method, in configured order.
    pub fn variants(&self) -> Result<Vec<DerivativeVariant>, CliError> {
        let names: &[String] = match self {
            MethodSpec::MeanValue { variants } | MethodSpec::LpDirect { variants, .. } => variants,
            MethodSpec::SphereFormula { formulas } => {
                return formulas
                    .iter()
                    .map(|f| {
                        SphereFormula::from_name(f)
                            .map(variant_for_formula)
                            .ok_or_else(|| {
                                CliError::Config(format!("unknown sphere formula `{f}`"))
                            })
                    })
                    .collect()
            }
            _ => return Ok(Vec::new()),
        };
        names
            .iter()
            .map(|v| {
                DerivativeVariant::from_name(v)
                    .ok_or_else(|| CliError::Config(format!("unknown derivative variant `{v}`")))
            })
            .collect()
    }
}

/// The mean-value variant that selects a given sphere formula.
pub fn variant_for_formula(f: SphereFormula) -> DerivativeVariant {
    match f {
        SphereFormula::EvenK => DerivativeVariant::IntegerD,
        SphereFormula::WeightedD => DerivativeVariant::WeightedComposition,
        SphereFormula::UsualDerivative => DerivativeVariant::UsualDerivative,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MethodFamily {
    MeanValue,
    SphereFormula,
    Helgason,
    Mader,
}

impl MethodFamily {
    pub fn name(self) -> &'static str {
        match self {
            MethodFamily::MeanValue => "mean_value",
            MethodFamily::SphereFormula => "sphere_formula",
            MethodFamily::Helgason => "helgason",
            MethodFamily::Mader => "mader",
        }
    }
}

/// Seeded uniform sample in the ball of the given radius (spatial
/// coordinates on ℝⁿ and ℍⁿ) or on the whole sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomGrid {
    pub count: usize,
    #[serde(default = "one")]
    pub radius: f64,
}

/// Evaluation points: explicit points first, then the random sample.
///
/// Points are given in spatial coordinates: n numbers on ℝⁿ and ℍⁿ (the
/// hyperboloid coordinate is filled in), n + 1 numbers on Sⁿ (normalized).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    #[serde(default)]
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random: Option<RandomGrid>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Bound on the maximum relative error over the table.
    #[serde(default = "default_rel_err")]
    pub rel_err: f64,
}

fn default_rel_err() -> f64 {
    1e-3
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rel_err: default_rel_err(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_dir")]
    pub dir: PathBuf,
    /// Also write (r, recovered mean) pairs for every point.
    #[serde(default)]
    pub plot_data: bool,
}

fn default_dir() -> PathBuf {
    PathBuf::from("out")
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            dir: default_dir(),
            plot_data: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentSection,
    pub phantom: PhantomSpec,
    pub method: MethodSpec,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub output: OutputSection,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String, CliError> {
        self.validate()?;
        toml::to_string(self).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn space(&self) -> Result<SpaceDescriptor, CliError> {
        let e = &self.experiment;
        SpaceDescriptor::new(e.space.curvature(), e.n, e.k)
            .map_err(|err| CliError::Config(err.to_string()))
    }

    /// Checks that do not need any numerics: the space, the supported
    /// matrix, point dimensions and method names.
    pub fn validate(&self) -> Result<(), CliError> {
        let space = self.space()?;
        crate::matrix::check_supported(&space, self.method.family())?;
        self.method.variants()?;
        // TOML integers are signed 64-bit
        if self.experiment.seed > i64::MAX as u64 {
            return Err(CliError::Config(format!(
                "seed must be at most {}",
                i64::MAX
            )));
        }
        if !(self.tolerances.rel_err > 0.0) {
            return Err(CliError::Config(
                "tolerances.rel_err must be positive".into(),
            ));
        }
        let want = match self.experiment.space {
            SpaceKind::Spherical => self.experiment.n + 1,
            _ => self.experiment.n,
        };
        for p in &self.grid.points {
            if p.len() != want || p.iter().any(|v| !v.is_finite()) {
                return Err(CliError::Config(format!(
                    "grid point {p:?} needs {want} finite coordinates on {space}"
                )));
            }
        }
        if let MethodSpec::LpDirect { p, .. } = self.method {
            if !(p >= 1.0) {
                return Err(CliError::Config("lp_direct needs p ≥ 1".into()));
            }
        }
        Ok(())
    }
}
