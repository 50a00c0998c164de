//! Experiment runner for the `frh` library: declarative configs in, CSV
//! error tables, existence reports and plot data out.

pub mod config;
pub mod identities;
pub mod matrix;
pub mod output;
pub mod runner;

use std::path::{Path, PathBuf};

use frh::radon::{Sinogram, TransformField};

pub use config::ExperimentConfig;
pub use identities::{run_identity_suite, IdentityReport};
pub use matrix::supported_matrix;
pub use runner::{run_experiment, ErrorRow, ErrorTable, RunOutput, Status};

/// Exit status for a run that completed and met its tolerance.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_TOLERANCE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Config(String),
    Unsupported(String),
    Io(String),
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Unsupported(_) => EXIT_CONFIG,
            CliError::Io(_) | CliError::Numeric(_) => EXIT_NUMERIC,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Unsupported(m) => write!(f, "unsupported: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Numeric(m) => write!(f, "numeric failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Forward transform of the configured phantom on its sinogram grid
/// (lines in ℝ² only).
pub fn build_sinogram(cfg: &ExperimentConfig) -> Result<Sinogram<f64>, CliError> {
    let space = cfg.space()?;
    let ph = runner::build_phantom(cfg, space)?;
    let field = TransformField::sinogram_of(&ph, None, 1e-10).map_err(|e| match e {
        frh::Error::Unsupported(m) | frh::Error::InvalidInput(m) => CliError::Unsupported(m),
        other => CliError::Numeric(other.to_string()),
    })?;
    Ok(field.sinogram().expect("sinogram_of tabulates").clone())
}

/// Writes `<name>.sinogram.txt` (reloadable) and `<name>.sinogram.csv`.
pub fn write_sinogram(
    name: &str,
    sino: &Sinogram<f64>,
    dir: &Path,
) -> Result<Vec<PathBuf>, CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let txt = dir.join(format!("{name}.sinogram.txt"));
    let csv = dir.join(format!("{name}.sinogram.csv"));
    sino.write(&txt).map_err(|e| CliError::Io(e.to_string()))?;
    let body = format!("{}{}", output::version_header(), sino.to_csv());
    std::fs::write(&csv, body).map_err(|e| CliError::Io(format!("{}: {e}", csv.display())))?;
    Ok(vec![txt, csv])
}
