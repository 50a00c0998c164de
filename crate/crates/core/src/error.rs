use std::fmt;

/// Why a transform or fractional integral is infinite.
///
/// Divergence is part of the normal result surface: the sharp existence
/// theorems say *when* a transform is identically infinite, and the library
/// reports that outcome instead of producing a NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceReport {
    /// Name of the violated moment condition.
    pub condition: String,
    /// Threshold the decay exponent must exceed.
    pub critical_exponent: f64,
    /// Decay exponent minus critical exponent (≤ 0 when divergent).
    pub margin: f64,
    /// `(R, ∫^R)` pairs of truncated integrals; grows without bound.
    pub partial_integrals: Vec<(f64, f64)>,
}

impl DivergenceReport {
    /// True when the truncated integrals keep increasing, i.e. the analytic
    /// verdict is corroborated numerically.
    pub fn numerically_confirmed(&self) -> bool {
        self.partial_integrals.len() >= 2
            && self
                .partial_integrals
                .windows(2)
                .all(|w| w[1].1.abs() > w[0].1.abs())
    }
}

impl fmt::Display for DivergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails (critical exponent {}, margin {})",
            self.condition, self.critical_exponent, self.margin
        )
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("integral diverges: {0}")]
    Divergent(DivergenceReport),
    #[error(
        "numerical failure in {context}: best estimate {best:e}, error estimate {error_estimate:e}"
    )]
    NumericFailure {
        context: String,
        best: f64,
        error_estimate: f64,
    },
    #[error("{variant} is not admissible: {reason}")]
    Inadmissible { variant: String, reason: String },
    #[error(
        "decay metadata inconsistent: declared tail bound {declared:e}, observed tail {observed:e}"
    )]
    InconsistentDecay { declared: f64, observed: f64 },
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn is_divergence(&self) -> bool {
        matches!(self, Error::Divergent(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
