//! The (space, n, k, method) combinations the runner accepts.

use std::fmt;

use frh::geometry::{Curvature, SpaceDescriptor};

use crate::config::MethodFamily;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixEntry {
    pub curvature: Curvature,
    pub n: usize,
    pub k: usize,
    pub method: MethodFamily,
}

impl fmt::Display for MatrixEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<11} n={} k={}  {}",
            self.curvature.name(),
            self.n,
            self.k,
            self.method.name()
        )
    }
}

const fn entry(curvature: Curvature, n: usize, k: usize, method: MethodFamily) -> MatrixEntry {
    MatrixEntry {
        curvature,
        n,
        k,
        method,
    }
}

use Curvature::{Euclidean as E, Hyperbolic as H, Spherical as S};
use MethodFamily::{Helgason, Mader, MeanValue, SphereFormula};

pub const SUPPORTED: &[MatrixEntry] = &[
    entry(E, 2, 1, MeanValue),
    entry(E, 3, 1, MeanValue),
    entry(E, 3, 2, MeanValue),
    entry(H, 2, 1, MeanValue),
    entry(H, 3, 2, MeanValue),
    entry(S, 2, 1, SphereFormula),
    entry(S, 3, 2, SphereFormula),
    entry(E, 3, 2, Helgason),
    entry(H, 3, 2, Helgason),
    entry(S, 3, 2, Helgason),
    entry(E, 2, 1, Mader),
    entry(E, 3, 2, Mader),
];

pub fn supported_matrix() -> &'static [MatrixEntry] {
    SUPPORTED
}

pub fn render_matrix() -> String {
    let mut s = String::from("space       dims     method\n");
    for e in SUPPORTED {
        s.push_str(&format!("{e}\n"));
    }
    s
}

pub fn check_supported(space: &SpaceDescriptor, method: MethodFamily) -> Result<(), CliError> {
    let hit = SUPPORTED.iter().any(|e| {
        e.curvature == space.curvature && e.n == space.n && e.k == space.k && e.method == method
    });
    if hit {
        Ok(())
    } else {
        Err(CliError::Unsupported(format!(
            "{} on {space} is not supported; supported combinations:\n{}",
            method.name(),
            render_matrix()
        )))
    }
}
