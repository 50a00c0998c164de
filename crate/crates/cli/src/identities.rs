//! Built-in matrix of composition identities for the Erdélyi–Kober
//! integrals, evaluated with `verify_composition`.

use std::fmt;

use rayon::prelude::*;

use frh::fraccalc::{verify_composition, Composition, Decay, Profile, Sign};
use frh::Error;

#[derive(Clone)]
pub struct IdentityProfile {
    pub name: &'static str,
    pub profile: Profile<f64>,
}

#[derive(Clone)]
pub struct IdentityCase {
    pub profile: IdentityProfile,
    pub alpha: f64,
    pub beta: f64,
    pub identity: Composition,
}

#[derive(Debug, Clone, PartialEq)]
pub enum IdentityOutcome {
    Discrepancy(f64),
    PreconditionFails(String),
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityRow {
    pub identity: &'static str,
    pub profile: &'static str,
    pub alpha: f64,
    pub beta: f64,
    pub outcome: IdentityOutcome,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct IdentityReport {
    pub rows: Vec<IdentityRow>,
}

impl IdentityReport {
    /// Largest discrepancy per identity, in first-seen order.
    pub fn max_per_identity(&self) -> Vec<(&'static str, f64)> {
        let mut out: Vec<(&'static str, f64)> = Vec::new();
        for row in &self.rows {
            if let IdentityOutcome::Discrepancy(d) = row.outcome {
                match out.iter_mut().find(|(n, _)| *n == row.identity) {
                    Some((_, m)) => *m = m.max(d),
                    None => out.push((row.identity, d)),
                }
            }
        }
        out
    }

    pub fn max_discrepancy(&self) -> f64 {
        self.max_per_identity()
            .into_iter()
            .map(|(_, d)| d)
            .fold(0.0, f64::max)
    }

    pub fn failures(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| matches!(r.outcome, IdentityOutcome::Failed(_)))
            .count()
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let what = match &r.outcome {
                IdentityOutcome::Discrepancy(d) => format!("{d:.3e}"),
                IdentityOutcome::PreconditionFails(why) => format!("precondition fails ({why})"),
                IdentityOutcome::Failed(why) => format!("failed ({why})"),
            };
            writeln!(
                f,
                "{:<16} {:<12} α={:<4} β={:<4} {what}",
                r.identity, r.profile, r.alpha, r.beta
            )?;
        }
        for (name, d) in self.max_per_identity() {
            writeln!(f, "max {name}: {d:.3e}")?;
        }
        Ok(())
    }
}

/// Points at which both sides of each identity are compared.
pub const T_GRID: [f64; 5] = [0.25, 0.5, 1.0, 1.5, 2.0];

pub fn oracle_profiles() -> Vec<IdentityProfile> {
    vec![
        IdentityProfile {
            name: "gaussian",
            profile: Profile::analytic(|s: f64| (-s * s).exp(), Decay::Gaussian),
        },
        IdentityProfile {
            name: "exponential",
            profile: Profile::analytic(|s: f64| (-s).exp(), Decay::Exponential { rate: 1.0 }),
        },
        IdentityProfile {
            name: "rational",
            profile: Profile::analytic(|s: f64| (1.0 + s * s).powi(-4), Decay::Power { mu: 8.0 }),
        },
    ]
}

/// Every identity for α, β ∈ {1/2, 1, 3/2} on the three oracle profiles.
pub fn default_matrix() -> Vec<IdentityCase> {
    let orders = [0.5, 1.0, 1.5];
    let identities = [
        Composition::Semigroup(Sign::Minus),
        Composition::Weighted,
        Composition::EkToRl,
    ];
    let mut cases = Vec::new();
    for profile in oracle_profiles() {
        for identity in identities {
            for alpha in orders {
                for beta in orders {
                    // β does not enter the EK-to-RL identity
                    if identity == Composition::EkToRl && beta != orders[0] {
                        continue;
                    }
                    cases.push(IdentityCase {
                        profile: profile.clone(),
                        alpha,
                        beta,
                        identity,
                    });
                }
            }
        }
    }
    cases
}

/// A slowly decaying profile, (1 + s)^{-2}, for which the upper
/// integrals of total order 1 and above do not exist.
pub fn boundary_divergent_case() -> IdentityCase {
    IdentityCase {
        profile: IdentityProfile {
            name: "slow_power",
            profile: Profile::analytic(|s: f64| (1.0 + s).powi(-2), Decay::Power { mu: 2.0 }),
        },
        alpha: 1.0,
        beta: 1.0,
        identity: Composition::Semigroup(Sign::Minus),
    }
}

pub fn run_identity_suite(matrix: &[IdentityCase]) -> IdentityReport {
    let rows = matrix
        .par_iter()
        .map(|c| {
            let outcome = match verify_composition(
                &c.profile.profile,
                c.alpha,
                c.beta,
                c.identity,
                &T_GRID,
            ) {
                Ok(d) => IdentityOutcome::Discrepancy(d),
                Err(Error::Divergent(rep)) => IdentityOutcome::PreconditionFails(rep.condition),
                Err(e) => IdentityOutcome::Failed(e.to_string()),
            };
            IdentityRow {
                identity: c.identity.name(),
                profile: c.profile.name,
                alpha: c.alpha,
                beta: c.beta,
                outcome,
            }
        })
        .collect();
    IdentityReport { rows }
}
