//! Turns an [`ExperimentConfig`] into an error table.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use frh::fraccalc::DerivativeVariant;
use frh::geometry::{Curvature, Point, SpaceDescriptor};
use frh::inversion::{dual_profile, reconstruct_from_dual, InversionPlan, ReconstructionResult};
use frh::phantom::{Counterexample, Phantom};
use frh::radon::{check_existence, radon_radial, FunctionClass, TransformField};
use frh::{direct_diff, DivergenceReport, Error};

use crate::config::{CounterexampleKind, ExperimentConfig, MethodSpec, PhantomSpec, SpaceKind};
use crate::CliError;

/// Relative tolerance of the forward transform tabulation.
const FORWARD_TOL: f64 = 1e-12;
/// Default first step of the direct-differentiation derivatives.
const DIRECT_STEP: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRow {
    pub x: Vec<f64>,
    pub f_true: f64,
    pub f_reconstructed: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub limit_error_estimate: f64,
    pub variant: String,
}

impl ErrorRow {
    pub fn new(
        x: &[f64],
        f_true: f64,
        f_reconstructed: f64,
        limit_error_estimate: f64,
        variant: &str,
    ) -> Self {
        let abs_err = (f_reconstructed - f_true).abs();
        ErrorRow {
            x: x.to_vec(),
            f_true,
            f_reconstructed,
            abs_err,
            rel_err: abs_err / (f_true.abs() + 1e-30),
            limit_error_estimate,
            variant: variant.to_owned(),
        }
    }
}

/// Rows in grid order; for each point, one row per configured variant.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ErrorTable {
    pub rows: Vec<ErrorRow>,
}

impl ErrorTable {
    pub fn max_rel_err(&self) -> f64 {
        self.rows.iter().map(|r| r.rel_err).fold(0.0, f64::max)
    }

    pub fn median_rel_err(&self) -> f64 {
        let mut v: Vec<f64> = self.rows.iter().map(|r| r.rel_err).collect();
        if v.is_empty() {
            return 0.0;
        }
        v.sort_by(f64::total_cmp);
        let m = v.len() / 2;
        if v.len() % 2 == 1 {
            v[m]
        } else {
            0.5 * (v[m - 1] + v[m])
        }
    }
}

/// Outcome of the forward existence probe for one distance parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum ProbeOutcome {
    Finite(f64),
    Divergent(DivergenceReport),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExistenceProbe {
    pub r: f64,
    pub outcome: ProbeOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotPoint {
    pub point: usize,
    pub r: f64,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSeries {
    pub variant: String,
    pub points: Vec<PlotPoint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Pass,
    ToleranceFail,
    /// The transform is infinite and the truncated integrals confirm it.
    DivergenceConfirmed,
    NumericFailure(String),
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Pass | Status::DivergenceConfirmed => 0,
            Status::ToleranceFail => 1,
            Status::NumericFailure(_) => 2,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::ToleranceFail => "tolerance fail",
            Status::DivergenceConfirmed => "divergence confirmed",
            Status::NumericFailure(_) => "numeric failure",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub name: String,
    pub table: ErrorTable,
    pub existence: Vec<ExistenceProbe>,
    pub plot: Vec<PlotSeries>,
    pub status: Status,
    pub tolerance: f64,
}

impl RunOutput {
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} rows, max rel_err {:.3e}, median rel_err {:.3e}, tolerance {:.1e}: {}",
            self.name,
            self.table.rows.len(),
            self.table.max_rel_err(),
            self.table.median_rel_err(),
            self.tolerance,
            self.status.label()
        );
        if let Status::NumericFailure(msg) = &self.status {
            s.push_str(&format!(" ({msg})"));
        }
        s
    }
}

pub fn build_phantom(
    cfg: &ExperimentConfig,
    space: SpaceDescriptor,
) -> Result<Phantom<f64>, CliError> {
    let ph = match &cfg.phantom {
        PhantomSpec::RadialGaussian => Phantom::radial_gaussian(space),
        PhantomSpec::ShiftedGaussian { a } => Phantom::shifted_gaussian(space, a.clone()),
        PhantomSpec::ZonalPower { mu } => Phantom::zonal_power(space, *mu),
        PhantomSpec::ZonalGaussian => Phantom::zonal_gaussian(space),
        PhantomSpec::Constant { value } => Phantom::constant(space, *value),
        PhantomSpec::SphereQuadratic { e, c } => Phantom::sphere_quadratic(space, e.clone(), *c),
        PhantomSpec::Counterexample {
            which,
            p,
            delta,
            shift,
            mu,
        } => {
            let need = |v: &Option<f64>, what: &str| {
                v.ok_or_else(|| CliError::Config(format!("counterexample needs `{what}`")))
            };
            let c = match which {
                CounterexampleKind::EuclidF2 => Counterexample::EuclidF2 {
                    p: need(p, "p")?,
                    delta: need(delta, "delta")?,
                    shift: shift.unwrap_or(0.0),
                },
                CounterexampleKind::HyperF1 => Counterexample::HyperF1 {
                    p: need(p, "p")?,
                    shift: shift.unwrap_or(0.0),
                },
                CounterexampleKind::HyperF2 => Counterexample::HyperF2 {
                    mu: need(mu, "mu")?,
                },
            };
            Phantom::counterexample(space, c)
        }
    };
    ph.map_err(|e| CliError::Config(e.to_string()))
}

fn point_from(space: &SpaceDescriptor, coords: &[f64]) -> Point<f64> {
    match space.curvature {
        Curvature::Euclidean => Point {
            coords: coords.to_vec(),
        },
        Curvature::Hyperbolic => Point::hyperbolic_from_spatial(coords),
        Curvature::Spherical => Point::spherical_from(coords),
    }
}

/// Explicit points followed by the seeded random sample.
pub fn evaluation_points(cfg: &ExperimentConfig, space: &SpaceDescriptor) -> Vec<Point<f64>> {
    let mut pts: Vec<Point<f64>> = cfg
        .grid
        .points
        .iter()
        .map(|p| point_from(space, p))
        .collect();
    if let Some(rg) = cfg.grid.random {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.experiment.seed);
        let sphere = cfg.experiment.space == SpaceKind::Spherical;
        let dim = if sphere { space.n + 1 } else { space.n };
        let radius = if sphere { 1.0 } else { rg.radius };
        while pts.len() < cfg.grid.points.len() + rg.count {
            let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let r2: f64 = v.iter().map(|c| c * c).sum();
            // rejection from the cube gives a uniform sample of the ball
            if r2 > 1.0 || (sphere && r2 < 1e-4) {
                continue;
            }
            let scaled: Vec<f64> = v.iter().map(|c| c * radius).collect();
            pts.push(point_from(space, &scaled));
        }
    }
    pts
}

/// Forward transform at a few distance parameters, for counterexample
/// phantoms and for phantoms whose transform is predicted to diverge.
fn existence_probe(ph: &Phantom<f64>) -> Option<Vec<ExistenceProbe>> {
    let f0 = ph.profile()?;
    if ph.space.curvature == Curvature::Spherical {
        return None;
    }
    Some(
        [0.0, 0.5, 1.0]
            .into_iter()
            .map(|r| {
                let outcome = match radon_radial(f0, &ph.space, r) {
                    Ok(v) => ProbeOutcome::Finite(v),
                    Err(Error::Divergent(rep)) => ProbeOutcome::Divergent(rep),
                    Err(e) => ProbeOutcome::Divergent(DivergenceReport {
                        condition: format!("evaluation failed: {e}"),
                        critical_exponent: f64::NAN,
                        margin: f64::NAN,
                        partial_integrals: Vec::new(),
                    }),
                };
                ExistenceProbe { r, outcome }
            })
            .collect(),
    )
}

fn divergence_status(probes: &[ExistenceProbe]) -> Option<Status> {
    let reports: Vec<&DivergenceReport> = probes
        .iter()
        .filter_map(|p| match &p.outcome {
            ProbeOutcome::Divergent(rep) => Some(rep),
            ProbeOutcome::Finite(_) => None,
        })
        .collect();
    if reports.is_empty() {
        return None;
    }
    if reports.iter().all(|r| r.numerically_confirmed()) {
        Some(Status::DivergenceConfirmed)
    } else {
        Some(Status::NumericFailure(format!(
            "divergence predicted but not confirmed numerically: {}",
            reports[0]
        )))
    }
}

enum Route {
    MeanValue(Vec<(String, InversionPlan<f64>)>),
    Helgason(f64),
    Mader(f64),
}

fn route(cfg: &ExperimentConfig, ph: &Phantom<f64>) -> Result<Route, CliError> {
    let space = ph.space;
    let plans = |class: FunctionClass<f64>, label_formula: bool| -> Result<Route, CliError> {
        let variants: Vec<DerivativeVariant> = cfg.method.variants()?;
        let mut out = Vec::with_capacity(variants.len());
        for v in variants {
            let plan =
                InversionPlan::new(space, v, class).map_err(|e| CliError::Config(e.to_string()))?;
            let label = match (label_formula, plan.sphere_formula()) {
                (true, Some(f)) => f.name().to_owned(),
                _ => v.name().to_owned(),
            };
            out.push((label, plan));
        }
        Ok(Route::MeanValue(out))
    };
    match &cfg.method {
        MethodSpec::MeanValue { .. } => plans(FunctionClass::Decay(ph.decay), false),
        MethodSpec::SphereFormula { .. } => plans(FunctionClass::Decay(ph.decay), true),
        MethodSpec::LpDirect { p, .. } => plans(FunctionClass::Lp { p: *p }, false),
        MethodSpec::Helgason { step } => Ok(Route::Helgason(step.unwrap_or(DIRECT_STEP))),
        MethodSpec::Mader { step } => Ok(Route::Mader(step.unwrap_or(DIRECT_STEP))),
    }
}

/// Distance parameters at which recovered means are written as plot data.
fn plot_radii(space: &SpaceDescriptor) -> Vec<f64> {
    match space.curvature {
        Curvature::Spherical => (1..=16).map(|i| 0.15 + 0.05 * i as f64).collect(),
        _ => (1..=16).map(|i| 0.05 * i as f64).collect(),
    }
}

type PointResult = Result<(Vec<ErrorRow>, Vec<(String, Vec<PlotPoint>)>), Error>;

fn run_point(
    idx: usize,
    x: &Point<f64>,
    ph: &Phantom<f64>,
    field: &TransformField<f64>,
    route: &Route,
    plot: bool,
) -> PointResult {
    let f_true = ph.at(x);
    let spatial: Vec<f64> = match ph.space.curvature {
        Curvature::Hyperbolic => x.coords[..ph.space.n].to_vec(),
        _ => x.coords.clone(),
    };
    let mut rows = Vec::new();
    let mut series = Vec::new();
    match route {
        Route::MeanValue(plans) => {
            let dual = dual_profile(field, x)?;
            for (label, plan) in plans {
                let res: ReconstructionResult<f64> = reconstruct_from_dual(&dual, plan)?;
                rows.push(ErrorRow::new(
                    &spatial,
                    f_true,
                    res.value,
                    res.limit_diag.error_estimate,
                    label,
                ));
                if plot {
                    let pts = plot_radii(&ph.space)
                        .into_iter()
                        .map(|r| PlotPoint {
                            point: idx,
                            r,
                            mean: res.intermediate_mean.eval(r),
                        })
                        .collect();
                    series.push((label.clone(), pts));
                }
            }
        }
        Route::Helgason(step) => {
            let e = direct_diff::helgason_reconstruct(field, x, *step)?;
            rows.push(ErrorRow::new(
                &spatial,
                f_true,
                e.value,
                e.error_estimate,
                "helgason",
            ));
        }
        Route::Mader(step) => {
            let e = direct_diff::mader_reconstruct(field, x, *step)?;
            rows.push(ErrorRow::new(
                &spatial,
                f_true,
                e.value,
                e.error_estimate,
                "mader",
            ));
        }
    }
    Ok((rows, series))
}

/// Runs one experiment. Deterministic for a fixed config and seed.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunOutput, CliError> {
    cfg.validate()?;
    let space = cfg.space()?;
    let ph = build_phantom(cfg, space)?;
    let route = route(cfg, &ph)?;
    let mut out = RunOutput {
        name: cfg.experiment.name.clone(),
        table: ErrorTable::default(),
        existence: Vec::new(),
        plot: Vec::new(),
        status: Status::Pass,
        tolerance: cfg.tolerances.rel_err,
    };

    let counterexample = matches!(cfg.phantom, PhantomSpec::Counterexample { .. });
    let predicted = check_existence(&FunctionClass::Decay(ph.decay), &space);
    if counterexample || !predicted.holds {
        if let Some(probes) = existence_probe(&ph) {
            let status = divergence_status(&probes);
            out.existence = probes;
            if let Some(status) = status {
                out.status = status;
                return Ok(out);
            }
        }
    }

    let points = evaluation_points(cfg, &space);
    if points.is_empty() {
        return Ok(out);
    }
    let field = match TransformField::for_phantom(&ph, FORWARD_TOL) {
        Ok(f) => f,
        Err(Error::Divergent(rep)) => {
            out.status = if rep.numerically_confirmed() {
                Status::DivergenceConfirmed
            } else {
                Status::NumericFailure(format!("divergent forward transform: {rep}"))
            };
            return Ok(out);
        }
        Err(e) => {
            out.status = Status::NumericFailure(e.to_string());
            return Ok(out);
        }
    };

    let results: Vec<PointResult> = points
        .par_iter()
        .enumerate()
        .map(|(i, x)| run_point(i, x, &ph, &field, &route, cfg.output.plot_data))
        .collect();

    let mut failure = None;
    for res in results {
        match res {
            Ok((rows, series)) => {
                out.table.rows.extend(rows);
                for (variant, pts) in series {
                    match out.plot.iter_mut().find(|s| s.variant == variant) {
                        Some(s) => s.points.extend(pts),
                        None => out.plot.push(PlotSeries {
                            variant,
                            points: pts,
                        }),
                    }
                }
            }
            Err(e) => {
                failure.get_or_insert(e);
            }
        }
    }
    out.status = match failure {
        Some(Error::Divergent(rep)) if rep.numerically_confirmed() => Status::DivergenceConfirmed,
        Some(e) => Status::NumericFailure(e.to_string()),
        None if out.table.max_rel_err() <= cfg.tolerances.rel_err => Status::Pass,
        None => Status::ToleranceFail,
    };
    Ok(out)
}
