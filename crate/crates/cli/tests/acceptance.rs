//! Acceptance suite: one pass/fail line per criterion, each at its stated
//! tolerance. Exits non-zero when any criterion fails.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use frh::direct_diff::{helgason_reconstruct, mader_reconstruct, DirectConstants};
use frh::fraccalc::{
    ek_derivative, ek_integral, Decay, DerivativeVariant, FractionalOrder, Profile, Sign,
};
use frh::geometry::{Point, SpaceDescriptor};
use frh::inversion::{
    dual_profile, reconstruct_from_dual, sphere_inversion_formula, InversionPlan, SphereFormula,
};
use frh::phantom::Phantom;
use frh::radon::{radon_radial, FunctionClass, TransformField};
use frh_cli::config::{
    CounterexampleKind, ExperimentConfig, ExperimentSection, GridSection, MethodSpec,
    OutputSection, PhantomSpec, RandomGrid, SpaceKind, Tolerances,
};
use frh_cli::identities::{default_matrix, run_identity_suite};
use frh_cli::runner::ProbeOutcome;
use frh_cli::{run_experiment, Status};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn criterion(id: &str, title: &str, body: impl FnOnce() -> Verdict) -> bool {
    let t = Instant::now();
    let v = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        verdict(false, format!("panicked: {msg}"))
    });
    println!(
        "{id} {} {title}: {} [{:.1}s]",
        if v.pass { "PASS" } else { "FAIL" },
        v.detail,
        t.elapsed().as_secs_f64()
    );
    v.pass
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (b.abs() + 1e-30)
}

fn euclid(n: usize, k: usize) -> SpaceDescriptor {
    SpaceDescriptor::euclidean(n, k).unwrap()
}

fn hyper(n: usize, k: usize) -> SpaceDescriptor {
    SpaceDescriptor::hyperbolic(n, k).unwrap()
}

fn sphere(n: usize, k: usize) -> SpaceDescriptor {
    SpaceDescriptor::spherical(n, k).unwrap()
}

fn admissible_plans(ph: &Phantom<f64>) -> Vec<InversionPlan<f64>> {
    DerivativeVariant::ALL
        .into_iter()
        .filter_map(|v| InversionPlan::new(ph.space, v, FunctionClass::Decay(ph.decay)).ok())
        .collect()
}

fn ac1() -> Verdict {
    let t = Instant::now();
    let report = run_identity_suite(&default_matrix());
    let elapsed = t.elapsed();
    let per: Vec<String> = report
        .max_per_identity()
        .into_iter()
        .map(|(n, d)| format!("{n} {d:.1e}"))
        .collect();
    let ok = report.failures() == 0
        && report.rows.len() == 3 * (9 + 9 + 3)
        && report.max_discrepancy() <= 1e-6
        && elapsed < Duration::from_secs(30);
    verdict(
        ok,
        format!(
            "{} rows, max discrepancy {} (≤ 1e-6), runtime {:.1}s (< 30s)",
            report.rows.len(),
            per.join(", "),
            elapsed.as_secs_f64()
        ),
    )
}

fn ek_image(f: &Profile<f64>, alpha: FractionalOrder<f64>) -> Profile<f64> {
    let g = f.clone();
    Profile::analytic(
        move |t| ek_integral(&g, &alpha, Sign::Minus, t).unwrap_or(f64::NAN),
        f.decay().after_ek(alpha.alpha),
    )
}

fn ac2() -> Verdict {
    let profiles: Vec<(&str, Profile<f64>)> = vec![
        (
            "gaussian",
            Profile::analytic(|s: f64| (-s * s).exp(), Decay::Gaussian),
        ),
        (
            "bump",
            Profile::analytic(
                |s: f64| (1.0 - s * s / 16.0).max(0.0).powi(4),
                Decay::Compact { radius: 4.0 },
            ),
        ),
        (
            "power",
            Profile::analytic(|s: f64| (1.0 + s * s).powi(-3), Decay::Power { mu: 6.0 }),
        ),
    ];
    let grid: Vec<f64> = (0..=10).map(|i| 0.1 + 0.29 * i as f64).collect();
    let mut cases = Vec::new();
    for (name, f) in &profiles {
        for alpha in [0.5, 1.0, 1.5, 2.0] {
            let order = FractionalOrder::new(alpha).unwrap();
            let phi = ek_image(f, order);
            for v in DerivativeVariant::ALL {
                if v.admissible(&phi, &order).is_ok() {
                    cases.push((*name, f.clone(), phi.clone(), order, v));
                }
            }
        }
    }
    let mut covered = [false; 4];
    for c in &cases {
        covered[DerivativeVariant::ALL
            .iter()
            .position(|v| *v == c.4)
            .unwrap()] = true;
    }
    let results: Vec<(String, f64)> = cases
        .par_iter()
        .map(|(name, f, phi, order, v)| {
            let worst = grid
                .iter()
                .map(|&t| match ek_derivative(phi, order, *v, t) {
                    Ok(d) => rel(d, f.eval(t)),
                    Err(_) => f64::INFINITY,
                })
                .fold(0.0, f64::max);
            (format!("{name} α={} {}", order.alpha, v.name()), worst)
        })
        .collect();
    let (label, worst) =
        results
            .iter()
            .cloned()
            .fold((String::new(), 0.0), |a, b| if b.1 > a.1 { b } else { a });
    verdict(
        worst <= 1e-4 && covered.iter().all(|&c| c),
        format!(
            "{} (profile, α, variant) cases on t ∈ [0.1, 3], max rel err {worst:.1e} at {label} (≤ 1e-4)",
            results.len()
        ),
    )
}

/// A config at the common 1e-3 tolerance.
fn experiment(
    space: SpaceKind,
    n: usize,
    k: usize,
    phantom: PhantomSpec,
    method: MethodSpec,
    grid: GridSection,
) -> ExperimentConfig {
    ExperimentConfig {
        experiment: ExperimentSection {
            name: "acceptance".into(),
            space,
            n,
            k,
            seed: 2024,
        },
        phantom,
        method,
        grid,
        tolerances: Tolerances { rel_err: 1e-3 },
        output: OutputSection::default(),
    }
}

fn ac3() -> Verdict {
    let cases = [
        ("radial (2,1)", 2, 1, PhantomSpec::RadialGaussian),
        ("radial (3,1)", 3, 1, PhantomSpec::RadialGaussian),
        ("radial (3,2)", 3, 2, PhantomSpec::RadialGaussian),
        (
            "shifted (2,1)",
            2,
            1,
            PhantomSpec::ShiftedGaussian { a: vec![0.3, -0.2] },
        ),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, n, k, phantom) in cases {
        let space = euclid(n, k);
        let variants: Vec<String> = DerivativeVariant::ALL
            .into_iter()
            .filter(|&v| {
                InversionPlan::new(space, v, FunctionClass::Decay(Decay::<f64>::Gaussian)).is_ok()
            })
            .map(|v| v.name().to_owned())
            .collect();
        let cfg = experiment(
            SpaceKind::Euclidean,
            n,
            k,
            phantom,
            MethodSpec::MeanValue {
                variants: variants.clone(),
            },
            GridSection {
                points: vec![vec![0.0; n]],
                random: Some(RandomGrid {
                    count: 20,
                    radius: 1.2,
                }),
            },
        );
        let t = Instant::now();
        let out = run_experiment(&cfg).unwrap();
        let secs = t.elapsed().as_secs_f64();
        let points = out.table.rows.len() / variants.len().max(1);
        let case_ok = out.status == Status::Pass
            && points >= 20
            && out.table.rows.len() == 21 * variants.len()
            && secs < 120.0;
        ok &= case_ok;
        parts.push(format!(
            "{label}: {points} pts × {} variants, max rel {:.1e}, {secs:.0}s",
            variants.len(),
            out.table.max_rel_err()
        ));
    }
    verdict(
        ok,
        format!("{} (≤ 1e-3, < 120s per case)", parts.join("; ")),
    )
}

fn ac4() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, k) in [(2, 1), (3, 2)] {
        let space = hyper(n, k);
        let ph = Phantom::zonal_gaussian(space).unwrap();
        let f0 = ph.profile().unwrap().clone();
        let forward = (0..=20)
            .map(|i| {
                let r = 0.1 * i as f64;
                let want = PI.powf(k as f64 / 2.0)
                    * (1.0 + r * r).powf((1.0 - k as f64) / 2.0)
                    * (-r * r).exp();
                rel(radon_radial(&f0, &space, r).unwrap(), want)
            })
            .fold(0.0, f64::max);
        let field = TransformField::for_phantom(&ph, 1e-12).unwrap();
        let x0 = Point::origin(&space);
        let dual = dual_profile(&field, &x0).unwrap();
        let recon = admissible_plans(&ph)
            .iter()
            .map(|p| (reconstruct_from_dual(&dual, p).unwrap().value - 1.0).abs())
            .fold(0.0, f64::max);
        ok &= forward <= 1e-6 && recon <= 1e-3;
        let mut part = format!("ℍ^{n} k={k}: forward rel {forward:.1e}, |f(x₀) − 1| {recon:.1e}");
        if k == 2 {
            let plan = InversionPlan::new(
                space,
                DerivativeVariant::IntegerD,
                FunctionClass::Decay(ph.decay),
            )
            .unwrap()
            .without_weight();
            let control = (reconstruct_from_dual(&dual, &plan).unwrap().value - 1.0).abs();
            ok &= control >= 0.1;
            part.push_str(&format!(", no-weight control error {control:.2}"));
        }
        parts.push(part);
    }
    verdict(
        ok,
        format!(
            "{} (forward ≤ 1e-6, reconstruction ≤ 1e-3, control ≥ 0.1)",
            parts.join("; ")
        ),
    )
}

fn ac5() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, k, area) in [(2usize, 1usize, 2.0 * PI), (3, 2, 4.0 * PI)] {
        let space = sphere(n, k);
        let mut xs = vec![0.4; n + 1];
        xs[n] = 0.9;
        let x = Point::spherical_from(&xs);
        let one = Phantom::constant(space, 1.0).unwrap();
        let field = TransformField::for_phantom(&one, 1e-12).unwrap();
        let dual = dual_profile(&field, &x).unwrap();
        let mean_err = (0..=20)
            .map(|i| (dual.eval(0.05 * i as f64) - area).abs() / area)
            .fold(0.0, f64::max);
        let formulas: Vec<SphereFormula> = SphereFormula::ALL
            .into_iter()
            .filter(|f| f.admissible(k).is_ok())
            .collect();
        let plans: Vec<InversionPlan<f64>> = admissible_plans(&one);
        let one_err = plans
            .iter()
            .map(|p| (reconstruct_from_dual(&dual, p).unwrap().value - 1.0).abs())
            .fold(0.0, f64::max);

        let mut e = vec![0.0; n + 1];
        e[1] = 0.6;
        e[n] = 0.8;
        let ph = Phantom::sphere_quadratic(space, e, 1.5).unwrap();
        let field = TransformField::for_phantom(&ph, 1e-12).unwrap();
        let dual = dual_profile(&field, &x).unwrap();
        let mut spread: f64 = 0.0;
        for s in [0.2, 0.4, 0.6, 0.8, 0.9] {
            let gs: Vec<f64> = formulas
                .iter()
                .map(|&f| sphere_inversion_formula(|t: f64| dual.eval(t), f, k, s).unwrap())
                .collect();
            for a in &gs {
                for b in &gs {
                    spread = spread.max((a - b).abs());
                }
            }
        }
        let recon: Vec<f64> = plans
            .iter()
            .map(|p| reconstruct_from_dual(&dual, p).unwrap().value)
            .collect();
        for a in &recon {
            for b in &recon {
                spread = spread.max((a - b).abs());
            }
        }
        let quad_err = recon
            .iter()
            .map(|v| (v - ph.at(&x)).abs())
            .fold(0.0, f64::max);
        ok &= mean_err <= 1e-6
            && one_err <= 1e-3
            && spread <= 1e-4
            && plans.len() == formulas.len()
            && quad_err <= 1e-3;
        parts.push(format!(
            "S^{n} k={k}: dual mean rel {mean_err:.1e}, {} formulas on f≡1 err {one_err:.1e}, pairwise spread {spread:.1e}",
            formulas.len()
        ));
    }
    verdict(ok, format!("{} (≤ 1e-6, ≤ 1e-3, ≤ 1e-4)", parts.join("; ")))
}

fn ac6() -> Verdict {
    let counter = |which, p: f64, delta: Option<f64>, shift: f64| PhantomSpec::Counterexample {
        which,
        p: Some(p),
        delta,
        shift: (shift > 0.0).then_some(shift),
        mu: None,
    };
    let method = || MethodSpec::MeanValue {
        variants: vec!["usual_derivative".into()],
    };
    let cases = [
        (
            "ℝ² f₂ p=2",
            SpaceKind::Euclidean,
            2,
            1,
            CounterexampleKind::EuclidF2,
            2.0,
            Some(0.25),
        ),
        (
            "ℝ³ k=2 f₂ p=3/2",
            SpaceKind::Euclidean,
            3,
            2,
            CounterexampleKind::EuclidF2,
            1.5,
            Some(0.2),
        ),
        (
            "ℝ³ k=1 f₂ p=3",
            SpaceKind::Euclidean,
            3,
            1,
            CounterexampleKind::EuclidF2,
            3.0,
            Some(0.3),
        ),
        (
            "ℍ³ k=2 f₁ p=2",
            SpaceKind::Hyperbolic,
            3,
            2,
            CounterexampleKind::HyperF1,
            2.0,
            None,
        ),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, space, n, k, which, p, delta) in cases {
        let grid = GridSection {
            points: vec![vec![0.0; n]],
            random: None,
        };
        let sharp = run_experiment(&experiment(
            space,
            n,
            k,
            counter(which, p, delta, 0.0),
            method(),
            grid,
        ))
        .unwrap();
        let shifted = run_experiment(&experiment(
            space,
            n,
            k,
            counter(which, p, delta, 0.1),
            method(),
            GridSection::default(),
        ))
        .unwrap();
        let finite = !shifted.existence.is_empty()
            && shifted
                .existence
                .iter()
                .all(|e| matches!(e.outcome, ProbeOutcome::Finite(v) if v.is_finite() && v > 0.0));
        let case_ok =
            sharp.status == Status::DivergenceConfirmed && shifted.status == Status::Pass && finite;
        ok &= case_ok;
        parts.push(format!(
            "{label}: {} / shifted {}",
            sharp.status.label(),
            if finite { "finite" } else { "not finite" }
        ));
    }
    verdict(ok, parts.join("; "))
}

fn ac7() -> Verdict {
    let mut ok = true;
    let mut parts = Vec::new();
    let c = DirectConstants::<f64>::new(euclid(3, 2));
    let c2 = c.c_x.unwrap();
    let consts_ok =
        (c2 + 2.0 * PI).abs() < 1e-12 && (c2 * c.appendix_c_k().unwrap() - 1.0).abs() < 1e-12;
    ok &= consts_ok;
    parts.push(format!(
        "c_X = {c2:.6} (= −2π), c_k·c_X − 1 = {:.0e}",
        c2 * c.appendix_c_k().unwrap() - 1.0
    ));
    let helgason_cases = [
        (
            Phantom::radial_gaussian(euclid(3, 2)).unwrap(),
            Point::origin(&euclid(3, 2)),
        ),
        (
            Phantom::radial_gaussian(euclid(3, 2)).unwrap(),
            Point {
                coords: vec![0.3, 0.2, -0.1],
            },
        ),
        (
            Phantom::zonal_gaussian(hyper(3, 2)).unwrap(),
            Point::origin(&hyper(3, 2)),
        ),
        (
            Phantom::zonal_gaussian(hyper(3, 2)).unwrap(),
            Point::hyperbolic_from_spatial(&[0.2, -0.1, 0.1]),
        ),
    ];
    let worst = helgason_cases
        .iter()
        .map(|(ph, x)| {
            let f = TransformField::for_phantom(ph, 1e-12).unwrap();
            (helgason_reconstruct::<f64>(&f, x, 0.1).unwrap().value - ph.at(x)).abs()
        })
        .fold(0.0, f64::max);
    ok &= worst <= 2e-3;
    parts.push(format!("Helgason ℝ³/ℍ³ max err {worst:.1e} (≤ 2e-3)"));
    for (label, space) in [
        ("log kernel ℝ²", euclid(2, 1)),
        ("sgn kernel ℝ³", euclid(3, 2)),
    ] {
        let ph = Phantom::radial_gaussian(space).unwrap();
        let f = TransformField::for_phantom(&ph, 1e-12).unwrap();
        let err = (mader_reconstruct::<f64>(&f, &Point::origin(&space), 0.1)
            .unwrap()
            .value
            - 1.0)
            .abs();
        ok &= err <= 5e-3;
        parts.push(format!("{label} err {err:.1e} (≤ 5e-3)"));
    }
    verdict(ok, parts.join("; "))
}

fn ac8() -> Verdict {
    let mut e = vec![0.0; 4];
    e[1] = 0.6;
    e[3] = 0.8;
    type Case = (&'static str, Phantom<f64>, Vec<Point<f64>>);
    let cases: Vec<Case> = vec![
        (
            "ℝ³",
            Phantom::radial_gaussian(euclid(3, 2)).unwrap(),
            vec![
                Point::origin(&euclid(3, 2)),
                Point {
                    coords: vec![0.3, 0.2, -0.1],
                },
                Point {
                    coords: vec![-0.5, 0.4, 0.2],
                },
            ],
        ),
        (
            "ℍ³",
            Phantom::zonal_gaussian(hyper(3, 2)).unwrap(),
            vec![
                Point::origin(&hyper(3, 2)),
                Point::hyperbolic_from_spatial(&[0.2, -0.1, 0.1]),
                Point::hyperbolic_from_spatial(&[-0.4, 0.3, 0.0]),
            ],
        ),
        (
            "S³",
            Phantom::sphere_quadratic(sphere(3, 2), e, 1.5).unwrap(),
            vec![
                Point::spherical_from(&[0.4, 0.4, 0.4, 0.9]),
                Point::spherical_from(&[0.0, 0.0, 0.0, 1.0]),
            ],
        ),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, ph, points) in cases {
        let field = TransformField::for_phantom(&ph, 1e-12).unwrap();
        let plans = admissible_plans(&ph);
        let mut worst: f64 = 0.0;
        for x in &points {
            let direct = helgason_reconstruct(&field, x, 0.1).unwrap().value;
            let dual = dual_profile(&field, x).unwrap();
            for p in &plans {
                let mean = reconstruct_from_dual(&dual, p).unwrap().value;
                worst = worst.max((mean - direct).abs());
            }
        }
        if ph.space.curvature == frh::geometry::Curvature::Euclidean {
            let x = &points[0];
            let mader = mader_reconstruct(&field, x, 0.1).unwrap().value;
            let dual = dual_profile(&field, x).unwrap();
            for p in &plans {
                worst = worst.max((reconstruct_from_dual(&dual, p).unwrap().value - mader).abs());
            }
        }
        ok &= worst <= 2e-3;
        parts.push(format!(
            "{label} k=2: {} pts × {} variants, max gap {worst:.1e}",
            points.len(),
            plans.len()
        ));
    }
    verdict(ok, format!("{} (≤ 2e-3)", parts.join("; ")))
}

fn main() {
    // harness flags passed by `cargo test` are ignored; the suite always
    // runs in full
    let results = [
        criterion("AC1", "fractional-calculus identities", ac1),
        criterion("AC2", "left inverse of the EK integral", ac2),
        criterion("AC3", "ℝⁿ end-to-end reconstruction", ac3),
        criterion("AC4", "ℍⁿ end-to-end reconstruction", ac4),
        criterion("AC5", "Sⁿ dual means and inversion formulas", ac5),
        criterion("AC6", "existence sharpness", ac6),
        criterion("AC7", "direct differentiation", ac7),
        criterion("AC8", "cross-route agreement", ac8),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
