use std::f64::consts::PI;

use frh::fraccalc::{Decay, Profile};
use frh::geometry::{shifted_dual_transform, AngularRule, GeodesicParam, Point, SpaceDescriptor};
use frh::numerics::{gauss_legendre_adaptive, TailSpec};
use frh::phantom::{Counterexample, Phantom};
use frh::radon::{
    check_existence, dual_composition, funk_sampled, funk_zonal, radon_radial, radon_sampled,
    ExistenceCondition, FunctionClass, SinogramGrid, TransformField,
};
use frh::Error;

fn gaussian() -> Profile<f64> {
    Profile::analytic(|t: f64| (-t * t).exp(), Decay::Gaussian)
}

/// erfc by its continued fraction (x ≥ 0.5) or series.
fn erfc(x: f64) -> f64 {
    if x < 0.5 {
        let mut sum = 0.0;
        let mut term = x;
        for n in 0..60 {
            sum += term / (2 * n + 1) as f64;
            term *= -x * x / (n + 1) as f64;
        }
        1.0 - 2.0 / PI.sqrt() * sum
    } else {
        let mut f = 0.0;
        for n in (1..200).rev() {
            f = (n as f64 / 2.0) / (x + f);
        }
        (-x * x).exp() / PI.sqrt() / (x + f)
    }
}

#[test]
fn radial_closed_forms() {
    for (n, k) in [(2, 1), (3, 1), (3, 2)] {
        let space = SpaceDescriptor::euclidean(n, k).unwrap();
        for r in [0.0, 0.4, 1.5] {
            let v = radon_radial(&gaussian(), &space, r).unwrap();
            let want = PI.powf(k as f64 / 2.0) * (-r * r).exp();
            assert!(
                ((v - want) / want).abs() < 1e-10,
                "({n},{k}) r={r}: {v} vs {want}"
            );
        }
        assert_eq!(radon_radial(&Profile::zero(), &space, 0.5).unwrap(), 0.0);
    }
    for (n, k) in [(2, 1), (3, 2)] {
        let space = SpaceDescriptor::hyperbolic(n, k).unwrap();
        let ph = Phantom::<f64>::zonal_gaussian(space).unwrap();
        for r in [0.0f64, 0.4, 1.5] {
            let v = radon_radial(ph.profile().unwrap(), &space, r).unwrap();
            let want = PI.powf(k as f64 / 2.0)
                * (1.0 + r * r).powf((1.0 - k as f64) / 2.0)
                * (-r * r).exp();
            assert!(((v - want) / want).abs() < 1e-10);
        }
    }
}

#[test]
fn line_and_plane_integrals_of_a_shifted_gaussian() {
    let a = [0.5, -0.2];
    let f = |y: &[f64]| (-((y[0] - a[0]).powi(2) + (y[1] - a[1]).powi(2))).exp();
    let tail = TailSpec::new(Decay::Gaussian, 8.0);
    for (theta, u) in [(0.3, 0.1), (2.0, -1.2), (1.0, 2.5)] {
        let d = u - a[0] * f64::cos(theta) - a[1] * f64::sin(theta);
        let v = radon_sampled(f, &GeodesicParam::line2(theta, u), &tail, 1e-12).unwrap();
        assert!((v - PI.sqrt() * (-d * d).exp()).abs() < 1e-12);
    }
    assert_eq!(
        radon_sampled(|_| 0.0, &GeodesicParam::line2(0.2, 0.3), &tail, 1e-12).unwrap(),
        0.0
    );

    let b = [0.1, 0.3, -0.4];
    let g = |y: &[f64]| {
        (-((y[0] - b[0]).powi(2) + (y[1] - b[1]).powi(2) + (y[2] - b[2]).powi(2))).exp()
    };
    let w = [0.6, 0.0, 0.8];
    let plane = GeodesicParam::Plane3 { normal: w, u: 0.7 };
    let d = 0.7 - (b[0] * w[0] + b[2] * w[2]);
    let v = radon_sampled(g, &plane, &tail, 1e-12).unwrap();
    assert!((v - PI * (-d * d).exp()).abs() < 1e-10);
    let line = GeodesicParam::Line3 {
        direction: [0.0, 0.6, 0.8],
        offset: [1.0, 0.0, 0.0],
    };
    // distance from b to the line through (1,0,0) along (0, .6, .8)
    let rel = [b[0] - 1.0, b[1], b[2]];
    let along = rel[1] * 0.6 + rel[2] * 0.8;
    let d2 = rel.iter().map(|c| c * c).sum::<f64>() - along * along;
    let v = radon_sampled(g, &line, &tail, 1e-12).unwrap();
    assert!((v - PI.sqrt() * (-d2).exp()).abs() < 1e-12);
}

#[test]
fn sinogram_of_radial_gaussian_matches_radial_route() {
    let e2 = SpaceDescriptor::euclidean(2, 1).unwrap();
    let ph = Phantom::<f64>::radial_gaussian(e2).unwrap();
    let grid = SinogramGrid {
        angles: 24,
        offsets: 65,
        u_max: 6.5,
    };
    let field = TransformField::sinogram_of(&ph, Some(grid), 1e-12).unwrap();
    let sino: &frh::radon::Sinogram<f64> = field.sinogram().unwrap();
    for j in 0..grid.offsets {
        let u = grid.offset(j);
        let radial = radon_radial(&gaussian(), &e2, u.abs()).unwrap();
        for i in 0..grid.angles {
            let v = sino.get(i, j);
            // column-constant in angle, and equal to the one-dimensional route
            assert!((v - sino.get(0, j)).abs() < 1e-14);
            assert!(
                (v - radial).abs() <= 1e-6 * radial.abs().max(1e-300) || (v - radial).abs() < 1e-16
            );
        }
    }
}

#[test]
fn existence_thresholds() {
    let e = SpaceDescriptor::euclidean(3, 2).unwrap();
    let holds: frh::radon::ExistenceReport<f64> =
        check_existence(&FunctionClass::Decay(Decay::Power { mu: 2.3 }), &e);
    assert!(holds.holds && (holds.margin - 0.3).abs() < 1e-12);
    assert_eq!(holds.condition, ExistenceCondition::EuclideanMoment);
    let boundary = check_existence(&FunctionClass::Decay(Decay::Power { mu: 2.0 }), &e);
    assert!(!boundary.holds && boundary.margin == 0.0);
    assert!(!check_existence(&FunctionClass::Lp { p: 1.5 }, &e).holds);
    assert!(check_existence(&FunctionClass::Lp { p: 1.4 }, &e).holds);

    let h = SpaceDescriptor::hyperbolic(3, 2).unwrap();
    let at = check_existence(&FunctionClass::Decay(Decay::Power { mu: 1.0 }), &h);
    assert!(!at.holds && at.critical_exponent == 1.0);
    assert!(check_existence(&FunctionClass::Decay(Decay::Power { mu: 1.1 }), &h).holds);
    assert!(!check_existence(&FunctionClass::Lp { p: 2.0 }, &h).holds);
    assert!(check_existence(&FunctionClass::Decay(Decay::<f64>::Gaussian), &h).holds);
}

#[test]
fn counterexamples_diverge_at_the_sharp_exponent() {
    let cases = [
        (
            SpaceDescriptor::euclidean(2, 1).unwrap(),
            Counterexample::EuclidF2 {
                p: 2.0,
                delta: 0.25,
                shift: 0.0,
            },
            Counterexample::EuclidF2 {
                p: 2.0,
                delta: 0.25,
                shift: 0.1,
            },
        ),
        (
            SpaceDescriptor::euclidean(3, 2).unwrap(),
            Counterexample::EuclidF2 {
                p: 1.5,
                delta: 0.2,
                shift: 0.0,
            },
            Counterexample::EuclidF2 {
                p: 1.5,
                delta: 0.2,
                shift: 0.1,
            },
        ),
        (
            SpaceDescriptor::hyperbolic(3, 2).unwrap(),
            Counterexample::HyperF1 { p: 2.0, shift: 0.0 },
            Counterexample::HyperF1 { p: 2.0, shift: 0.1 },
        ),
        (
            SpaceDescriptor::hyperbolic(3, 2).unwrap(),
            Counterexample::HyperF2 { mu: 1.0 },
            Counterexample::HyperF2 { mu: 1.1 },
        ),
    ];
    for (space, sharp, shifted) in cases {
        let f = sharp.profile(&space).unwrap();
        match radon_radial(&f, &space, 0.5) {
            Err(Error::Divergent(rep)) => {
                assert!(
                    rep.numerically_confirmed(),
                    "{space} {}: {rep:?}",
                    sharp.name()
                );
                assert!(rep.margin <= 0.0);
            }
            other => panic!(
                "{space} {}: expected divergence, got {other:?}",
                sharp.name()
            ),
        }
        let g = shifted.profile(&space).unwrap();
        let v: f64 = radon_radial(&g, &space, 0.5).unwrap();
        assert!(v.is_finite() && v > 0.0);
    }
}

#[test]
fn funk_transform_of_constants_and_odd_functions() {
    for (n, area) in [(2, 2.0 * PI), (3, 4.0 * PI)] {
        let space = SpaceDescriptor::spherical(n, n - 1).unwrap();
        let one = Phantom::constant(space, 1.0).unwrap();
        let field = TransformField::for_phantom(&one, 1e-10).unwrap();
        let x = Point::spherical_from(&vec![0.3; n + 1]);
        for r in [0.2, 0.7, 1.0] {
            let v = shifted_dual_transform(|g| field.eval(g), &x, r, &space).unwrap();
            assert!((v - area).abs() < 1e-10);
        }
        let mut e = vec![0.0; n + 1];
        e[0] = 0.6;
        e[n] = 0.8;
        let odd = Phantom::sphere_odd(space, e).unwrap();
        let rule = AngularRule::default();
        for omega in [[1.0, 0.0, 0.0, 0.0], [0.5, 0.5, 0.5, 0.5]] {
            let w = &omega[..n + 1];
            let norm = w.iter().map(|c| c * c).sum::<f64>().sqrt();
            let w: Vec<f64> = w.iter().map(|c| c / norm).collect();
            assert!(
                funk_sampled(|y: &[f64]| odd.eval(y), &w, &rule)
                    .unwrap()
                    .abs()
                    < 1e-8
            );
        }
    }
}

#[test]
fn funk_zonal_examples() {
    let s2 = SpaceDescriptor::spherical(2, 1).unwrap();
    let x = Point::spherical_from(&[0.2, -0.5, 0.7]);
    for r in [0.1, 0.5, 0.9] {
        let one = funk_zonal(&Phantom::constant(s2, 1.0).unwrap(), &x, r).unwrap();
        assert!(
            (one.value - 2.0 * PI).abs() < 1e-8 && one.odd_part < 1e-14,
            "{one:?}"
        );
        let odd = funk_zonal(
            &Phantom::sphere_odd(s2, vec![0.0, 0.6, 0.8]).unwrap(),
            &x,
            r,
        )
        .unwrap();
        assert!(odd.value.abs() < 1e-10 && odd.odd_part > 0.1, "{odd:?}");
        let zero = funk_zonal(&Phantom::constant(s2, 0.0).unwrap(), &x, r).unwrap();
        assert_eq!(zero.value, 0.0);
    }
    assert!(funk_zonal(&Phantom::constant(s2, 1.0).unwrap(), &x, 0.0).is_err());
}

#[test]
fn dual_composition_identity() {
    let e2 = SpaceDescriptor::euclidean(2, 1).unwrap();
    let ph = Phantom::shifted_gaussian(e2, vec![0.5, -0.3]).unwrap();
    let field = TransformField::for_phantom(&ph, 1e-12).unwrap();
    let (l, r): (f64, f64) = dual_composition(
        &ph,
        &field,
        &Point {
            coords: vec![0.3, 0.1],
        },
        0.5,
    )
    .unwrap();
    assert!(((l - r) / r).abs() < 1e-5, "{l} vs {r}");

    // radial data at the origin: both sides reduce to π^{k/2} I^{k/2} f₀
    let e3 = SpaceDescriptor::euclidean(3, 2).unwrap();
    let ph = Phantom::radial_gaussian(e3).unwrap();
    let field = TransformField::for_phantom(&ph, 1e-12).unwrap();
    let (l, r): (f64, f64) = dual_composition(&ph, &field, &Point::origin(&e3), 0.8).unwrap();
    let want = PI * (-0.64f64).exp();
    assert!((l - want).abs() < 1e-8 && (r - want).abs() < 1e-8);

    let h2 = SpaceDescriptor::hyperbolic(2, 1).unwrap();
    let ph = Phantom::zonal_gaussian(h2).unwrap();
    let field = TransformField::for_phantom(&ph, 1e-12).unwrap();
    let x = Point::hyperbolic_from_spatial(&[0.3, -0.2]);
    let (l, r): (f64, f64) = dual_composition(&ph, &field, &x, 0.6).unwrap();
    assert!(((l - r) / r).abs() < 1e-5, "{l} vs {r}");

    let s2 = SpaceDescriptor::spherical(2, 1).unwrap();
    let ph = Phantom::sphere_quadratic(s2, vec![0.0, 0.6, 0.8], 1.5).unwrap();
    let field = TransformField::for_phantom(&ph, 1e-12).unwrap();
    let x = Point::spherical_from(&[0.4, 0.1, 0.9]);
    let (l, r): (f64, f64) = dual_composition(&ph, &field, &x, 0.55).unwrap();
    assert!(((l - r) / r).abs() < 1e-5, "{l} vs {r}");
}

/// ∫_Ξ (Rf)(ξ) cosh^{−n} d(x₀, ξ) dξ = ∫ f(x) x_{n+1}^{k−n} dx on ℍ², k = 1.
///
/// Geodesics are parametrized by their normal direction σ ∈ S¹ and the
/// distance θ to x₀, with dξ = cosh θ dθ dσ / π; the factor 1/π matches the
/// Euclidean line measure dθ du / π near x₀. In r = sinh θ the left side is
/// 2∫_0^∞ Rf(r) (1 + r²)^{−1} dr; the right side is 2π ∫_1^∞ f₀(s) s^{−1} ds.
#[test]
fn hyperbolic_duality_pairing() {
    let h2 = SpaceDescriptor::hyperbolic(2, 1).unwrap();
    for ph in [
        Phantom::<f64>::zonal_gaussian(h2).unwrap(),
        Phantom::zonal_power(h2, 2.5).unwrap(),
    ] {
        let f0 = ph.profile().unwrap().clone();
        let rf = TransformField::for_phantom(&ph, 1e-12).unwrap();
        let along = |r: f64| {
            let g = GeodesicParam::Hyperplane {
                normal: vec![(1.0 + r * r).sqrt(), 0.0, r],
            };
            rf.eval(&g) / (1.0 + r * r)
        };
        // substitute r = tan(πv/2) to map the half-line onto [0, 1)
        let lhs = 2.0
            * gauss_legendre_adaptive(
                |v: f64| {
                    let r = (PI * v / 2.0).tan();
                    along(r) * PI / 2.0 / (PI * v / 2.0).cos().powi(2)
                },
                0.0,
                1.0 - 1e-9,
                1e-11,
            )
            .value;
        let rhs = 2.0
            * PI
            * gauss_legendre_adaptive(
                |v: f64| {
                    let s = 1.0 / (1.0 - v);
                    f0.eval(s) / s / (1.0 - v).powi(2)
                },
                0.0,
                1.0 - 1e-9,
                1e-11,
            )
            .value;
        assert!(
            ((lhs - rhs) / rhs).abs() < 1e-5,
            "{}: {lhs} vs {rhs}",
            ph.name
        );
        if ph.name == "zonal_gaussian" {
            let exact = PI.powf(1.5) * 1f64.exp() * erfc(1.0);
            assert!(((rhs - exact) / exact).abs() < 1e-8);
        }
    }
}
