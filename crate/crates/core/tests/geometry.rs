use frh::geometry::{
    distance_function, dual_transform, minkowski, shifted_dual_transform, spherical_mean,
    Curvature, GeodesicParam, Point, SpaceDescriptor,
};
use frh::numerics::{gauss_legendre_adaptive, limit_at_zero, LimitSchedule};
use proptest::prelude::*;
use std::f64::consts::PI;

/// Modified Bessel function I₀ by its power series.
fn bessel_i0(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= q / (k * k) as f64;
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

fn e2() -> SpaceDescriptor {
    SpaceDescriptor::euclidean(2, 1).unwrap()
}

#[test]
fn circle_mean_of_shifted_gaussian() {
    let a = [0.4, -0.9];
    let f = |y: &[f64]| (-((y[0] - a[0]).powi(2) + (y[1] - a[1]).powi(2))).exp();
    let x = Point {
        coords: vec![-0.3, 0.5],
    };
    let rho = ((x.coords[0] - a[0]).powi(2) + (x.coords[1] - a[1]).powi(2)).sqrt();
    for r in [0.1, 0.7, 1.5, 3.0] {
        let got = spherical_mean(f, &x, r, &e2()).unwrap();
        let want = (-(rho * rho + r * r)).exp() * bessel_i0(2.0 * rho * r);
        assert!(
            ((got - want) / want).abs() < 1e-12,
            "r={r}: {got} vs {want}"
        );
    }
}

#[test]
fn zonal_hyperbolic_mean_at_origin() {
    let space = SpaceDescriptor::hyperbolic(3, 2).unwrap();
    let x0 = Point::origin(&space);
    let mu = 2.5;
    for s in [1.0, 1.3, 4.0] {
        let got = spherical_mean(|y: &[f64]| y[3].powf(-mu), &x0, s, &space).unwrap();
        assert!((got - s.powf(-mu)).abs() < 1e-13);
    }
}

#[test]
fn means_contract_to_the_point_value() {
    let schedule = LimitSchedule::new(0.4, 6, 2);
    let f2 = |y: &[f64]| (y[0] - 2.0 * y[1]).cos() * (-y[0] * y[0]).exp();
    let x = Point {
        coords: vec![0.2, 0.1],
    };
    let est = limit_at_zero(|r| spherical_mean(f2, &x, r, &e2()).unwrap(), &schedule).unwrap();
    assert!((est.value - f2(&x.coords)).abs() < 1e-4);

    let s2 = SpaceDescriptor::spherical(2, 1).unwrap();
    let p = Point::spherical_from(&[0.3, -0.4, 0.8]);
    let g = |y: &[f64]| 1.0 + y[0] * y[2] + y[1].powi(3);
    let est = limit_at_zero(
        |h| spherical_mean(g, &p, (1.0 - h * h).sqrt(), &s2).unwrap(),
        &schedule,
    )
    .unwrap();
    assert!((est.value - g(&p.coords)).abs() < 1e-4);
}

#[test]
fn shifted_dual_of_radial_gaussian_transform() {
    let x = Point::origin(&e2());
    // Radon transform of e^{−|y|²} along the line ⟨y, θ⟩ = u
    let phi = |g: &GeodesicParam<f64>| match g {
        GeodesicParam::Line2 { u, .. } => PI.sqrt() * (-u * u).exp(),
        _ => unreachable!(),
    };
    for r in [0.0, 0.5, 1.2] {
        let got = shifted_dual_transform(phi, &x, r, &e2()).unwrap();
        assert!((got - PI.sqrt() * (-r * r).exp()).abs() < 1e-13);
    }
}

#[test]
fn dual_transform_matches_direct_quadrature() {
    let a = [0.6, 0.2];
    let rf = move |theta: f64, u: f64| {
        PI.sqrt() * (-(u - a[0] * theta.cos() - a[1] * theta.sin()).powi(2)).exp()
    };
    let phi = |g: &GeodesicParam<f64>| match *g {
        GeodesicParam::Line2 { theta, u } => rf(theta, u),
        _ => unreachable!(),
    };
    let x = Point {
        coords: vec![-0.5, 1.1],
    };
    let got = dual_transform(phi, &x, &e2()).unwrap();
    let through = |theta: f64| rf(theta, x.coords[0] * theta.cos() + x.coords[1] * theta.sin());
    let direct = gauss_legendre_adaptive(through, 0.0, PI, 1e-14).value / PI;
    assert!((got - direct).abs() < 1e-12, "{got} vs {direct}");
}

#[test]
fn funk_transform_of_one_on_the_sphere() {
    let s2 = SpaceDescriptor::spherical(2, 1).unwrap();
    let x = Point::spherical_from(&[1.0, 2.0, -0.5]);
    for r in [0.0, 0.4, 1.0] {
        let got = shifted_dual_transform(|_| 2.0 * PI, &x, r, &s2).unwrap();
        assert!((got - 2.0 * PI).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn euclidean_means_are_rotation_invariant(
        angle in 0.0f64..(2.0 * PI),
        x0 in -1.0f64..1.0,
        x1 in -1.0f64..1.0,
        r in 0.05f64..2.0,
    ) {
        let f = |y: &[f64]| (-(y[0] - 0.3).powi(2) - 2.0 * (y[1] + 0.1).powi(2)).exp() * (1.0 + y[0]);
        let (c, s) = (angle.cos(), angle.sin());
        let rotate = move |y: &[f64]| vec![c * y[0] - s * y[1], s * y[0] + c * y[1]];
        let unrotate = move |y: &[f64]| vec![c * y[0] + s * y[1], -s * y[0] + c * y[1]];
        let x = Point { coords: vec![x0, x1] };
        let xr = Point { coords: unrotate(&x.coords) };
        let lhs = spherical_mean(|y: &[f64]| f(&rotate(y)), &xr, r, &e2()).unwrap();
        let rhs = spherical_mean(f, &x, r, &e2()).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-8);
    }

    #[test]
    fn hyperbolic_right_triangle_law(
        phi in 0.0f64..PI,
        p0 in -2.0f64..2.0,
        p1 in -2.0f64..2.0,
    ) {
        let space = SpaceDescriptor::hyperbolic(2, 1).unwrap();
        // geodesic through the origin with unit spacelike normal m
        let m = vec![phi.cos(), phi.sin(), 0.0];
        let x = Point::hyperbolic_from_spatial(&[p0, p1]);
        let xm = minkowski(&x.coords, &m);
        // foot of the perpendicular from x
        let scale = (1.0 + xm * xm).sqrt();
        let foot: Vec<f64> = x.coords.iter().zip(&m).map(|(&a, &b)| (a + xm * b) / scale).collect();
        prop_assert!(minkowski(&foot, &m).abs() < 1e-12);
        let cosh_x = x.coords[2];
        let cosh_foot = foot[2];
        let cosh_leg = minkowski(&foot, &x.coords);
        prop_assert!((cosh_x - cosh_foot * cosh_leg).abs() < 1e-10 * cosh_x);
        // sinh of the perpendicular leg is the distance function
        let rho = distance_function(&x, &GeodesicParam::Hyperplane { normal: m }, &space).unwrap();
        prop_assert!(((cosh_leg * cosh_leg - 1.0).sqrt() - rho).abs() < 1e-10 * (1.0 + rho));
    }
}

#[test]
fn descriptor_reports_curvature() {
    let s = SpaceDescriptor::spherical(3, 2).unwrap();
    assert_eq!(s.curvature, Curvature::Spherical);
    assert_eq!(s.model_dim(), 4);
}
