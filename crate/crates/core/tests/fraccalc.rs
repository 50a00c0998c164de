use frh::fraccalc::{
    ek_derivative, ek_integral, verify_composition, Composition, Decay, DerivativeVariant,
    FractionalOrder, Profile, Sign,
};
use frh::Error;
use proptest::prelude::*;
use rayon::prelude::*;

fn gaussian() -> Profile<f64> {
    Profile::analytic(|s| (-s * s).exp(), Decay::Gaussian)
}

fn power(mu: f64) -> Profile<f64> {
    Profile::analytic(move |s: f64| s.powf(-mu), Decay::Power { mu })
}

fn bump() -> Profile<f64> {
    Profile::analytic(
        |s: f64| (1.0 - s * s / 16.0).max(0.0).powi(4),
        Decay::Compact { radius: 4.0 },
    )
}

fn image(f: &Profile<f64>, alpha: FractionalOrder<f64>) -> Profile<f64> {
    let g = f.clone();
    Profile::analytic(
        move |t| ek_integral(&g, &alpha, Sign::Minus, t).unwrap(),
        f.decay().after_ek(alpha.alpha),
    )
}

const GRID: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 3.0];

fn check_left_inverse(f: &Profile<f64>, alpha: f64, variant: DerivativeVariant) -> Option<f64> {
    let order = FractionalOrder::new(alpha).unwrap();
    let phi = image(f, order);
    let errors: Vec<Option<f64>> = GRID
        .par_iter()
        .map(|&t| match ek_derivative(&phi, &order, variant, t) {
            Ok(v) => Some((v - f.eval(t)).abs() / f.eval(t).abs()),
            Err(Error::Inadmissible { .. }) => None,
            Err(e) => panic!("{variant:?} α={alpha} t={t}: {e}"),
        })
        .collect();
    errors
        .into_iter()
        .try_fold(0.0f64, |w, e| e.map(|e| w.max(e)))
}

#[test]
fn left_inverse_gaussian_all_variants() {
    for alpha in [0.5, 1.0, 1.5, 0.75, 2.0] {
        for v in DerivativeVariant::ALL {
            if let Some(err) = check_left_inverse(&gaussian(), alpha, v) {
                assert!(err < 1e-4, "{v:?} α={alpha}: {err}");
            } else {
                assert_eq!(v, DerivativeVariant::IntegerD);
            }
        }
    }
}

#[test]
fn left_inverse_power_oracles() {
    for alpha in [0.5, 1.0, 1.5] {
        // weakest admissible decay for the general variants
        let f = power(2.0 * alpha + 0.5);
        for v in [
            DerivativeVariant::WeightedComposition,
            DerivativeVariant::UsualDerivative,
        ] {
            let err = check_left_inverse(&f, alpha, v).unwrap();
            assert!(err < 1e-4, "{v:?} α={alpha}: {err}");
        }
        let m = alpha.floor();
        let strong = power(2.0 * m + 2.5);
        let err = check_left_inverse(&strong, alpha, DerivativeVariant::DirectComplement).unwrap();
        assert!(err < 1e-4, "direct α={alpha}: {err}");
    }
    // too little decay for the complementary integral
    assert!(check_left_inverse(&power(1.5), 0.5, DerivativeVariant::DirectComplement).is_none());
}

#[test]
fn left_inverse_compact_bump() {
    for alpha in [0.5, 1.0, 1.5] {
        for v in DerivativeVariant::ALL {
            if let Some(err) = check_left_inverse(&bump(), alpha, v) {
                assert!(err < 1e-4, "{v:?} α={alpha}: {err}");
            }
        }
    }
}

#[test]
fn variants_agree_pairwise() {
    let f = Profile::analytic(|s: f64| (-s * s).exp() * (1.0 + s * s), Decay::Gaussian);
    let order = FractionalOrder::new(1.0).unwrap();
    let phi = image(&f, order);
    for t in [0.3, 1.2] {
        let vals: Vec<f64> = DerivativeVariant::ALL
            .iter()
            .map(|&v| ek_derivative(&phi, &order, v, t).unwrap())
            .collect();
        for a in &vals {
            for b in &vals {
                assert!(((a - b) / b).abs() < 1e-4);
            }
        }
    }
}

#[test]
fn identity_suite_on_three_oracles() {
    let oracles = [
        Profile::analytic(|s: f64| (-s * s).exp(), Decay::Gaussian),
        Profile::analytic(|s: f64| (-s).exp(), Decay::Exponential { rate: 1.0 }),
        Profile::analytic(|s: f64| (1.0 + s * s).powi(-4), Decay::Power { mu: 8.0 }),
    ];
    let halves = [0.5, 1.0, 1.5];
    let grid = [0.25, 0.5, 1.0, 1.5, 2.0];
    for f in &oracles {
        for a in halves {
            for b in halves {
                for which in [
                    Composition::Semigroup(Sign::Minus),
                    Composition::Weighted,
                    Composition::EkToRl,
                ] {
                    let d = verify_composition(f, a, b, which, &grid).unwrap();
                    assert!(d <= 1e-6, "{which:?} α={a} β={b} {:?}: {d}", f.decay());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gaussian_is_fixed_by_ek_minus(alpha in 0.1f64..3.0, t in 0.0f64..3.0) {
        let order = FractionalOrder::new(alpha).unwrap();
        let v = ek_integral(&gaussian(), &order, Sign::Minus, t).unwrap();
        prop_assert!((v / (-t * t).exp() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn ek_minus_is_monotone_in_t_for_positive_data(alpha in 0.2f64..2.0, t in 0.1f64..2.5) {
        let order = FractionalOrder::new(alpha).unwrap();
        let f = power(2.0 * alpha + 1.0);
        let a = ek_integral(&f, &order, Sign::Minus, t).unwrap();
        let b = ek_integral(&f, &order, Sign::Minus, t * 1.1).unwrap();
        prop_assert!(a > b && b > 0.0);
    }

    #[test]
    fn boundary_decay_always_diverges(alpha in 0.2f64..2.0) {
        let order = FractionalOrder::new(alpha).unwrap();
        let r = ek_integral(&power(2.0 * alpha), &order, Sign::Minus, 1.0);
        prop_assert!(matches!(r, Err(Error::Divergent(ref rep)) if rep.numerically_confirmed()));
    }
}
