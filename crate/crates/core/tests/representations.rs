use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, LN_10};

use kbessel_core::evaluators::{
    k_direct, k_monotonic_sd, k_oscillatory_prop33, k_oscillatory_thm13, k_series,
};
use kbessel_core::{evaluate, EvaluatorConfig, Method, OrderSpec};

fn cfg() -> EvaluatorConfig {
    EvaluatorConfig::default()
}

#[test]
fn oscillatory_representations_match_series() {
    for &r in &[-1.0, 0.5] {
        for &mu in &[0.5, LN_10] {
            for &y in &[2.0, 10.0] {
                let nu = OrderSpec::new(r, y * f64::cosh(mu));
                let reference = k_series(nu, y, &cfg()).unwrap();
                let a = k_oscillatory_thm13(r, mu, y, &cfg()).unwrap();
                let b = k_oscillatory_prop33(r, mu, y, &cfg()).unwrap();
                assert!(a.value.rel_diff(&reference.value) <= 1e-8, "thm13 r {r} mu {mu} y {y}");
                assert!(b.value.rel_diff(&reference.value) <= 1e-8, "prop33 r {r} mu {mu} y {y}");
            }
        }
    }
}

#[test]
fn monotonic_representation_matches_direct_line() {
    for &theta in &[0.0, FRAC_PI_6, FRAC_PI_3] {
        for &y in &[5.0, 50.0] {
            let nu = OrderSpec::new(1.0, y * theta.sin());
            let a = k_monotonic_sd(1.0, theta, y, &cfg()).unwrap();
            let b = k_direct(nu, y, &cfg()).unwrap();
            assert!(a.value.rel_diff(&b.value) <= 1e-9, "theta {theta} y {y}");
        }
    }
}

#[test]
fn results_do_not_depend_on_the_frame() {
    let shifted = EvaluatorConfig {
        frame_shift: 37.5,
        ..cfg()
    };
    let a = k_oscillatory_thm13(0.5, 1.0, 5.0, &cfg()).unwrap();
    let b = k_oscillatory_thm13(0.5, 1.0, 5.0, &shifted).unwrap();
    assert!(a.value.rel_diff(&b.value) <= 1e-12);
    let a = k_monotonic_sd(0.3, 0.9, 20.0, &cfg()).unwrap();
    let b = k_monotonic_sd(0.3, 0.9, 20.0, &shifted).unwrap();
    assert!(a.value.rel_diff(&b.value) <= 1e-12);
}

#[test]
fn negative_imaginary_order_conjugates() {
    for method in [Method::Series, Method::Direct, Method::Thm13] {
        let nu = OrderSpec::new(0.3, 5.0);
        let a = evaluate(nu, 1.0, method, &cfg()).unwrap();
        let b = evaluate(OrderSpec::new(0.3, -5.0), 1.0, method, &cfg()).unwrap();
        assert!(b.conjugated);
        assert!(a.value.conj().rel_diff(&b.value) <= 1e-12, "{method}");
    }
}

#[test]
fn order_sign_symmetry() {
    let nu = OrderSpec::new(-0.5, 12.0);
    let a = k_series(nu, 2.0, &cfg()).unwrap();
    let b = k_series(nu.negated(), 2.0, &cfg()).unwrap();
    assert!(a.value.rel_diff(&b.value) <= 1e-12);
}
