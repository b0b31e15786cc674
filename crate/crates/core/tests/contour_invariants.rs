use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_10, PI};

use kbessel_core::contour::{
    im_phase_residual, monotonic_point, mu_minus, path_case2, phase_derivative_monotonic,
    phase_derivative_oscillatory, saddle_monotonic, saddle_oscillatory, saddle_phase, Branch,
    SaddleSign, Side,
};
use kbessel_core::RegimeSpec;

const THETAS: [f64; 4] = [0.1, FRAC_PI_4, 1.3, FRAC_PI_2];
const MUS: [f64; 3] = [0.3, 1.0, LN_10];
const SAMPLES: usize = 1000;

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

#[test]
fn every_exposed_saddle_is_stationary() {
    for k in -3..=3 {
        for &theta in &THETAS {
            let d = phase_derivative_monotonic(theta, saddle_monotonic(theta, k));
            assert!(d.norm() <= 1e-14, "theta {theta}, k {k}: {:e}", d.norm());
        }
        for &mu in &MUS {
            for sign in [SaddleSign::Plus, SaddleSign::Minus] {
                let d = phase_derivative_oscillatory(mu, saddle_oscillatory(mu, k, sign));
                assert!(d.norm() <= 1e-14, "mu {mu}, k {k}: {:e}", d.norm());
            }
        }
    }
}

#[test]
fn monotonic_path_keeps_constant_phase() {
    for &theta in &THETAS {
        let spec = RegimeSpec::monotonic(1.0, theta).unwrap();
        let bound = 1e-10 * (1.0 + saddle_phase(&spec).abs());
        for u in grid(-25.0, 25.0, SAMPLES) {
            let p = monotonic_point(theta, u, Side::Plus);
            let res = im_phase_residual(&spec, &p);
            assert!(res <= bound, "theta {theta}, u {u}: {res:e}");
        }
    }
}

#[test]
fn oscillatory_branches_keep_constant_phase() {
    for &mu in &MUS {
        let spec = RegimeSpec::oscillatory(1.0, mu).unwrap();
        let bound = 1e-10 * (1.0 + saddle_phase(&spec).abs());
        let ranges = [
            (Branch::ArcLower, -FRAC_PI_2, FRAC_PI_2),
            (Branch::ArcUpper, FRAC_PI_2, 3.0 * FRAC_PI_2),
            (Branch::Tail, mu, mu + 30.0),
        ];
        for (branch, lo, hi) in ranges {
            for param in grid(lo, hi, SAMPLES) {
                let p = path_case2(mu, branch, param).unwrap();
                let res = im_phase_residual(&spec, &p);
                assert!(res <= bound, "mu {mu}, {branch} at {param}: {res:e}");
            }
        }
    }
}

#[test]
fn branches_meet_at_the_saddle() {
    for &mu in &MUS {
        let lower = path_case2(mu, Branch::ArcLower, FRAC_PI_2).unwrap();
        let upper = path_case2(mu, Branch::ArcUpper, FRAC_PI_2).unwrap();
        let tail = path_case2(mu, Branch::Tail, mu).unwrap();
        for p in [lower, upper, tail] {
            assert!((p.u - mu).abs() <= 1e-12 && (p.w - FRAC_PI_2).abs() <= 1e-12);
        }
    }
}

#[test]
fn arc_endpoints_share_mu_minus() {
    for &mu in &MUS {
        let m = mu_minus(mu).unwrap();
        let bottom = path_case2(mu, Branch::ArcLower, -FRAC_PI_2).unwrap();
        let top = path_case2(mu, Branch::ArcUpper, 3.0 * FRAC_PI_2).unwrap();
        assert!((bottom.u - m).abs() <= 1e-10);
        assert!((top.u - m).abs() <= 1e-10);
        assert!((top.w - bottom.w - 2.0 * PI).abs() <= 1e-15);
    }
}
