use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;

use super::point::{Branch, ContourPoint, Slope};
use super::{multiple_of_pi, sinh_minus_x};
use super::sinh_minus_x_cosh;

/// Which one-sided limit to take at `u = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

const SERIES_CUTOFF: f64 = 1e-2;

/// `u / sinh u`, even, `1` at the origin.
pub(crate) fn rho(u: f64) -> f64 {
    let a = u.abs();
    if a < SERIES_CUTOFF {
        let u2 = u * u;
        1.0 - u2 / 6.0 + 7.0 * u2 * u2 / 360.0 - 31.0 * u2 * u2 * u2 / 15120.0
    } else if a > 20.0 {
        let e = (-a).exp();
        2.0 * a * e / (1.0 - e * e)
    } else {
        u / u.sinh()
    }
}

/// `1 - u / sinh u`.
pub(crate) fn one_minus_rho(u: f64) -> f64 {
    let a = u.abs();
    if a < SERIES_CUTOFF {
        let u2 = u * u;
        u2 / 6.0 - 7.0 * u2 * u2 / 360.0 + 31.0 * u2 * u2 * u2 / 15120.0
    } else if a < 1.0 {
        sinh_minus_x(a) / a.sinh()
    } else {
        1.0 - rho(u)
    }
}

/// `d/du (u / sinh u)`, odd.
pub(crate) fn rho_prime(u: f64) -> f64 {
    let a = u.abs();
    let even = if a < SERIES_CUTOFF {
        let u2 = u * u;
        -1.0 / 3.0 + 7.0 * u2 / 90.0 - 31.0 * u2 * u2 / 2520.0
    } else if a < 1.0 {
        sinh_minus_x_cosh(a) / (a * a.sinh().powi(2))
    } else {
        let e = (-a).exp();
        let csch = 2.0 * e / (1.0 - e * e);
        (1.0 - a / a.tanh()) * csch / a
    };
    even * u
}

/// `x = sin(theta) rho(u)` and `cos w = sqrt((1 - x)(1 + x))` without
/// cancellation near `x = 1`.
fn sin_cos_w(theta: f64, u: f64) -> (f64, f64) {
    let s = theta.sin();
    let x = s * rho(u);
    let one_minus_s = 2.0 * (FRAC_PI_4 - 0.5 * theta).sin().powi(2);
    let one_minus_x = one_minus_s + s * one_minus_rho(u);
    (x, (one_minus_x * (1.0 + x)).sqrt())
}

/// `R_k = i((-1)^k theta + k pi)`.
pub fn saddle_monotonic(theta: f64, k: i32) -> Complex64 {
    let sign = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Complex64::new(0.0, multiple_of_pi(k as f64, sign * theta))
}

/// `phi'(R) = sinh R - i sin(theta)` for `phi(R) = cosh R - i R sin(theta)`.
pub fn phase_derivative_monotonic(theta: f64, r: Complex64) -> Complex64 {
    r.sinh() - Complex64::new(0.0, theta.sin())
}

/// `w = asin(sin(theta) u / sinh u)`, with `w(0) = theta`.
pub fn path_w_monotonic(theta: f64, u: f64) -> f64 {
    if u == 0.0 {
        return theta;
    }
    let (x, cw) = sin_cos_w(theta, u);
    x.atan2(cw)
}

/// Tangent `dw/du` along the monotonic path. At the origin the slope is `0`
/// for `theta < pi/2`; at `theta = pi/2` the two one-sided limits are
/// `-1/sqrt(3)` (`Side::Plus`) and `+1/sqrt(3)` (`Side::Minus`).
pub fn path_dw_du_monotonic(theta: f64, u: f64, side: Side) -> f64 {
    let corner = || {
        if theta == FRAC_PI_2 {
            match side {
                Side::Plus => -1.0 / 3f64.sqrt(),
                Side::Minus => 1.0 / 3f64.sqrt(),
            }
        } else {
            0.0
        }
    };
    if u == 0.0 {
        return corner();
    }
    let (_, cw) = sin_cos_w(theta, u);
    if cw == 0.0 {
        // Only reachable when 1 - rho underflows at theta = pi/2.
        return if u > 0.0 { -1.0 / 3f64.sqrt() } else { 1.0 / 3f64.sqrt() };
    }
    theta.sin() * rho_prime(u) / cw
}

pub fn monotonic_point(theta: f64, u: f64, side: Side) -> ContourPoint {
    ContourPoint {
        u,
        w: path_w_monotonic(theta, u),
        dw_du: Slope::Finite(path_dw_du_monotonic(theta, u, side)),
        branch: Branch::MonoMain,
    }
}

/// `(cos w, w, dw/du)` in one pass, for integrands.
pub(crate) fn monotonic_state(theta: f64, u: f64, side: Side) -> (f64, f64, f64) {
    if u == 0.0 {
        return (theta.cos(), theta, path_dw_du_monotonic(theta, 0.0, side));
    }
    let (x, cw) = sin_cos_w(theta, u);
    let slope = if cw == 0.0 {
        path_dw_du_monotonic(theta, u, side)
    } else {
        theta.sin() * rho_prime(u) / cw
    };
    (cw, x.atan2(cw), slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn saddles() {
        assert_eq!(saddle_monotonic(FRAC_PI_4, 0), Complex64::new(0.0, FRAC_PI_4));
        assert_eq!(saddle_monotonic(0.0, 0), Complex64::new(0.0, 0.0));
        let s = saddle_monotonic(PI / 6.0, 1);
        assert_relative_eq!(s.im, 5.0 * PI / 6.0, max_relative = 1e-15);
        assert_eq!(s.re, 0.0);
    }

    #[test]
    fn saddle_derivative_vanishes() {
        for &theta in &[0.0, 0.1, FRAC_PI_4, 1.3, FRAC_PI_2] {
            for k in -3..=3 {
                let d = phase_derivative_monotonic(theta, saddle_monotonic(theta, k));
                assert!(d.norm() <= 1e-14, "theta {theta} k {k}: {}", d.norm());
            }
        }
    }

    #[test]
    fn rho_pieces_are_continuous() {
        for &edge in &[SERIES_CUTOFF, 1.0, 20.0] {
            let (lo, hi) = (edge * (1.0 - 1e-12), edge * (1.0 + 1e-12));
            assert_relative_eq!(rho(lo), rho(hi), max_relative = 1e-11);
            assert_relative_eq!(one_minus_rho(lo), one_minus_rho(hi), max_relative = 1e-11);
            assert_relative_eq!(rho_prime(lo), rho_prime(hi), max_relative = 1e-11);
        }
    }

    #[test]
    fn path_values() {
        assert_eq!(path_w_monotonic(0.7, 0.0), 0.7);
        // asin(sin(pi/4) / sinh 1) from arbitrary-precision arithmetic.
        assert_relative_eq!(
            path_w_monotonic(FRAC_PI_4, 1.0),
            0.645_615_259_871_352_1,
            max_relative = 1e-14
        );
        assert!(path_w_monotonic(FRAC_PI_4, 60.0) < 1e-20);
        assert!(path_w_monotonic(FRAC_PI_4, -60.0) < 1e-20);
    }

    #[test]
    fn slopes_at_origin() {
        assert_eq!(path_dw_du_monotonic(FRAC_PI_4, 0.0, Side::Plus), 0.0);
        assert_eq!(path_dw_du_monotonic(FRAC_PI_4, 0.0, Side::Minus), 0.0);
        assert_relative_eq!(
            path_dw_du_monotonic(FRAC_PI_2, 0.0, Side::Plus),
            -1.0 / 3f64.sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            path_dw_du_monotonic(FRAC_PI_2, 0.0, Side::Minus),
            1.0 / 3f64.sqrt(),
            max_relative = 1e-15
        );
        // One-sided limits are approached continuously.
        assert_relative_eq!(
            path_dw_du_monotonic(FRAC_PI_2, 1e-6, Side::Plus),
            -1.0 / 3f64.sqrt(),
            max_relative = 1e-6
        );
    }

    #[test]
    fn slope_matches_finite_difference() {
        let h = 1e-5;
        for &(theta, u) in &[(FRAC_PI_4, 2.0), (0.3, -1.1), (FRAC_PI_2, 0.4), (1.3, 0.005)] {
            let fd = (path_w_monotonic(theta, u + h) - path_w_monotonic(theta, u - h)) / (2.0 * h);
            let d = path_dw_du_monotonic(theta, u, Side::Plus);
            assert!((fd - d).abs() < 1e-8, "theta {theta} u {u}: {fd} vs {d}");
        }
    }

    proptest! {
        #[test]
        fn even_path_odd_slope(theta in 0.0f64..FRAC_PI_2 - 1e-4, u in -30.0f64..30.0) {
            prop_assert_eq!(path_w_monotonic(theta, u), path_w_monotonic(theta, -u));
            let a = path_dw_du_monotonic(theta, u, Side::Plus);
            let b = path_dw_du_monotonic(theta, -u, Side::Minus);
            prop_assert_eq!(a, -b);
        }

        #[test]
        fn w_between_zero_and_theta(theta in 0.01f64..FRAC_PI_2 - 1e-4, u in 1e-3f64..40.0) {
            let w = path_w_monotonic(theta, u);
            prop_assert!(w > 0.0 && w <= theta);
        }
    }
}
