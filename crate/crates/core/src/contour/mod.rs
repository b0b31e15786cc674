//! Saddle points and steepest-descent curves of the phase
//! `phi(R) = cosh R - i R (t / y)` in both regimes.

mod monotonic;
mod oscillatory;
mod point;

pub use monotonic::{
    monotonic_point, path_dw_du_monotonic, path_w_monotonic, phase_derivative_monotonic,
    saddle_monotonic, Side,
};
pub use oscillatory::{
    chi, mu_minus, mu_minus_residual, path_case2, phase_derivative_oscillatory, psi_case2, saddle_oscillatory,
    Case2Geometry, PhaseData, SaddleSign,
};
pub use point::{Branch, ContourPoint, Slope};

pub(crate) use monotonic::monotonic_state;
pub(crate) use oscillatory::BranchState;

use crate::order::{Regime, RegimeSpec};

/// `|Im(-phi(u + i w)) - Im(-phi(saddle))|` for the principal saddle of the
/// regime. Zero exactly on a steepest-descent curve.
pub fn im_phase_residual(regime: &RegimeSpec, point: &ContourPoint) -> f64 {
    match regime.regime {
        Regime::Monotonic { theta } => {
            // Im(-phi) vanishes at the saddle i*theta.
            (-point.u.sinh() * point.w.sin() + point.u * theta.sin()).abs()
        }
        Regime::Oscillatory { mu } => {
            let ch = mu.cosh();
            let at_saddle = -mu.sinh() + mu * ch;
            (-point.u.sinh() * point.w.sin() + point.u * ch - at_saddle).abs()
        }
    }
}

/// `Im(-phi)` at the principal saddle: `0` (monotonic) or `-chi / y`.
pub fn saddle_phase(regime: &RegimeSpec) -> f64 {
    match regime.regime {
        Regime::Monotonic { .. } => 0.0,
        Regime::Oscillatory { mu } => -sinh_minus_x_cosh(mu),
    }
}

/// Low part of `pi` beyond `f64::consts::PI`.
const PI_LO: f64 = 1.224_646_799_147_353_2e-16;

/// `m * pi + offset` rounded once, so saddle ordinates far from the origin
/// are the nearest doubles to their exact values.
pub(crate) fn multiple_of_pi(m: f64, offset: f64) -> f64 {
    let hi = m * std::f64::consts::PI;
    let lo = m.mul_add(std::f64::consts::PI, -hi) + m * PI_LO;
    let sum = hi + offset;
    // Two-sum error of `hi + offset`.
    let bv = sum - hi;
    let err = (hi - (sum - bv)) + (offset - bv);
    sum + (err + lo)
}

/// `sinh x - x` without cancellation for small `x`.
pub(crate) fn sinh_minus_x(x: f64) -> f64 {
    if x.abs() >= 1.0 {
        return x.sinh() - x;
    }
    let x2 = x * x;
    let mut term = x * x2 / 6.0;
    let mut sum = term;
    let mut k = 2.0;
    while term.abs() > f64::EPSILON * sum.abs() * 0.5 {
        term *= x2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
        k += 1.0;
    }
    sum
}

/// `sinh x - x cosh x = -sum_k 2k x^(2k+1) / (2k+1)!`.
pub(crate) fn sinh_minus_x_cosh(x: f64) -> f64 {
    if x.abs() >= 1.0 {
        return x.sinh() - x * x.cosh();
    }
    let x2 = x * x;
    // power = x^(2k+1) / (2k+1)!
    let mut power = x * x2 / 6.0;
    let mut sum = -2.0 * power;
    let mut k = 2.0;
    loop {
        power *= x2 / ((2.0 * k) * (2.0 * k + 1.0));
        let term = -2.0 * k * power;
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs() * 0.5 {
            break;
        }
        k += 1.0;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn series_helpers_match_direct_forms() {
        for &x in &[0.9, 0.5, 0.1, -0.3] {
            assert_relative_eq!(sinh_minus_x(x), x.sinh() - x, max_relative = 1e-12);
            assert_relative_eq!(
                sinh_minus_x_cosh(x),
                x.sinh() - x * x.cosh(),
                max_relative = 1e-12
            );
        }
        assert_relative_eq!(sinh_minus_x(1e-5), 1e-15 / 6.0, max_relative = 1e-14);
        assert_relative_eq!(sinh_minus_x_cosh(1e-5), -1e-15 / 3.0, max_relative = 1e-14);
        assert_eq!(sinh_minus_x_cosh(0.0), 0.0);
    }

    #[test]
    fn both_helpers_are_odd() {
        for &x in &[0.01, 0.7, 1.5, 4.0] {
            assert_eq!(sinh_minus_x(-x), -sinh_minus_x(x));
            assert_eq!(sinh_minus_x_cosh(-x), -sinh_minus_x_cosh(x));
        }
    }
}
