use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::{check_y, EvaluatorConfig};
use crate::contour::monotonic_state as state;
use crate::contour::Side;
use crate::error::{Error, Result};
use crate::outcome::{EvalOutcome, Method};
use crate::scaled::ScaledComplex;

const UNDERFLOW_EXPONENT: f64 = -745.0;

/// `1/2 ∫ exp(-y(cosh u cos w + w sin θ)) e^{ru} e^{irw} (1 + i w') du`
/// along `w = asin(sin θ · u / sinh u)`, with `exp(-y(cos θ + θ sin θ))`
/// carried in the log scale. The two half-lines are integrated separately,
/// which also respects the slope jump at `u = 0` when `θ = π/2`.
pub fn k_monotonic_sd(r: f64, theta: f64, y: f64, cfg: &EvaluatorConfig) -> Result<EvalOutcome> {
    check_y(y)?;
    cfg.validate()?;
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::invalid("theta", theta, "must lie in [0, pi/2]"));
    }
    let s = theta.sin();
    let cos_theta = (FRAC_PI_2 - theta).sin();
    let base = cos_theta + theta * s;
    let shift = cfg.frame_shift;
    let frame = -y * base + shift;

    let integrand = |side: Side| {
        move |v: f64| {
            let u = match side {
                Side::Plus => v,
                Side::Minus => -v,
            };
            let (cos_w, w, slope) = state(theta, u, side);
            let height = u.cosh() * cos_w + (w - theta) * s - cos_theta;
            let log_mod = -y * height + r * u - shift;
            if log_mod < UNDERFLOW_EXPONENT {
                return Complex64::new(0.0, 0.0);
            }
            Complex64::from_polar(log_mod.exp(), r * w) * Complex64::new(1.0, slope)
        }
    };

    // The height is only known to ~eps * y * base; asking for more makes the
    // adaptive rule chase rounding noise.
    let noise = 4.0 * f64::EPSILON * (1.0 + y * base);
    let integ = cfg.integrator((0.5 * cfg.tol_rel).max(noise));
    // Inverse width of the peak at u = 0: quadratic for theta < pi/2, cubic
    // at the boundary.
    let decay = (y * cos_theta).sqrt().max(y.cbrt()).max(1.0);
    let plus = integ.semi_infinite(integrand(Side::Plus), 0.0, decay)?;
    // du = -dv on the mirrored half-line; the orientation flips back.
    let minus = integ.semi_infinite(integrand(Side::Minus), 0.0, decay)?;

    let value = 0.5 * (plus.value + minus.value);
    let l1 = 0.5 * (plus.abs_integral + minus.abs_integral);
    let rounding = f64::EPSILON * (10.0 + y * base) * l1;
    let err = 0.5 * (plus.abs_error + minus.abs_error) + rounding;

    Ok(EvalOutcome::new(
        ScaledComplex::new(value, frame),
        ScaledComplex::new(Complex64::new(err, 0.0), frame),
        plus.evaluations + minus.evaluations,
        Method::SteepestMonotonic,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluators::k_direct;
    use crate::order::OrderSpec;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn cfg() -> EvaluatorConfig {
        EvaluatorConfig::default()
    }

    fn direct(r: f64, theta: f64, y: f64) -> ScaledComplex {
        k_direct(OrderSpec::new(r, y * theta.sin()), y, &cfg()).unwrap().value
    }

    #[test]
    fn theta_zero_is_k0() {
        let sd = k_monotonic_sd(0.0, 0.0, 5.0, &cfg()).unwrap();
        assert!(sd.value.rel_diff(&direct(0.0, 0.0, 5.0)) <= 1e-10);
    }

    #[test]
    fn matches_direct_at_quarter_pi() {
        let sd = k_monotonic_sd(0.5, FRAC_PI_4, 10.0, &cfg()).unwrap();
        assert!(sd.value.rel_diff(&direct(0.5, FRAC_PI_4, 10.0)) <= 1e-9);
    }

    #[test]
    fn boundary_theta_matches_direct() {
        let sd = k_monotonic_sd(0.2, FRAC_PI_2, 8.0, &cfg()).unwrap();
        assert!(sd.value.rel_diff(&direct(0.2, FRAC_PI_2, 8.0)) <= 1e-9);
    }

    #[test]
    fn boundary_at_large_argument() {
        for &y in &[1e4, 1e5] {
            let out = k_monotonic_sd(0.0, FRAC_PI_2, y, &cfg()).unwrap();
            assert!(out.rel_error() < 1e-9, "y {y}: {}", out.rel_error());
        }
    }

    #[test]
    fn frame_shift_is_invisible() {
        let a = k_monotonic_sd(1.0, PI / 6.0, 20.0, &cfg()).unwrap();
        let shifted = EvaluatorConfig {
            frame_shift: 100.0,
            ..cfg()
        };
        let b = k_monotonic_sd(1.0, PI / 6.0, 20.0, &shifted).unwrap();
        assert!(a.value.rel_diff(&b.value) < 1e-13);
    }

    #[test]
    fn huge_y_stays_scaled() {
        let out = k_monotonic_sd(0.0, PI / 3.0, 1e4, &cfg()).unwrap();
        assert!(out.value.to_complex().norm() == 0.0);
        assert!(out.value.ln_abs() < -1e4);
        assert!(out.rel_error() < 1e-9);
    }
}
