use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::{check_y, precision_guard, EvaluatorConfig};
use crate::error::Result;
use crate::order::OrderSpec;
use crate::outcome::{EvalOutcome, Method};
use crate::scaled::ScaledComplex;

/// Below this log-modulus the integrand is zero in `f64` anyway.
const UNDERFLOW_EXPONENT: f64 = -745.0;

/// Height of the horizontal line `Im R = alpha` the integral runs along.
///
/// Moving off the real axis towards the saddles removes most of the
/// `exp(|t| alpha)` cancellation; the line must stay below `pi/2`, and the
/// margin `eps_b` keeps the integrand from flattening out near `t = y`.
fn line_height(y: f64, t: f64) -> f64 {
    let a = t.abs();
    let margin = (6.0 / y).cbrt().min(0.5);
    let alpha = if a <= y {
        (a / y).asin().min(FRAC_PI_2 - margin)
    } else {
        FRAC_PI_2 - (1.0 / (a - y)).clamp(1e-6, margin)
    };
    alpha.copysign(t)
}

/// `1/2 ∫ exp(-y cosh R + nu R) dR` over `Im R = alpha`, split at `Re R = 0`.
///
/// Fails with `PrecisionExhausted` when `∫|f|` is so much larger than the
/// result that rounding alone exceeds a relative `1e-6`.
pub fn k_direct(nu: OrderSpec, y: f64, cfg: &EvaluatorConfig) -> Result<EvalOutcome> {
    check_y(y)?;
    cfg.validate()?;
    let (r, t) = (nu.r, nu.t);
    let alpha = line_height(y, t);
    let (sin_a, cos_a) = alpha.sin_cos();
    let shift = cfg.frame_shift;
    let frame = -y * cos_a - t * alpha + shift;

    // `side` is +1 for u >= 0 and -1 for the mirrored half-line.
    let integrand = |side: f64| {
        move |v: f64| {
            let u = side * v;
            let half = (0.5 * u).sinh();
            let log_mod = -y * cos_a * 2.0 * half * half + r * u - shift;
            if log_mod < UNDERFLOW_EXPONENT {
                return Complex64::new(0.0, 0.0);
            }
            let phase = -y * sin_a * u.sinh() + t * u + r * alpha;
            Complex64::from_polar(log_mod.exp(), phase)
        }
    };

    let integ = cfg.integrator(0.5 * cfg.tol_rel);
    let decay = (y * cos_a).max(1.0);
    let plus = integ.semi_infinite(integrand(1.0), 0.0, decay)?;
    let minus = integ.semi_infinite(integrand(-1.0), 0.0, decay)?;

    let value = 0.5 * (plus.value + minus.value);
    let l1 = 0.5 * (plus.abs_integral + minus.abs_integral);
    let rounding = 10.0 * f64::EPSILON * l1;
    let err = 0.5 * (plus.abs_error + minus.abs_error) + rounding;
    precision_guard(rounding / value.norm())?;

    Ok(EvalOutcome::new(
        ScaledComplex::new(value, frame),
        ScaledComplex::new(Complex64::new(err, 0.0), frame),
        plus.evaluations + minus.evaluations,
        Method::Direct,
    ))
}
