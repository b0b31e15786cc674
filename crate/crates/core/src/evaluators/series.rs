use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{check_y, precision_guard, EvaluatorConfig};
use crate::error::{Error, Result};
use crate::gamma::complex_log_gamma;
use crate::order::OrderSpec;
use crate::outcome::{EvalOutcome, Method};
use crate::scaled::ScaledComplex;

const MAX_TERMS: usize = 100_000;
const QUIET_TERMS: usize = 3;

/// `I_nu(y) = exp(log_prefactor) * sum`, with `abs_sum = sum |terms|`.
struct ISeries {
    log_prefactor: Complex64,
    sum: Complex64,
    abs_sum: f64,
    terms: usize,
}

impl ISeries {
    fn value(&self) -> ScaledComplex {
        ScaledComplex::from_log(self.log_prefactor).mul_complex(self.sum)
    }

    /// Rounding bound: the sum's own accumulation plus the absolute error of
    /// a large complex logarithm.
    fn rounding(&self) -> ScaledComplex {
        let magnitude = self.abs_sum + 4.0 * self.log_prefactor.norm() * self.sum.norm();
        ScaledComplex::from_polar_log(self.log_prefactor.re + magnitude.ln(), 0.0)
            .mul_complex(Complex64::new(f64::EPSILON, 0.0))
    }
}

fn i_series(nu: Complex64, y: f64, stop_rel: f64, shift: f64) -> Result<ISeries> {
    let log_prefactor = nu * (0.5 * y).ln() - complex_log_gamma(nu + 1.0)? - shift;
    let q = 0.25 * y * y;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut abs_sum = 1.0;
    let mut quiet = 0;
    for m in 1..MAX_TERMS {
        term *= q / ((nu + m as f64) * m as f64);
        sum += term;
        abs_sum += term.norm();
        if term.norm() < stop_rel * sum.norm() {
            quiet += 1;
            if quiet == QUIET_TERMS {
                return Ok(ISeries {
                    log_prefactor,
                    sum,
                    abs_sum,
                    terms: m + 1,
                });
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::invalid("y", y, "power series did not settle"))
}

/// `ln sin(pi nu)` without overflow for large `|t|`.
fn ln_sin_pi(nu: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    if nu.im >= 0.0 {
        // sin(pi nu) = (i/2) e^{-i pi nu} (1 - e^{2 i pi nu})
        Complex64::new(0.5f64.ln(), FRAC_PI_2) - i * PI * nu + (1.0 - (2.0 * i * PI * nu).exp()).ln()
    } else {
        Complex64::new(0.5f64.ln(), -FRAC_PI_2) + i * PI * nu + (1.0 - (-2.0 * i * PI * nu).exp()).ln()
    }
}

/// `K_nu(y) = (pi/2) (I_{-nu}(y) - I_nu(y)) / sin(nu pi)` from the power
/// series of `I`, with every large factor kept as a logarithm.
pub fn k_series(nu: OrderSpec, y: f64, cfg: &EvaluatorConfig) -> Result<EvalOutcome> {
    check_y(y)?;
    cfg.validate()?;
    if nu.is_integer() {
        return Err(Error::IntegerOrder { r: nu.r, t: nu.t });
    }
    let z = Complex64::new(nu.r, nu.t);
    let stop = cfg.tol_rel * 1e-2;
    let shift = cfg.frame_shift;
    let minus = i_series(-z, y, stop, shift)?;
    let plus = i_series(z, y, stop, shift)?;

    let difference = minus.value() - plus.value();
    if difference.is_zero() {
        return Err(Error::PrecisionExhausted {
            estimated_rel_error: f64::INFINITY,
        });
    }
    let rounding = minus.rounding() + plus.rounding();
    let ln_sin = ln_sin_pi(z);
    let rel = rounding.abs_ratio(&difference) + f64::EPSILON * (4.0 + ln_sin.norm());
    precision_guard(rel)?;

    let factor = ScaledComplex::from_log(Complex64::new(FRAC_PI_2.ln(), 0.0) - ln_sin + shift);
    let value = difference * factor;
    let err = rel + stop;
    let abs_error = ScaledComplex::from_polar_log(value.ln_abs() + err.ln(), 0.0);
    Ok(EvalOutcome::new(
        value,
        abs_error,
        minus.terms + plus.terms,
        Method::Series,
    ))
}
