//! Leading-order large-`y` forms of `K_{r + i t}(y)` and residuals of exact
//! values against them.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::contour::chi;
use crate::error::{Error, Result};
use crate::gamma::GAMMA_ONE_THIRD;
use crate::outcome::{EvalOutcome, Method};
use crate::scaled::ScaledComplex;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticValue {
    pub value: ScaledComplex,
    /// `ln |prefactor|`.
    pub prefactor_scale: f64,
    /// Everything except the bracket; `value = prefactor * bracket`.
    pub prefactor: ScaledComplex,
    /// `1` in the monotonic regime.
    pub bracket: Complex64,
}

impl AsymptoticValue {
    fn new(prefactor: ScaledComplex, bracket: Complex64) -> Self {
        AsymptoticValue {
            value: prefactor.mul_complex(bracket),
            prefactor_scale: prefactor.ln_abs(),
            prefactor,
            bracket,
        }
    }

    pub fn into_outcome(self, method: Method) -> EvalOutcome {
        EvalOutcome::new(self.value, ScaledComplex::ZERO, 1, method)
    }
}

fn check(y: f64) -> Result<()> {
    if y > 0.0 && y.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveArgument(y))
    }
}

/// `Gamma(1/3) / (2^{2/3} 3^{1/6})`.
fn boundary_constant() -> f64 {
    GAMMA_ONE_THIRD / (2f64.powf(2.0 / 3.0) * 3f64.powf(1.0 / 6.0))
}

/// `t = y sin(theta)`. For `theta < pi/2`:
/// `sqrt(pi / (2 y cos θ)) exp(-y(cos θ + θ sin θ)) e^{irθ}`;
/// exactly at `theta = pi/2`: `exp(-πy/2 + iπr/2) y^{-1/3} Γ(1/3) / (2^{2/3} 3^{1/6})`.
pub fn asym_monotonic(r: f64, theta: f64, y: f64) -> Result<AsymptoticValue> {
    check(y)?;
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::invalid("theta", theta, "must lie in [0, pi/2]"));
    }
    let prefactor = if theta == FRAC_PI_2 {
        let log_mod = -FRAC_PI_2 * y - y.ln() / 3.0 + boundary_constant().ln();
        ScaledComplex::from_polar_log(log_mod, FRAC_PI_2 * r)
    } else {
        let cos_theta = (FRAC_PI_2 - theta).sin();
        let log_mod =
            0.5 * (PI / (2.0 * y * cos_theta)).ln() - y * (cos_theta + theta * theta.sin());
        ScaledComplex::from_polar_log(log_mod, r * theta)
    };
    Ok(AsymptoticValue::new(prefactor, Complex64::new(1.0, 0.0)))
}

/// `cosh(rμ) sin(π/4 − χ) − i sinh(rμ) cos(π/4 − χ)`.
pub fn oscillatory_bracket(r: f64, mu: f64, chi: f64) -> Complex64 {
    let a = FRAC_PI_4 - chi;
    Complex64::new((r * mu).cosh() * a.sin(), -(r * mu).sinh() * a.cos())
}

/// The same bracket as a sum of the two saddle contributions:
/// `(e^{iχ}(1+i)e^{−rμ} + e^{−iχ}(1−i)e^{rμ}) / (2√2)`.
pub fn bracket_from_saddles(r: f64, mu: f64, chi: f64) -> Complex64 {
    let plus = Complex64::cis(chi) * Complex64::new(1.0, 1.0) * (-r * mu).exp();
    let minus = Complex64::cis(-chi) * Complex64::new(1.0, -1.0) * (r * mu).exp();
    (plus + minus) / (2.0 * SQRT_2)
}

/// `t = y cosh(mu)`:
/// `sqrt(2π / (y sinh μ)) exp(-y (π/2) cosh μ + i r π/2)` times the bracket.
pub fn asym_oscillatory(r: f64, mu: f64, y: f64) -> Result<AsymptoticValue> {
    check(y)?;
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::invalid("mu", mu, "must be positive and finite"));
    }
    let log_mod = 0.5 * (2.0 * PI / (y * mu.sinh())).ln() - y * FRAC_PI_2 * mu.cosh();
    let prefactor = ScaledComplex::from_polar_log(log_mod, FRAC_PI_2 * r);
    Ok(AsymptoticValue::new(prefactor, oscillatory_bracket(r, mu, chi(y, mu))))
}

/// `|exact / asym − 1|`, in the scaled frame.
pub fn residual_monotonic(r: f64, theta: f64, y: f64, exact: &EvalOutcome) -> Result<f64> {
    let asym = asym_monotonic(r, theta, y)?;
    Ok(exact.value.rel_diff(&asym.value))
}

/// `|exact − asym| / (|prefactor| cosh(|r| μ))`. Normalizing by the
/// envelope keeps the residual meaningful where the bracket vanishes.
pub fn residual_oscillatory(r: f64, mu: f64, y: f64, exact: &EvalOutcome) -> Result<f64> {
    let asym = asym_oscillatory(r, mu, y)?;
    let diff = exact.value - asym.value;
    if diff.is_zero() {
        return Ok(0.0);
    }
    Ok((diff.ln_abs() - asym.prefactor_scale).exp() / (r.abs() * mu).cosh())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::LN_10;

    #[test]
    fn theta_zero_is_classical_leading_term() {
        for &y in &[1.0, 10.0, 300.0] {
            let a = asym_monotonic(0.0, 0.0, y).unwrap();
            let expected = 0.5 * (PI / (2.0 * y)).ln() - y;
            assert_relative_eq!(a.value.ln_abs(), expected, max_relative = 1e-15);
            assert_eq!(a.value.arg(), 0.0);
        }
    }

    #[test]
    fn boundary_value_at_one() {
        // e^{-pi/2} Gamma(1/3) / (2^{2/3} 3^{1/6}), high-precision reference.
        let a = asym_monotonic(0.0, FRAC_PI_2, 1.0).unwrap();
        assert_relative_eq!(a.value.to_complex().re, 0.292_124_309_934_766_86, max_relative = 1e-14);
    }

    #[test]
    fn order_real_part_only_rotates() {
        let theta = PI / 3.0;
        let a = asym_monotonic(1.0, theta, 100.0).unwrap();
        let b = asym_monotonic(0.0, theta, 100.0).unwrap();
        assert_relative_eq!(a.value.ln_abs(), b.value.ln_abs(), max_relative = 1e-15);
        let expected = -100.0 * (theta.cos() + theta * theta.sin()) + 0.5 * (PI / (200.0 * theta.cos())).ln();
        assert_relative_eq!(a.value.ln_abs(), expected, max_relative = 1e-13);
    }

    #[test]
    fn branch_diverges_towards_boundary() {
        let y = 50.0;
        let mut last = 0.0;
        for k in 2..8 {
            let theta = FRAC_PI_2 - 10f64.powi(-k);
            let a = asym_monotonic(0.0, theta, y).unwrap();
            let ratio = a.value.ln_abs() + y * FRAC_PI_2;
            assert!(ratio > last);
            last = ratio;
        }
    }

    #[test]
    fn imaginary_order_bracket() {
        let a = asym_oscillatory(0.0, LN_10, 10.0).unwrap();
        let expected = (FRAC_PI_4 + 66.780_547_196_199_31).sin();
        assert_relative_eq!(a.bracket.re, expected, max_relative = 1e-12);
        assert_eq!(a.bracket.im, 0.0);
        assert!(a.bracket.norm() <= 1.0);
    }

    proptest! {
        #[test]
        fn bracket_identity(r in -2.0f64..2.0, mu in 0.01f64..4.0, chi in -1e3f64..0.0) {
            let a = oscillatory_bracket(r, mu, chi);
            let b = bracket_from_saddles(r, mu, chi);
            let scale = (r * mu).cosh();
            prop_assert!((a - b).norm() <= 1e-13 * scale * (1.0 + chi.abs() * 1e-3));
        }
    }
}
