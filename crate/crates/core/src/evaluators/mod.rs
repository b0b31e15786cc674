//! Evaluators of `K_nu(y)` for real `y > 0`.
//!
//! Every evaluator returns its value in the scaled frame. [`evaluate`] is
//! the public entry point: it maps `t < 0` onto `|t|` and conjugates the
//! result, then dispatches on [`Method`].

mod direct;
mod monotonic;
mod oscillatory;
mod series;

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

pub use direct::k_direct;
pub use monotonic::k_monotonic_sd;
pub use oscillatory::{k_oscillatory_prop33, k_oscillatory_thm13};
pub use series::k_series;

use crate::asymptotics::{asym_monotonic, asym_oscillatory};
use crate::error::{Error, Result};
use crate::order::{regime_from_physical, OrderSpec, Regime, RegimeSpec};
use crate::outcome::{EvalOutcome, Method, Warning};
use crate::quadrature::{Integrator, Tolerance};

/// Relative rounding error above which an evaluation is refused.
pub const PRECISION_FLOOR: f64 = 1e-6;

/// Distance from `pi/2` inside which `theta` draws a warning.
pub const TRANSITION_WARNING_BAND: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaluatorConfig {
    /// Target relative accuracy of each integral.
    pub tol_rel: f64,
    /// Integrand evaluations allowed per integral.
    pub max_evals: usize,
    /// Added to `chi` in the oscillatory representations; fault injection.
    #[doc(hidden)]
    #[serde(default)]
    pub chi_perturbation: f64,
    /// Moves the integrands into the frame `exp(frame_shift)`; the result
    /// must not change.
    #[doc(hidden)]
    #[serde(default)]
    pub frame_shift: f64,
}

impl Default for EvaluatorConfig {
    fn default() -> Self {
        EvaluatorConfig {
            tol_rel: 1e-12,
            max_evals: 200_000,
            chi_perturbation: 0.0,
            frame_shift: 0.0,
        }
    }
}

impl EvaluatorConfig {
    pub fn with_tol(tol_rel: f64) -> Self {
        EvaluatorConfig {
            tol_rel,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol_rel > 0.0 && self.tol_rel < 1.0) {
            return Err(Error::invalid("tol_rel", self.tol_rel, "must lie in (0, 1)"));
        }
        if self.max_evals == 0 {
            return Err(Error::invalid("max_evals", 0.0, "must be positive"));
        }
        Ok(())
    }

    pub(crate) fn integrator(&self, rel: f64) -> Integrator {
        Integrator::new(Tolerance::relative(rel), self.max_evals)
    }
}

pub(crate) fn check_y(y: f64) -> Result<()> {
    if y > 0.0 && y.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveArgument(y))
    }
}

/// Method used when none is requested.
pub fn default_method(regime: &RegimeSpec) -> Method {
    match regime.regime {
        Regime::Monotonic { .. } => Method::SteepestMonotonic,
        Regime::Oscillatory { .. } => Method::Thm13,
    }
}

/// `K_{r + i t}(y)` for `(y, t)` given through a regime parametrization.
///
/// `theta` and `mu` are used as stored, so the boundary `theta = pi/2`
/// selects the exact-boundary asymptotic branch.
pub fn evaluate_regime(
    r: f64,
    spec: &RegimeSpec,
    method: Method,
    cfg: &EvaluatorConfig,
) -> Result<EvalOutcome> {
    cfg.validate()?;
    let y = spec.y;
    let nu = OrderSpec::new(r, spec.t());
    let wrong_regime = |needs: &'static str| Error::invalid("method", nu.t, needs);
    let mut outcome = match (method, spec.regime) {
        (Method::Direct, _) => k_direct(nu, y, cfg)?,
        (Method::Series, _) => k_series(nu, y, cfg)?,
        (Method::SteepestMonotonic, Regime::Monotonic { theta }) => k_monotonic_sd(r, theta, y, cfg)?,
        (Method::AsymMonotonic, Regime::Monotonic { theta }) => {
            asym_monotonic(r, theta, y)?.into_outcome(Method::AsymMonotonic)
        }
        (Method::Thm13, Regime::Oscillatory { mu }) => k_oscillatory_thm13(r, mu, y, cfg)?,
        (Method::Prop33, Regime::Oscillatory { mu }) => k_oscillatory_prop33(r, mu, y, cfg)?,
        (Method::AsymOscillatory, Regime::Oscillatory { mu }) => {
            asym_oscillatory(r, mu, y)?.into_outcome(Method::AsymOscillatory)
        }
        (Method::SteepestMonotonic | Method::AsymMonotonic, _) => {
            return Err(wrong_regime("method requires t <= y"))
        }
        (Method::Thm13 | Method::Prop33 | Method::AsymOscillatory, _) => {
            return Err(wrong_regime("method requires t > y"))
        }
    };
    if let Regime::Monotonic { theta } = spec.regime {
        if theta != FRAC_PI_2 && FRAC_PI_2 - theta < TRANSITION_WARNING_BAND {
            outcome.warnings.push(Warning::NearTransition { theta });
        }
    }
    Ok(outcome)
}

/// `K_nu(y)` by `method`. Orders with `t < 0` are evaluated at `|t|` and
/// conjugated; the returned outcome records this.
pub fn evaluate(nu: OrderSpec, y: f64, method: Method, cfg: &EvaluatorConfig) -> Result<EvalOutcome> {
    let (canonical, conjugate) = nu.canonical();
    let spec = regime_from_physical(y, canonical.t)?;
    let outcome = evaluate_regime(canonical.r, &spec, method, cfg)?;
    Ok(if conjugate { outcome.conjugate() } else { outcome })
}

/// Refuses a result whose rounding error, relative to its size, exceeds
/// [`PRECISION_FLOOR`].
pub(crate) fn precision_guard(estimated_rel_error: f64) -> Result<()> {
    if estimated_rel_error.is_finite() && estimated_rel_error <= PRECISION_FLOOR {
        Ok(())
    } else {
        Err(Error::PrecisionExhausted { estimated_rel_error })
    }
}
