//! Evaluation of the modified Bessel function `K_{r+it}(y)` for real `y > 0`
//! along steepest-descent contours, with oracles and asymptotic forms.
//!
//! All values are returned as [`ScaledComplex`] so that magnitudes like
//! `exp(-pi t / 2)` never underflow.

// Negated comparisons are used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod contour;
mod error;
pub mod evaluators;
pub mod gamma;
mod order;
mod outcome;
pub mod quadrature;
pub mod roots;
mod scaled;

pub use asymptotics::{
    asym_monotonic, asym_oscillatory, residual_monotonic, residual_oscillatory, AsymptoticValue,
};
pub use error::{Error, Result};
pub use evaluators::{evaluate, evaluate_regime, EvaluatorConfig};
pub use gamma::complex_log_gamma;
pub use num_complex::Complex64;
pub use order::{regime_from_physical, OrderSpec, Regime, RegimeSpec};
pub use outcome::{EvalOutcome, Method, Warning};
pub use quadrature::{QuadratureError, QuadratureOutcome, Tolerance};
pub use scaled::ScaledComplex;
