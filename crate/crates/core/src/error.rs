use thiserror::Error;

use crate::quadrature::QuadratureError;

/// Errors raised by the evaluators and geometry routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("argument y must be positive and finite, got {0}")]
    NonPositiveArgument(f64),

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("integer order unsupported (nu = {r} + {t}i)")]
    IntegerOrder { r: f64, t: f64 },

    #[error("log-gamma evaluated at a pole ({re} + {im}i)")]
    Pole { re: f64, im: f64 },

    /// Rounding noise would dominate the result.
    #[error("precision exhausted: estimated relative rounding error {estimated_rel_error:.3e}")]
    PrecisionExhausted { estimated_rel_error: f64 },

    #[error("root not bracketed on [{lo}, {hi}]")]
    RootNotBracketed { lo: f64, hi: f64 },

    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
