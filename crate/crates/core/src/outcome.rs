use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::scaled::ScaledComplex;

/// Which evaluator produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Classical integral `1/2 ∫ exp(-y cosh R + nu R) dR` on a horizontal line.
    Direct,
    /// `I_{-nu}` / `I_nu` power series.
    Series,
    /// Steepest-descent path through `i theta` (`t <= y`).
    SteepestMonotonic,
    /// Single-saddle representation over `[mu_-, inf)` and `[-pi/2, 3pi/2]`.
    Thm13,
    /// Two-branch representation folded onto `L+`.
    Prop33,
    AsymMonotonic,
    AsymOscillatory,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Direct,
        Method::Series,
        Method::SteepestMonotonic,
        Method::Thm13,
        Method::Prop33,
        Method::AsymMonotonic,
        Method::AsymOscillatory,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Series => "series",
            Method::SteepestMonotonic => "steepest_monotonic",
            Method::Thm13 => "thm13",
            Method::Prop33 => "prop33",
            Method::AsymMonotonic => "asym_monotonic",
            Method::AsymOscillatory => "asym_oscillatory",
        }
    }

    pub fn is_asymptotic(&self) -> bool {
        matches!(self, Method::AsymMonotonic | Method::AsymOscillatory)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "direct" => Ok(Method::Direct),
            "series" => Ok(Method::Series),
            "steepest" | "steepest_monotonic" => Ok(Method::SteepestMonotonic),
            "thm13" => Ok(Method::Thm13),
            "prop33" => Ok(Method::Prop33),
            "asym_monotonic" => Ok(Method::AsymMonotonic),
            "asym_oscillatory" => Ok(Method::AsymOscillatory),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Warning {
    /// `theta` within 1e-6 of `pi/2` without being exactly `pi/2`; the
    /// `theta < pi/2` asymptotic blows up like `cos(theta)^(-1/2)` there.
    NearTransition { theta: f64 },
}

/// Result of one evaluation of `K_nu(y)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOutcome {
    pub value: ScaledComplex,
    /// Absolute error estimate in units of `exp(value.log_scale())`.
    pub abs_error_scaled: f64,
    pub evaluations: usize,
    pub method: Method,
    /// Set when the order had `t < 0` and the value was obtained by
    /// conjugating the `|t|` evaluation.
    pub conjugated: bool,
    pub warnings: Vec<Warning>,
}

impl EvalOutcome {
    pub(crate) fn new(
        value: ScaledComplex,
        abs_error: ScaledComplex,
        evaluations: usize,
        method: Method,
    ) -> Self {
        let abs_error_scaled = if value.is_zero() {
            abs_error.to_complex().norm()
        } else {
            abs_error.in_frame(value.log_scale()).norm()
        };
        EvalOutcome {
            value,
            abs_error_scaled,
            evaluations: evaluations.max(1),
            method,
            conjugated: false,
            warnings: Vec::new(),
        }
    }

    pub fn rel_error(&self) -> f64 {
        let m = self.value.mantissa().norm();
        if m == 0.0 {
            f64::INFINITY
        } else {
            self.abs_error_scaled / m
        }
    }

    pub fn conjugate(mut self) -> Self {
        self.value = self.value.conj();
        self.conjugated = !self.conjugated;
        self
    }
}
