//! Order `nu = r + i t` and the regime parametrization of `t` against `y`.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex order `nu = r + i t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderSpec {
    pub r: f64,
    pub t: f64,
}

impl OrderSpec {
    pub fn new(r: f64, t: f64) -> Self {
        OrderSpec { r, t }
    }

    /// `K_{conj nu}(y) = conj K_nu(y)` for real `y`, so only `t >= 0` needs
    /// a contour. Returns the order with `|t|` and whether the caller must
    /// conjugate the result.
    pub fn canonical(self) -> (OrderSpec, bool) {
        if self.t < 0.0 {
            (OrderSpec::new(self.r, -self.t), true)
        } else {
            (self, false)
        }
    }

    pub fn negated(self) -> OrderSpec {
        OrderSpec::new(-self.r, -self.t)
    }

    pub fn is_integer(&self) -> bool {
        self.t == 0.0 && self.r.fract() == 0.0
    }
}

/// Which side of `t = y` the order lies on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Regime {
    /// `t = y sin(theta)`, `0 <= theta <= pi/2`.
    Monotonic { theta: f64 },
    /// `t = y cosh(mu)`, `mu > 0`.
    Oscillatory { mu: f64 },
}

/// Argument `y` with the regime parameter of `t`.
///
/// `theta` and `mu` are stored as given; `t` is derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeSpec {
    pub y: f64,
    pub regime: Regime,
}

fn check_y(y: f64) -> Result<()> {
    if y > 0.0 && y.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveArgument(y))
    }
}

impl RegimeSpec {
    pub fn monotonic(y: f64, theta: f64) -> Result<Self> {
        check_y(y)?;
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(Error::invalid("theta", theta, "must lie in [0, pi/2]"));
        }
        Ok(RegimeSpec {
            y,
            regime: Regime::Monotonic { theta },
        })
    }

    pub fn oscillatory(y: f64, mu: f64) -> Result<Self> {
        check_y(y)?;
        if !(mu > 0.0 && mu.is_finite()) {
            return Err(Error::invalid("mu", mu, "must be positive"));
        }
        Ok(RegimeSpec {
            y,
            regime: Regime::Oscillatory { mu },
        })
    }

    pub fn t(&self) -> f64 {
        match self.regime {
            Regime::Monotonic { theta } => self.y * theta.sin(),
            Regime::Oscillatory { mu } => self.y * mu.cosh(),
        }
    }

    /// `(y, t)` read back from the parametrization.
    pub fn physical(&self) -> (f64, f64) {
        (self.y, self.t())
    }
}

/// Classifies `(y, t)`: `t <= y` is monotonic with `theta = asin(t/y)`,
/// `t > y` oscillatory with `mu = acosh(t/y)`.
pub fn regime_from_physical(y: f64, t: f64) -> Result<RegimeSpec> {
    check_y(y)?;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::invalid("t", t, "must be finite and non-negative"));
    }
    if t <= y {
        let theta = if t == y { FRAC_PI_2 } else { (t / y).asin() };
        RegimeSpec::monotonic(y, theta)
    } else {
        RegimeSpec::oscillatory(y, (t / y).acosh())
    }
}
