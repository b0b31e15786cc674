//! One row of a sweep: several methods evaluated at the same `(y, r, t)`.

use kbessel_core::{
    residual_monotonic, residual_oscillatory, EvalOutcome, Method, Regime, RegimeSpec,
};
use serde::{Deserialize, Serialize};

use crate::output::{csv_line, num, principal_phase};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeParam {
    Theta(f64),
    Mu(f64),
}

impl RegimeParam {
    pub fn name(&self) -> &'static str {
        match self {
            RegimeParam::Theta(_) => "theta",
            RegimeParam::Mu(_) => "mu",
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            RegimeParam::Theta(v) | RegimeParam::Mu(v) => v,
        }
    }

    pub fn spec(&self, y: f64) -> kbessel_core::Result<RegimeSpec> {
        match *self {
            RegimeParam::Theta(theta) => RegimeSpec::monotonic(y, theta),
            RegimeParam::Mu(mu) => RegimeSpec::oscillatory(y, mu),
        }
    }
}

/// A value printed as natural-log modulus and phase.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodValue {
    pub method: Method,
    pub log_modulus: f64,
    /// In `(-pi, pi]`.
    pub phase: f64,
    pub rel_error: f64,
    pub evaluations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

impl MethodValue {
    pub fn from_outcome(outcome: &EvalOutcome, seconds: Option<f64>) -> Self {
        MethodValue {
            method: outcome.method,
            log_modulus: outcome.value.ln_abs(),
            phase: principal_phase(outcome.value.arg()),
            rel_error: outcome.rel_error(),
            evaluations: outcome.evaluations,
            seconds,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairResidual {
    pub a: Method,
    pub b: Method,
    /// Non-negative.
    pub residual: f64,
}

/// Residual between two outcomes. Against an asymptotic form this is the
/// residual of the exact value with respect to it (envelope-normalized in
/// the oscillatory regime); otherwise `|a - b| / |b|`.
pub fn pair_residual(r: f64, spec: &RegimeSpec, a: &EvalOutcome, b: &EvalOutcome) -> kbessel_core::Result<f64> {
    let (exact, asym) = match (a.method.is_asymptotic(), b.method.is_asymptotic()) {
        (false, true) => (a, b.method),
        (true, false) => (b, a.method),
        _ => return Ok(a.value.rel_diff(&b.value)),
    };
    match (asym, spec.regime) {
        (Method::AsymMonotonic, Regime::Monotonic { theta }) => residual_monotonic(r, theta, spec.y, exact),
        (Method::AsymOscillatory, Regime::Oscillatory { mu }) => residual_oscillatory(r, mu, spec.y, exact),
        _ => Ok(a.value.rel_diff(&b.value)),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub y: f64,
    pub r: f64,
    pub t: f64,
    pub param: RegimeParam,
    pub values: Vec<MethodValue>,
    pub residuals: Vec<PairResidual>,
}

impl ComparisonRecord {
    /// Evaluates every method at one grid point and all pairwise residuals
    /// in list order.
    pub fn build(
        r: f64,
        spec: &RegimeSpec,
        param: RegimeParam,
        outcomes: &[(EvalOutcome, Option<f64>)],
    ) -> kbessel_core::Result<Self> {
        let mut residuals = Vec::new();
        for (i, (a, _)) in outcomes.iter().enumerate() {
            for (b, _) in &outcomes[i + 1..] {
                residuals.push(PairResidual {
                    a: a.method,
                    b: b.method,
                    residual: pair_residual(r, spec, a, b)?,
                });
            }
        }
        Ok(ComparisonRecord {
            y: spec.y,
            r,
            t: spec.t(),
            param,
            values: outcomes
                .iter()
                .map(|(o, s)| MethodValue::from_outcome(o, *s))
                .collect(),
            residuals,
        })
    }

    pub fn csv_header(methods: &[Method], timings: bool) -> String {
        let mut cols: Vec<String> = ["y", "r", "t", "regime", "param"].map(String::from).into();
        for m in methods {
            for field in ["log_modulus", "phase", "rel_error", "evaluations"] {
                cols.push(format!("{m}_{field}"));
            }
        }
        for (i, a) in methods.iter().enumerate() {
            for b in &methods[i + 1..] {
                cols.push(format!("residual_{a}_{b}"));
            }
        }
        if timings {
            cols.extend(methods.iter().map(|m| format!("{m}_seconds")));
        }
        csv_line(cols)
    }

    pub fn csv_row(&self, timings: bool) -> String {
        let mut cols = vec![
            num(self.y),
            num(self.r),
            num(self.t),
            self.param.name().to_owned(),
            num(self.param.value()),
        ];
        for v in &self.values {
            cols.extend([num(v.log_modulus), num(v.phase), num(v.rel_error), v.evaluations.to_string()]);
        }
        cols.extend(self.residuals.iter().map(|p| num(p.residual)));
        if timings {
            cols.extend(self.values.iter().map(|v| num(v.seconds.unwrap_or(f64::NAN))));
        }
        csv_line(cols)
    }
}
