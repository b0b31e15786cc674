//! The acceptance suite behind `kbessel validate`.
//!
//! Every criterion produces a list of [`Check`]s; a criterion passes when
//! all of its checks do. The report is versioned JSON; fields are only ever
//! added, and readers ignore fields they do not know.

use std::f64::consts::{E, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, LN_10, PI};
use std::time::Instant;

use anyhow::Result;
use kbessel_core::contour::{
    im_phase_residual, monotonic_point, mu_minus, mu_minus_residual, path_case2,
    phase_derivative_monotonic, phase_derivative_oscillatory, saddle_monotonic, saddle_oscillatory,
    saddle_phase, Branch, SaddleSign, Side,
};
use kbessel_core::evaluators::{k_direct, k_monotonic_sd, k_oscillatory_prop33, k_oscillatory_thm13, k_series};
use kbessel_core::{
    asym_oscillatory, residual_monotonic, residual_oscillatory, EvalOutcome, EvaluatorConfig, OrderSpec,
    RegimeSpec,
};
use serde::{Deserialize, Serialize};

pub const REPORT_VERSION: u32 = 1;

/// Size of the `chi` perturbation applied by `--inject-chi-fault`.
pub const CHI_FAULT: f64 = 1e-3;

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    /// Skip the slow asymptotic and large-grid criteria.
    pub fast: bool,
    /// Perturb `chi` inside the oscillatory evaluators.
    pub inject_chi_fault: bool,
}

impl Options {
    fn cfg(&self) -> EvaluatorConfig {
        EvaluatorConfig {
            chi_perturbation: if self.inject_chi_fault { CHI_FAULT } else { 0.0 },
            ..EvaluatorConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when `measured <= threshold`.
    fn at_most(name: impl Into<String>, measured: f64, threshold: f64) -> Self {
        Check {
            name: name.into(),
            measured,
            threshold,
            passed: measured <= threshold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    /// First check's measurement; `null` when skipped or errored.
    pub measured: Option<f64>,
    pub threshold: Option<f64>,
    pub passed: bool,
    pub skipped: bool,
    pub runtime_s: f64,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CriterionResult {
    pub fn summary_line(&self) -> String {
        let status = match (self.skipped, self.passed) {
            (true, _) => "SKIP",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        let mut line = format!("[{status}] criterion {} ({}), {:.2} s", self.id, self.name, self.runtime_s);
        for c in &self.checks {
            let mark = if c.passed { "ok" } else { "FAILED" };
            line.push_str(&format!("\n    {mark}: {} = {:e} (threshold {:e})", c.name, c.measured, c.threshold));
        }
        if let Some(e) = &self.error {
            line.push_str(&format!("\n    error: {e}"));
        }
        line
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub criteria: Vec<CriterionResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.skipped || c.passed)
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    /// Wall-clock limit, when the criterion has one.
    pub runtime_limit_s: Option<f64>,
    /// Run under `--fast`.
    pub fast: bool,
    run: fn(&Options) -> Result<Vec<Check>>,
}

pub const CRITERIA: [Criterion; 8] = [
    Criterion { id: 1, name: "saddle and constant-phase invariants", runtime_limit_s: Some(1.0), fast: true, run: saddles_and_phase },
    Criterion { id: 2, name: "oscillatory representations against the series", runtime_limit_s: Some(20.0), fast: false, run: oscillatory_representations },
    Criterion { id: 3, name: "monotonic representation against the direct integral", runtime_limit_s: Some(10.0), fast: true, run: monotonic_representation },
    Criterion { id: 4, name: "monotonic asymptotics, theta < pi/2", runtime_limit_s: None, fast: false, run: monotonic_convergence },
    Criterion { id: 5, name: "monotonic asymptotics, theta = pi/2", runtime_limit_s: None, fast: false, run: boundary_convergence },
    Criterion { id: 6, name: "oscillatory asymptotics and bracket signs", runtime_limit_s: None, fast: false, run: oscillatory_convergence },
    Criterion { id: 7, name: "oracle agreement and symmetries", runtime_limit_s: None, fast: true, run: oracle_consistency },
    Criterion { id: 8, name: "mu_minus root", runtime_limit_s: None, fast: true, run: mu_minus_root },
];

pub const SUITE_ID: u32 = 9;
pub const SUITE_NAME: &str = "full suite within 60 s, all criteria passing";
pub const SUITE_LIMIT_S: f64 = 60.0;

fn skipped(id: u32, name: &str) -> CriterionResult {
    CriterionResult {
        id,
        name: name.to_owned(),
        measured: None,
        threshold: None,
        passed: false,
        skipped: true,
        runtime_s: 0.0,
        checks: Vec::new(),
        error: None,
    }
}

/// Runs one of criteria 1 to 8.
pub fn run_criterion(c: &Criterion, opts: &Options) -> CriterionResult {
    if opts.fast && !c.fast {
        return skipped(c.id, c.name);
    }
    let start = Instant::now();
    let outcome = (c.run)(opts);
    let runtime_s = start.elapsed().as_secs_f64();
    let (mut checks, error) = match outcome {
        Ok(checks) => (checks, None),
        Err(e) => (Vec::new(), Some(format!("{e:#}"))),
    };
    if let Some(limit) = c.runtime_limit_s {
        checks.push(Check::at_most("runtime_s", runtime_s, limit));
    }
    let first = checks.first().filter(|_| error.is_none());
    CriterionResult {
        id: c.id,
        name: c.name.to_owned(),
        measured: first.map(|k| k.measured),
        threshold: first.map(|k| k.threshold),
        passed: error.is_none() && checks.iter().all(|k| k.passed),
        skipped: false,
        runtime_s,
        checks,
        error,
    }
}

pub fn criterion(id: u32) -> Option<&'static Criterion> {
    CRITERIA.iter().find(|c| c.id == id)
}

/// Runs the whole suite in order; `on_result` sees each result as soon as
/// it is available.
pub fn run_suite(opts: &Options, mut on_result: impl FnMut(&CriterionResult)) -> Report {
    let start = Instant::now();
    let mut criteria = Vec::new();
    for c in &CRITERIA {
        let r = run_criterion(c, opts);
        on_result(&r);
        criteria.push(r);
    }
    let suite = if opts.fast {
        skipped(SUITE_ID, SUITE_NAME)
    } else {
        let runtime_s = start.elapsed().as_secs_f64();
        let failing = criteria.iter().filter(|c| !c.passed).count() as f64;
        let checks = vec![
            Check::at_most("runtime_s", runtime_s, SUITE_LIMIT_S),
            Check::at_most("failing criteria", failing, 0.0),
        ];
        CriterionResult {
            id: SUITE_ID,
            name: SUITE_NAME.to_owned(),
            measured: Some(runtime_s),
            threshold: Some(SUITE_LIMIT_S),
            passed: checks.iter().all(|k| k.passed),
            skipped: false,
            runtime_s,
            checks,
            error: None,
        }
    };
    on_result(&suite);
    criteria.push(suite);
    Report {
        version: REPORT_VERSION,
        criteria,
    }
}

const THETAS: [f64; 4] = [0.1, FRAC_PI_4, 1.3, FRAC_PI_2];
const MUS: [f64; 3] = [0.3, 1.0, LN_10];
const PHASE_SAMPLES: usize = 1000;

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn saddles_and_phase(_: &Options) -> Result<Vec<Check>> {
    let mut saddle = 0.0f64;
    for k in -3..=3 {
        for &theta in &THETAS {
            saddle = saddle.max(phase_derivative_monotonic(theta, saddle_monotonic(theta, k)).norm());
        }
        for &mu in &MUS {
            for sign in [SaddleSign::Plus, SaddleSign::Minus] {
                saddle = saddle.max(phase_derivative_oscillatory(mu, saddle_oscillatory(mu, k, sign)).norm());
            }
        }
    }

    // Worst residual relative to its bound 1e-10 (1 + |saddle phase|).
    let mut phase = 0.0f64;
    for &theta in &THETAS {
        let spec = RegimeSpec::monotonic(1.0, theta)?;
        let bound = 1e-10 * (1.0 + saddle_phase(&spec).abs());
        for u in linspace(-25.0, 25.0, PHASE_SAMPLES) {
            let p = monotonic_point(theta, u, Side::Plus);
            phase = phase.max(im_phase_residual(&spec, &p) / bound);
        }
    }
    for &mu in &MUS {
        let spec = RegimeSpec::oscillatory(1.0, mu)?;
        let bound = 1e-10 * (1.0 + saddle_phase(&spec).abs());
        let ranges = [
            (Branch::ArcLower, -FRAC_PI_2, FRAC_PI_2),
            (Branch::ArcUpper, FRAC_PI_2, 1.5 * PI),
            (Branch::Tail, mu, mu + 30.0),
        ];
        for (branch, lo, hi) in ranges {
            for param in linspace(lo, hi, PHASE_SAMPLES) {
                let p = path_case2(mu, branch, param)?;
                phase = phase.max(im_phase_residual(&spec, &p) / bound);
            }
        }
    }
    Ok(vec![
        Check::at_most("max |phi'(saddle)|, |k| <= 3", saddle, 1e-14),
        Check::at_most("max constant-phase residual / bound", phase, 1.0),
    ])
}

/// `|a - b|` over the sum of both error estimates, relative to `|b|`.
fn diff_over_errors(a: &EvalOutcome, b: &EvalOutcome) -> f64 {
    let budget = a.rel_error() * a.value.abs_ratio(&b.value) + b.rel_error();
    a.value.rel_diff(&b.value) / budget
}

fn oscillatory_representations(opts: &Options) -> Result<Vec<Check>> {
    let cfg = opts.cfg();
    let reference_cfg = EvaluatorConfig::default();
    let (mut vs_series, mut cross) = (0.0f64, 0.0f64);
    for &r in &[-1.0, 0.0, 0.5] {
        for &mu in &[0.5, 1.0, LN_10] {
            for &y in &[2.0, 5.0, 10.0, 20.0] {
                let series = k_series(OrderSpec::new(r, y * mu.cosh()), y, &reference_cfg)?;
                let a = k_oscillatory_thm13(r, mu, y, &cfg)?;
                let b = k_oscillatory_prop33(r, mu, y, &cfg)?;
                vs_series = vs_series.max(a.value.rel_diff(&series.value));
                cross = cross.max(diff_over_errors(&a, &b));
            }
        }
    }
    Ok(vec![
        Check::at_most("max |thm13 - series| / |series|", vs_series, 1e-8),
        Check::at_most("max |thm13 - prop33| / (summed error estimates)", cross, 1.0),
    ])
}

fn monotonic_representation(_: &Options) -> Result<Vec<Check>> {
    let cfg = EvaluatorConfig::default();
    let mut worst = 0.0f64;
    for &theta in &[0.0, FRAC_PI_6, FRAC_PI_3] {
        for &r in &[0.0, 1.0] {
            for &y in &[5.0, 20.0, 50.0] {
                let a = k_monotonic_sd(r, theta, y, &cfg)?;
                let b = k_direct(OrderSpec::new(r, y * theta.sin()), y, &cfg)?;
                worst = worst.max(a.value.rel_diff(&b.value));
            }
        }
    }
    Ok(vec![Check::at_most("max |steepest - direct| / |direct|", worst, 1e-9)])
}

/// Number of consecutive pairs that fail to decrease strictly.
fn non_decreasing_steps(seq: &[f64]) -> f64 {
    seq.windows(2).filter(|w| !(w[1] < w[0])).count() as f64
}

/// Residual sequences for each case; returns (violations, worst final residual).
fn convergence<P: Copy>(
    cases: &[P],
    ys: &[f64],
    residual: impl Fn(P, f64) -> Result<f64>,
) -> Result<(f64, f64)> {
    let (mut violations, mut last) = (0.0, 0.0f64);
    for &case in cases {
        let seq = ys.iter().map(|&y| residual(case, y)).collect::<Result<Vec<_>>>()?;
        violations += non_decreasing_steps(&seq);
        last = last.max(*seq.last().unwrap_or(&f64::INFINITY));
    }
    Ok((violations, last))
}

fn monotonic_convergence(_: &Options) -> Result<Vec<Check>> {
    let cfg = EvaluatorConfig::default();
    let ys = [25.0, 50.0, 100.0, 200.0, 400.0];
    let cases = [(0.0, 0.0), (FRAC_PI_6, 0.3), (FRAC_PI_3, -1.0)];
    let (violations, last) = convergence(&cases, &ys, |(theta, r), y| {
        let exact = k_monotonic_sd(r, theta, y, &cfg)?;
        Ok(residual_monotonic(r, theta, y, &exact)?)
    })?;
    Ok(vec![
        Check::at_most("residual at y = 400", last, 1e-2),
        Check::at_most("non-decreasing residual steps", violations, 0.0),
    ])
}

fn boundary_convergence(_: &Options) -> Result<Vec<Check>> {
    let cfg = EvaluatorConfig::default();
    let ys = [1e2, 1e3, 1e4];
    let (violations, last) = convergence(&[0.0], &ys, |r, y| {
        let exact = k_monotonic_sd(r, FRAC_PI_2, y, &cfg)?;
        Ok(residual_monotonic(r, FRAC_PI_2, y, &exact)?)
    })?;
    Ok(vec![
        Check::at_most("residual at y = 1e4", last, 5e-2),
        Check::at_most("non-decreasing residual steps", violations, 0.0),
    ])
}

/// `y` of the `n`-th zero of `sin(pi/4 - chi)` for `mu = 1`, where
/// `chi = -y / e`.
fn bracket_zero_mu_one(n: u32) -> f64 {
    E * (n as f64 * PI - FRAC_PI_4)
}

fn oscillatory_convergence(opts: &Options) -> Result<Vec<Check>> {
    let cfg = opts.cfg();
    let ys = [50.0, 100.0, 200.0, 400.0, 800.0];
    let cases = [(0.0, 1.0), (0.5, 0.5), (-0.7, LN_10)];
    let (violations, last) = convergence(&cases, &ys, |(r, mu), y| {
        let exact = k_oscillatory_thm13(r, mu, y, &cfg)?;
        Ok(residual_oscillatory(r, mu, y, &exact)?)
    })?;

    // For r = 0 both values are real; their signs must flip together.
    let zero = bracket_zero_mu_one(12);
    let (mut mismatches, mut asym_flips, mut prev) = (0.0, 0.0, None);
    for off in [-1.75, -1.25, -0.75, -0.25, 0.25, 0.75, 1.25, 1.75] {
        let y = zero + off;
        let exact = k_oscillatory_thm13(0.0, 1.0, y, &cfg)?;
        let asym = asym_oscillatory(0.0, 1.0, y)?;
        let (se, sa) = (exact.value.mantissa().re.signum(), asym.value.mantissa().re.signum());
        if se != sa {
            mismatches += 1.0;
        }
        if prev.is_some_and(|p| p != sa) {
            asym_flips += 1.0;
        }
        prev = Some(sa);
    }
    Ok(vec![
        Check::at_most("envelope residual at y = 800", last, 5e-2),
        Check::at_most("non-decreasing residual steps", violations, 0.0),
        Check::at_most("sign mismatches across a bracket zero", mismatches, 0.0),
        Check {
            name: "asymptotic sign changes in the scan".into(),
            measured: asym_flips,
            threshold: 1.0,
            passed: asym_flips >= 1.0,
        },
    ])
}

fn oracle_consistency(_: &Options) -> Result<Vec<Check>> {
    let cfg = EvaluatorConfig::default();
    let (mut agree, mut symmetry, mut conjugation) = (0.0f64, 0.0f64, 0.0f64);
    for nu in [OrderSpec::new(0.3, 5.0), OrderSpec::new(-0.5, 12.0)] {
        let conj = OrderSpec::new(nu.r, -nu.t);
        for &y in &[0.5, 1.0, 2.0, 5.0] {
            let s = k_series(nu, y, &cfg)?;
            let d = k_direct(nu, y, &cfg)?;
            agree = agree.max(s.value.rel_diff(&d.value));
            symmetry = symmetry
                .max(k_series(nu.negated(), y, &cfg)?.value.rel_diff(&s.value))
                .max(k_direct(nu.negated(), y, &cfg)?.value.rel_diff(&d.value));
            conjugation = conjugation
                .max(k_series(conj, y, &cfg)?.value.rel_diff(&s.value.conj()))
                .max(k_direct(conj, y, &cfg)?.value.rel_diff(&d.value.conj()));
        }
    }
    Ok(vec![
        Check::at_most("max |series - direct| / |direct|", agree, 1e-10),
        Check::at_most("max |K(-nu) - K(nu)| / |K(nu)|", symmetry, 1e-12),
        Check::at_most("max |K(conj nu) - conj K(nu)| / |K(nu)|", conjugation, 1e-12),
    ])
}

fn mu_minus_root(_: &Options) -> Result<Vec<Check>> {
    let mut worst = 0.0f64;
    for &mu in &[0.1, 1.0, LN_10, 5.0] {
        worst = worst.max(mu_minus_residual(mu, mu_minus(mu)?));
    }
    let at_ln10 = mu_minus(LN_10)?;
    Ok(vec![
        Check::at_most("max scaled residual of the mu_minus equation", worst, 1e-14),
        Check {
            name: "mu_minus(ln 10) in [1.067, 1.069]".into(),
            measured: at_ln10,
            threshold: 1.069,
            passed: (1.067..=1.069).contains(&at_ln10),
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steps_counting() {
        assert_eq!(non_decreasing_steps(&[3.0, 2.0, 1.0]), 0.0);
        assert_eq!(non_decreasing_steps(&[3.0, 3.0, 1.0, 2.0]), 2.0);
    }

    #[test]
    fn bracket_zero_is_a_zero() {
        let y = bracket_zero_mu_one(12);
        let chi = kbessel_core::contour::chi(y, 1.0);
        assert!((FRAC_PI_4 - chi).sin().abs() < 1e-12);
    }

    #[test]
    fn report_ignores_unknown_fields() {
        let json = r#"{"version": 1, "criteria": [{"id": 1, "name": "x", "measured": 0.5,
            "threshold": 1.0, "passed": true, "skipped": false, "runtime_s": 0.1,
            "added_later": [1, 2]}], "also_new": true}"#;
        let report: Report = serde_json::from_str(json).unwrap();
        assert_eq!(report.criteria[0].checks.len(), 0);
        assert!(report.all_passed());
    }

    #[test]
    fn fast_mode_skips_slow_criteria() {
        let c = criterion(6).unwrap();
        let r = run_criterion(c, &Options { fast: true, ..Default::default() });
        assert!(r.skipped && r.measured.is_none());
    }
}
