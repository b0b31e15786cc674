//! Bodies of the `eval`, `sweep` and `contour` subcommands.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::io::Write;
use std::time::Instant;

use anyhow::{Context, Result};
use kbessel_core::contour::{im_phase_residual, monotonic_point, psi_case2, Branch, Case2Geometry, ContourPoint, Side};
use kbessel_core::evaluators::default_method;
use kbessel_core::{
    evaluate, evaluate_regime, regime_from_physical, EvalOutcome, EvaluatorConfig, Method, OrderSpec,
};
use rayon::prelude::*;

use crate::output::{csv_line, num, principal_phase};
use crate::record::{ComparisonRecord, RegimeParam};

/// Conflicting or missing arguments; exits with status 2.
#[derive(Debug, Clone)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// How the imaginary part of the order is given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderInput {
    T(f64),
    Regime(RegimeParam),
}

#[derive(Debug, Clone)]
pub struct EvalArgs {
    pub y: f64,
    pub r: f64,
    pub order: OrderInput,
    pub method: Option<Method>,
    pub tol: f64,
}

pub fn eval(args: &EvalArgs) -> Result<EvalOutcome> {
    let cfg = EvaluatorConfig::with_tol(args.tol);
    let outcome = match args.order {
        OrderInput::T(t) => {
            let spec = regime_from_physical(args.y, t.abs())?;
            let method = args.method.unwrap_or_else(|| default_method(&spec));
            evaluate(OrderSpec::new(args.r, t), args.y, method, &cfg)?
        }
        OrderInput::Regime(param) => {
            let spec = param.spec(args.y)?;
            let method = args.method.unwrap_or_else(|| default_method(&spec));
            evaluate_regime(args.r, &spec, method, &cfg)?
        }
    };
    Ok(outcome)
}

/// Aligned `key value` lines.
pub fn format_eval(outcome: &EvalOutcome) -> String {
    let rows = [
        ("method", outcome.method.to_string()),
        ("log_modulus", num(outcome.value.ln_abs())),
        ("phase", num(principal_phase(outcome.value.arg()))),
        ("rel_error", num(outcome.rel_error())),
        ("evaluations", outcome.evaluations.to_string()),
    ];
    rows.iter().map(|(k, v)| format!("{k:<12} {v}\n")).collect()
}

/// Grid of `y` values, strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub enum YGrid {
    List(Vec<f64>),
    Geometric { min: f64, max: f64, count: usize },
    Linear { min: f64, max: f64, count: usize },
}

impl YGrid {
    pub fn points(&self) -> Result<Vec<f64>> {
        let ys = match *self {
            YGrid::List(ref v) => {
                let mut v = v.clone();
                v.sort_by(f64::total_cmp);
                v.dedup();
                v
            }
            YGrid::Geometric { min, max, count } => {
                check_range(min, max, count)?;
                if min <= 0.0 {
                    return Err(usage("geometric grid needs y-min > 0"));
                }
                // Integer powers of one ratio keep grids like 25, 50, ..., 800 exact.
                let ratio = if count > 1 { (max / min).powf(1.0 / (count - 1) as f64) } else { 1.0 };
                spaced(count, max, |i, _| min * ratio.powi(i as i32))
            }
            YGrid::Linear { min, max, count } => {
                check_range(min, max, count)?;
                spaced(count, max, |i, n| min + (max - min) * i as f64 / n as f64)
            }
        };
        if ys.is_empty() {
            return Err(usage("empty y grid"));
        }
        Ok(ys)
    }
}

fn check_range(min: f64, max: f64, count: usize) -> Result<()> {
    if count == 0 || !(min <= max) || (count > 1 && min == max) {
        return Err(usage(format!("bad grid: y-min {min}, y-max {max}, count {count}")));
    }
    Ok(())
}

/// `count` points from `f`, with the last one pinned to `last`.
fn spaced(count: usize, last: f64, f: impl Fn(usize, usize) -> f64) -> Vec<f64> {
    if count == 1 {
        return vec![last];
    }
    let mut v: Vec<f64> = (0..count).map(|i| f(i, count - 1)).collect();
    v[count - 1] = last;
    v
}

#[derive(Debug, Clone)]
pub struct SweepArgs {
    pub r: f64,
    pub param: RegimeParam,
    pub grid: YGrid,
    pub methods: Vec<Method>,
    pub tol: f64,
    pub timings: bool,
}

/// Evaluates the grid in parallel and emits rows in grid order.
pub fn sweep(args: &SweepArgs, pool: &rayon::ThreadPool, out: &mut impl Write) -> Result<()> {
    if args.methods.is_empty() {
        return Err(usage("--methods must name at least one method"));
    }
    let ys = args.grid.points()?;
    let cfg = EvaluatorConfig::with_tol(args.tol);
    let row = |y: f64| -> Result<ComparisonRecord> {
        let spec = args.param.spec(y)?;
        let outcomes = args
            .methods
            .iter()
            .map(|&m| {
                let start = Instant::now();
                let o = evaluate_regime(args.r, &spec, m, &cfg).with_context(|| format!("{m} at y = {y}"))?;
                Ok((o, args.timings.then(|| start.elapsed().as_secs_f64())))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ComparisonRecord::build(args.r, &spec, args.param, &outcomes)?)
    };
    let records: Vec<Result<ComparisonRecord>> = pool.install(|| ys.par_iter().map(|&y| row(y)).collect());
    out.write_all(ComparisonRecord::csv_header(&args.methods, args.timings).as_bytes())?;
    for rec in records {
        out.write_all(rec?.csv_row(args.timings).as_bytes())?;
    }
    Ok(())
}

pub const CONTOUR_HEADER: &str = "branch,u,w,dw_du,psi,im_residual\n";

#[derive(Debug, Clone)]
pub struct ContourArgs {
    pub param: RegimeParam,
    /// `None` selects every branch of the regime.
    pub branches: Option<Vec<Branch>>,
    pub points: usize,
    /// Extent in `u` of the monotonic path and of the tail.
    pub span: f64,
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    spaced(n, hi, |i, m| lo + (hi - lo) * i as f64 / m as f64)
}

/// Emits sampled points of the steepest-descent contour.
pub fn contour(args: &ContourArgs, out: &mut impl Write) -> Result<()> {
    if args.points < 2 {
        return Err(usage("--points must be at least 2"));
    }
    if !(args.span > 0.0 && args.span.is_finite()) {
        return Err(usage("--span must be positive"));
    }
    // The geometry does not depend on y.
    let spec = args.param.spec(1.0)?;
    let rows: Vec<(ContourPoint, f64)> = match args.param {
        RegimeParam::Theta(theta) => {
            if let Some(bad) = args.branches.iter().flatten().find(|b| **b != Branch::MonoMain) {
                return Err(usage(format!("branch {bad} does not exist for t <= y")));
            }
            let mut us = grid(-args.span, args.span, args.points);
            if !us.contains(&0.0) {
                us.push(0.0);
                us.sort_by(f64::total_cmp);
            }
            us.into_iter()
                .map(|u| {
                    let side = if u < 0.0 { Side::Minus } else { Side::Plus };
                    let p = monotonic_point(theta, u, side);
                    let psi = p.u.cosh() * p.w.cos() + p.w * theta.sin();
                    (p, psi)
                })
                .collect()
        }
        RegimeParam::Mu(mu) => {
            let geometry = Case2Geometry::new(mu)?;
            let branches = args
                .branches
                .clone()
                .unwrap_or_else(|| vec![Branch::ArcLower, Branch::ArcUpper, Branch::Tail]);
            let mut rows = Vec::new();
            for branch in branches {
                let params = match branch {
                    Branch::ArcLower => grid(-FRAC_PI_2, FRAC_PI_2, args.points),
                    Branch::ArcUpper => grid(FRAC_PI_2, 1.5 * PI, args.points),
                    Branch::Tail => grid(mu, mu + args.span, args.points),
                    Branch::MonoMain => return Err(usage("branch mono_main does not exist for t > y")),
                };
                for param in params {
                    let p = geometry.point(branch, param)?;
                    rows.push((p, psi_case2(mu, &p)));
                }
            }
            rows
        }
    };
    out.write_all(CONTOUR_HEADER.as_bytes())?;
    for (p, psi) in rows {
        let line = csv_line([
            p.branch.to_string(),
            num(p.u),
            num(p.w),
            p.dw_du.to_string(),
            num(psi),
            num(im_phase_residual(&spec, &p)),
        ]);
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}
