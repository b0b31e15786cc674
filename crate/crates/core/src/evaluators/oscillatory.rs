//! Oscillatory regime `t = y cosh(mu) > y`.
//!
//! Integrands are written as `exp(-y (psi - psi_ref)) e^{∓ru} e^{irw} (…)`
//! where `psi_ref` is the smallest value of `psi` on the piece of contour
//! involved, so every integrand is at most `e^{|r| u}` in size.

use std::cell::Cell;
use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{check_y, EvaluatorConfig};
use crate::contour::{Branch, BranchState, Case2Geometry};
use crate::error::{Error, Result};
use crate::outcome::{EvalOutcome, Method};
use crate::quadrature::{Integrator, QuadratureOutcome};
use crate::scaled::ScaledComplex;

const UNDERFLOW_EXPONENT: f64 = -745.0;

/// `+1` for the `e^{-ru}` integrals, `-1` for the `e^{+ru}` ones.
#[derive(Clone, Copy)]
enum Sense {
    Decaying,
    Growing,
}

impl Sense {
    fn sigma(self) -> f64 {
        match self {
            Sense::Decaying => 1.0,
            Sense::Growing => -1.0,
        }
    }
}

/// Linear combination of integrals, each with a scaled coefficient.
struct Combination {
    value: ScaledComplex,
    error: ScaledComplex,
    l1: ScaledComplex,
    evaluations: usize,
}

impl Combination {
    fn new() -> Self {
        Combination {
            value: ScaledComplex::ZERO,
            error: ScaledComplex::ZERO,
            l1: ScaledComplex::ZERO,
            evaluations: 0,
        }
    }

    fn add(&mut self, coef: ScaledComplex, q: &QuadratureOutcome) {
        let modulus = ScaledComplex::from_polar_log(coef.ln_abs(), 0.0);
        self.value = self.value + coef.mul_complex(q.value);
        self.error = self.error + modulus.mul_complex(Complex64::new(q.abs_error, 0.0));
        self.l1 = self.l1 + modulus.mul_complex(Complex64::new(q.abs_integral, 0.0));
        self.evaluations += q.evaluations;
    }

    fn finish(self, condition: f64, method: Method) -> EvalOutcome {
        let rounding = self.l1.mul_complex(Complex64::new(f64::EPSILON * condition, 0.0));
        EvalOutcome::new(self.value, self.error + rounding, self.evaluations, method)
    }
}

struct Setup {
    geo: Case2Geometry,
    y: f64,
    r: f64,
    t: f64,
    chi: f64,
    shift: f64,
    integ: Integrator,
    /// `e^{2 pi i r} / (1 - e^{-2 pi t + 2 pi i r})`.
    geometric: Complex64,
    failure: Cell<Option<Error>>,
}

impl Setup {
    fn new(r: f64, mu: f64, y: f64, cfg: &EvaluatorConfig) -> Result<Self> {
        check_y(y)?;
        cfg.validate()?;
        if !r.is_finite() {
            return Err(Error::invalid("r", r, "must be finite"));
        }
        let geo = Case2Geometry::new(mu)?;
        let t = y * geo.cosh_mu;
        let decay = (-2.0 * PI * t).exp();
        // |q| < 1 keeps the geometric factor finite.
        if !(decay < 1.0) {
            return Err(Error::invalid("t", t, "geometric factor needs t > 0"));
        }
        let turn = Complex64::cis(2.0 * PI * r);
        Ok(Setup {
            geo,
            y,
            r,
            t,
            chi: y * geo.c + cfg.chi_perturbation,
            shift: cfg.frame_shift,
            integ: cfg.integrator(0.25 * cfg.tol_rel),
            geometric: turn / (1.0 - turn * decay),
            failure: Cell::new(None),
        })
    }

    fn record(&self, state: Result<BranchState>) -> Option<BranchState> {
        match state {
            Ok(s) => Some(s),
            Err(e) => {
                self.failure.set(Some(e));
                None
            }
        }
    }

    fn check(&self, out: std::result::Result<QuadratureOutcome, crate::quadrature::QuadratureError>) -> Result<QuadratureOutcome> {
        if let Some(e) = self.failure.take() {
            return Err(e);
        }
        Ok(out?)
    }

    /// `exp(-y(psi - pi/2 cosh mu) ∓ ru) e^{irw} (1 ∓ i dw/du)`.
    fn du_integrand(&self, state: &BranchState, branch: Branch, sense: Sense) -> Complex64 {
        let sigma = sense.sigma();
        let w = state.w(branch);
        let height = state.cosh_u * state.cos_w(branch) + (w - FRAC_PI_2) * self.geo.cosh_mu;
        let log_mod = -self.y * height - sigma * self.r * state.u - self.shift;
        if log_mod < UNDERFLOW_EXPONENT {
            return Complex64::new(0.0, 0.0);
        }
        let slope = state.dw_du_value(branch);
        Complex64::from_polar(log_mod.exp(), self.r * w) * Complex64::new(1.0, -sigma * slope)
    }

    /// `exp(-y(psi + offset) ∓ ru) e^{irw} (∓ du/dw + i)` at ordinate `w`.
    fn dw_integrand(&self, state: &BranchState, branch: Branch, w: f64, offset: f64, sense: Sense) -> Complex64 {
        let sigma = sense.sigma();
        let height = state.cosh_u * state.cos_w(branch) + w * self.geo.cosh_mu + offset;
        let log_mod = -self.y * height - sigma * self.r * state.u - self.shift;
        if log_mod < UNDERFLOW_EXPONENT {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(log_mod.exp(), self.r * w)
            * Complex64::new(-sigma * state.du_dw(branch), 1.0)
    }

    fn tail(&self, sense: Sense) -> Result<QuadratureOutcome> {
        let out = self.integ.semi_infinite(
            |u| self.du_integrand(&self.geo.state(u), Branch::Tail, sense),
            self.geo.mu,
            self.y.max(1.0),
        );
        self.check(out)
    }

    /// `∫_{mu_-}^{mu}` along `arc_upper`; `dw/du ~ (u - mu_-)^{-1/2}`.
    fn upper_arc_du(&self, sense: Sense) -> Result<QuadratureOutcome> {
        let out = self.integ.sqrt_singular_offset(
            |d| self.du_integrand(&self.geo.state_from_minus_offset(d), Branch::ArcUpper, sense),
            self.geo.mu_minus,
            self.geo.mu,
        );
        self.check(out)
    }

    fn lower_arc_dw(&self, from: f64, to: f64, wrap: f64, offset: f64, sense: Sense) -> Result<QuadratureOutcome> {
        let out = self.integ.finite(
            |w| {
                let local = (w - wrap).clamp(-FRAC_PI_2, FRAC_PI_2);
                match self.record(self.geo.lower_arc_state(local)) {
                    Some(s) => self.dw_integrand(&s, Branch::ArcLower, w, offset, sense),
                    None => Complex64::new(f64::NAN, 0.0),
                }
            },
            from,
            to,
        );
        self.check(out)
    }

    fn upper_arc_dw(&self, offset: f64, sense: Sense) -> Result<QuadratureOutcome> {
        let out = self.integ.finite(
            |w| match self.record(self.geo.upper_arc_state(w)) {
                Some(s) => self.dw_integrand(&s, Branch::ArcUpper, w, offset, sense),
                None => Complex64::new(f64::NAN, 0.0),
            },
            FRAC_PI_2,
            3.0 * FRAC_PI_2,
        );
        self.check(out)
    }

    fn coefficient(&self, frame: f64, scale: Complex64, chi_sign: f64) -> ScaledComplex {
        ScaledComplex::from_polar_log(frame, chi_sign * self.chi).mul_complex(scale)
    }

    /// Rounding amplification: exponents of size `~ y psi` and the phase `chi`.
    fn condition(&self) -> f64 {
        10.0 + self.chi.abs() + 8.0 * self.t + PI * self.r.abs()
    }
}

fn merge(a: QuadratureOutcome, b: QuadratureOutcome) -> QuadratureOutcome {
    QuadratureOutcome {
        value: a.value + b.value,
        abs_error: a.abs_error + b.abs_error,
        evaluations: a.evaluations + b.evaluations,
        abs_integral: a.abs_integral + b.abs_integral,
    }
}

/// Single-saddle representation: `du` integrals over `[mu_-, inf)` (on
/// `arc_upper` for `u < mu`, then the tail) and `dw` integrals over
/// `[-pi/2, 3pi/2]` weighted by `e^{-2 pi t + 2 pi i r} / (1 - e^{-2 pi t + 2 pi i r})`.
///
/// The `du` terms live in the frame `exp(-y (pi/2) cosh mu)`, the `dw`
/// terms in `exp(-2 pi t + y (pi/2) cosh mu)`.
pub fn k_oscillatory_thm13(r: f64, mu: f64, y: f64, cfg: &EvaluatorConfig) -> Result<EvalOutcome> {
    let s = Setup::new(r, mu, y, cfg)?;
    let half_pi_ch = FRAC_PI_2 * s.geo.cosh_mu;
    let du_frame = -y * half_pi_ch + s.shift;
    let dw_frame = -2.0 * PI * s.t + y * half_pi_ch + s.shift;
    let half = Complex64::new(0.5, 0.0);

    let mut total = Combination::new();
    for (sense, chi_sign, sign) in [(Sense::Decaying, 1.0, 1.0), (Sense::Growing, -1.0, -1.0)] {
        let j = merge(s.upper_arc_du(sense)?, s.tail(sense)?);
        total.add(s.coefficient(du_frame, half, chi_sign), &j);

        let w = merge(
            s.lower_arc_dw(-FRAC_PI_2, FRAC_PI_2, 0.0, half_pi_ch, sense)?,
            s.upper_arc_dw(half_pi_ch, sense)?,
        );
        total.add(s.coefficient(dw_frame, half * s.geometric * sign, chi_sign), &w);
    }
    Ok(total.finish(s.condition(), Method::Thm13))
}

/// Two-branch representation folded onto the upper half-contour: `du`
/// integrals over the tail `[mu, inf)` and `dw` integrals over
/// `[pi/2, 5pi/2]` with factor `1 / (1 - e^{-2 pi t + 2 pi i r})`. On
/// `[3pi/2, 5pi/2]` the abscissa repeats `arc_lower` shifted by `2 pi`.
pub fn k_oscillatory_prop33(r: f64, mu: f64, y: f64, cfg: &EvaluatorConfig) -> Result<EvalOutcome> {
    let s = Setup::new(r, mu, y, cfg)?;
    let half_pi_ch = FRAC_PI_2 * s.geo.cosh_mu;
    let frame = -y * half_pi_ch + s.shift;
    let half = Complex64::new(0.5, 0.0);
    let folded = s.geometric * Complex64::cis(-2.0 * PI * r);

    let mut total = Combination::new();
    for (sense, chi_sign, sign) in [(Sense::Decaying, 1.0, 1.0), (Sense::Growing, -1.0, -1.0)] {
        total.add(s.coefficient(frame, half, chi_sign), &s.tail(sense)?);

        let v = merge(
            s.upper_arc_dw(-half_pi_ch, sense)?,
            s.lower_arc_dw(3.0 * FRAC_PI_2, 5.0 * FRAC_PI_2, 2.0 * PI, -half_pi_ch, sense)?,
        );
        total.add(s.coefficient(frame, half * folded * sign, chi_sign), &v);
    }
    Ok(total.finish(s.condition(), Method::Prop33))
}
