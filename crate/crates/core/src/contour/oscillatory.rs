//! Case `t = y cosh(mu) > y`. Points on the curves through `mu + i pi/2`
//! satisfy `sin w sinh u = g(u)`, `g(u) = u cosh(mu) + sinh(mu) - mu cosh(mu)`.
//! Near the saddle and near `mu_-` the quantities `1 - sin w` and
//! `1 + sin w` are formed from offsets `u - mu` and `u - mu_-` directly.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::point::{Branch, ContourPoint, Slope};
use super::{multiple_of_pi, sinh_minus_x, sinh_minus_x_cosh};
use crate::error::{Error, Result};
use crate::roots::bisect_newton;

const THREE_HALF_PI: f64 = 3.0 * FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaddleSign {
    Plus,
    Minus,
}

/// `R_k^± = ±mu + i(pi/2 + 2 k pi)`.
pub fn saddle_oscillatory(mu: f64, k: i32, sign: SaddleSign) -> Complex64 {
    let re = match sign {
        SaddleSign::Plus => mu,
        SaddleSign::Minus => -mu,
    };
    Complex64::new(re, multiple_of_pi(0.5 + 2.0 * k as f64, 0.0))
}

/// `phi'(R) = sinh R - i cosh(mu)` for `phi(R) = cosh R - i R cosh(mu)`.
pub fn phase_derivative_oscillatory(mu: f64, r: Complex64) -> Complex64 {
    r.sinh() - Complex64::new(0.0, mu.cosh())
}

/// `chi = y (sinh mu - mu cosh mu)`, series-evaluated for small `mu`.
pub fn chi(y: f64, mu: f64) -> f64 {
    y * sinh_minus_x_cosh(mu)
}

fn check_mu(mu: f64) -> Result<()> {
    if mu > 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("mu", mu, "must be positive and finite"))
    }
}

/// Terms of `sinh u + u cosh(mu) + (sinh mu - mu cosh mu)`.
fn mu_minus_terms(mu: f64, u: f64) -> [f64; 3] {
    [u.sinh(), u * mu.cosh(), sinh_minus_x_cosh(mu)]
}

/// Residual of the `mu_-` equation relative to the size of its terms.
pub fn mu_minus_residual(mu: f64, u: f64) -> f64 {
    let terms = mu_minus_terms(mu, u);
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    terms.iter().sum::<f64>().abs() / scale
}

/// Root in `(0, mu)` of `sinh u + u cosh(mu) = mu cosh(mu) - sinh(mu)`:
/// the abscissa of both finite endpoints of the contour.
pub fn mu_minus(mu: f64) -> Result<f64> {
    check_mu(mu)?;
    let ch = mu.cosh();
    let c = sinh_minus_x_cosh(mu);
    bisect_newton(|u| u.sinh() + u * ch + c, |u| u.cosh() + ch, 0.0, mu)
}

/// Regime constants needed by the integrands.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseData {
    pub chi: f64,
    pub mu_minus: f64,
}

/// Geometry of the case-2 contour for a fixed `mu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Case2Geometry {
    pub mu: f64,
    pub cosh_mu: f64,
    pub sinh_mu: f64,
    /// `sinh mu - mu cosh mu < 0`.
    pub c: f64,
    pub mu_minus: f64,
}

/// Everything an integrand needs at one abscissa `u`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BranchState {
    pub u: f64,
    /// `u - mu`.
    pub delta: f64,
    /// `u - mu_-`.
    pub d: f64,
    pub cosh_u: f64,
    /// `sin w` (same on all branches).
    pub x: f64,
    /// `|cos w|`.
    pub cos_abs: f64,
    /// `d(sin w)/du`.
    pub x_prime: f64,
}

fn saddle_slope(branch: Branch) -> f64 {
    match branch {
        Branch::ArcLower => 1.0,
        _ => -1.0,
    }
}

impl BranchState {
    pub fn w(&self, branch: Branch) -> f64 {
        if self.delta == 0.0 {
            return FRAC_PI_2;
        }
        let lower = self.x.atan2(self.cos_abs);
        match branch {
            Branch::ArcUpper => PI - lower,
            _ => lower,
        }
    }

    pub fn cos_w(&self, branch: Branch) -> f64 {
        match branch {
            Branch::ArcUpper => -self.cos_abs,
            _ => self.cos_abs,
        }
    }

    pub fn dw_du(&self, branch: Branch) -> Slope {
        if self.delta == 0.0 {
            return Slope::Finite(saddle_slope(branch));
        }
        if self.d == 0.0 || self.cos_abs == 0.0 {
            return Slope::Infinite;
        }
        let v = self.x_prime / self.cos_w(branch);
        if v.is_finite() {
            Slope::Finite(v)
        } else {
            Slope::Infinite
        }
    }

    /// `du/dw`; `0` at `mu_-`, `1 / (saddle slope)` at the saddle.
    pub fn du_dw(&self, branch: Branch) -> f64 {
        if self.d == 0.0 {
            return 0.0;
        }
        let v = self.cos_w(branch) / self.x_prime;
        if self.delta == 0.0 || !v.is_finite() {
            1.0 / saddle_slope(branch)
        } else {
            v
        }
    }

    /// Finite `dw/du` for integrands; callers stay away from `mu_-`.
    pub fn dw_du_value(&self, branch: Branch) -> f64 {
        match self.dw_du(branch) {
            Slope::Finite(v) => v,
            Slope::Infinite => f64::INFINITY,
        }
    }
}

impl Case2Geometry {
    pub fn new(mu: f64) -> Result<Self> {
        check_mu(mu)?;
        Ok(Case2Geometry {
            mu,
            cosh_mu: mu.cosh(),
            sinh_mu: mu.sinh(),
            c: sinh_minus_x_cosh(mu),
            mu_minus: mu_minus(mu)?,
        })
    }

    pub fn phase_data(&self, y: f64) -> PhaseData {
        PhaseData {
            chi: y * self.c,
            mu_minus: self.mu_minus,
        }
    }

    /// `h = sinh u - g(u)` from `delta = u - mu`; `1 - sin w = h / sinh u`.
    fn h(&self, delta: f64) -> f64 {
        let half = (0.5 * delta).sinh();
        self.sinh_mu * 2.0 * half * half + self.cosh_mu * sinh_minus_x(delta)
    }

    /// `h' = cosh u - cosh mu`.
    fn h_prime(&self, u: f64, delta: f64) -> f64 {
        2.0 * (0.5 * (u + self.mu)).sinh() * (0.5 * delta).sinh()
    }

    /// `f = sinh u + g(u)` from `d = u - mu_-`; `1 + sin w = f / sinh u`.
    fn f(&self, u: f64, d: f64) -> f64 {
        2.0 * (0.5 * (u + self.mu_minus)).cosh() * (0.5 * d).sinh() + d * self.cosh_mu
    }

    fn state_with(&self, u: f64, delta: f64, d: f64) -> BranchState {
        let (sinh_u, cosh_u) = (u.sinh(), u.cosh());
        let g = u * self.cosh_mu + self.c;
        let x = if sinh_u.is_finite() { g / sinh_u } else { 0.0 };
        let near_saddle = x > 0.5;
        let (one_minus_x, x_prime) = if near_saddle {
            let h = self.h(delta);
            let hp = self.h_prime(u, delta);
            (h / sinh_u, (h * cosh_u - hp * sinh_u) / (sinh_u * sinh_u))
        } else if sinh_u.is_finite() {
            (1.0 - x, (self.cosh_mu - g / u.tanh()) / sinh_u)
        } else {
            (1.0, 0.0)
        };
        let one_plus_x = if x < -0.5 { self.f(u, d) / sinh_u } else { 1.0 + x };
        let cos_abs = one_minus_x.max(0.0).sqrt() * one_plus_x.max(0.0).sqrt();
        BranchState {
            u,
            delta,
            d,
            cosh_u,
            x,
            cos_abs,
            x_prime,
        }
    }

    /// State at `u >= mu_-`.
    pub(crate) fn state(&self, u: f64) -> BranchState {
        self.state_with(u, u - self.mu, u - self.mu_minus)
    }

    pub(crate) fn state_from_mu_offset(&self, delta: f64) -> BranchState {
        let u = self.mu + delta;
        self.state_with(u, delta, u - self.mu_minus)
    }

    pub(crate) fn state_from_minus_offset(&self, d: f64) -> BranchState {
        let u = self.mu_minus + d;
        self.state_with(u, u - self.mu, d)
    }

    /// Solves `sin w = x(u)` on `[mu_-, mu]` given either
    /// `1 - sin w` (`upper_half`) or `1 + sin w`.
    fn solve_arc(&self, upper_half: bool, target: f64) -> Result<BranchState> {
        let span = self.mu - self.mu_minus;
        if upper_half {
            // sqrt(1 - x) is linear in u - mu near the saddle.
            let root = target.sqrt();
            let q = |delta: f64| (self.h(delta) / (self.mu + delta).sinh()).sqrt() - root;
            let dq = |delta: f64| {
                let s = self.state_from_mu_offset(delta);
                -s.x_prime / (2.0 * (self.h(delta) / (self.mu + delta).sinh()).sqrt())
            };
            let delta = bisect_newton(q, dq, -span, 0.0)?;
            Ok(self.state_from_mu_offset(delta))
        } else {
            let p = |d: f64| {
                let u = self.mu_minus + d;
                self.f(u, d) / u.sinh() - target
            };
            let dp = |d: f64| self.state_from_minus_offset(d).x_prime;
            let d = bisect_newton(p, dp, 0.0, span)?;
            Ok(self.state_from_minus_offset(d))
        }
    }

    /// Point on `arc_lower` at ordinate `w` in `[-pi/2, pi/2]`.
    pub(crate) fn lower_arc_state(&self, w: f64) -> Result<BranchState> {
        if !(-FRAC_PI_2..=FRAC_PI_2).contains(&w) {
            return Err(Error::invalid("w", w, "arc_lower needs w in [-pi/2, pi/2]"));
        }
        if w == FRAC_PI_2 {
            return Ok(self.state_from_mu_offset(0.0));
        }
        if w == -FRAC_PI_2 {
            return Ok(self.state_from_minus_offset(0.0));
        }
        if w >= 0.0 {
            self.solve_arc(true, 2.0 * (FRAC_PI_4 - 0.5 * w).sin().powi(2))
        } else {
            self.solve_arc(false, 2.0 * (FRAC_PI_4 + 0.5 * w).sin().powi(2))
        }
    }

    /// Point on `arc_upper` at ordinate `w` in `[pi/2, 3pi/2]`.
    pub(crate) fn upper_arc_state(&self, w: f64) -> Result<BranchState> {
        if !(FRAC_PI_2..=THREE_HALF_PI).contains(&w) {
            return Err(Error::invalid("w", w, "arc_upper needs w in [pi/2, 3pi/2]"));
        }
        if w == FRAC_PI_2 {
            return Ok(self.state_from_mu_offset(0.0));
        }
        if w == THREE_HALF_PI {
            return Ok(self.state_from_minus_offset(0.0));
        }
        if w <= PI {
            self.solve_arc(true, 2.0 * (0.5 * w - FRAC_PI_4).sin().powi(2))
        } else {
            self.solve_arc(false, 2.0 * (3.0 * FRAC_PI_4 - 0.5 * w).sin().powi(2))
        }
    }

    /// Point on `branch`; `param` is `w` on the arcs and `u` on the tail.
    pub fn point(&self, branch: Branch, param: f64) -> Result<ContourPoint> {
        let (state, w) = match branch {
            Branch::Tail => {
                if !(param >= self.mu && param.is_finite()) {
                    return Err(Error::invalid("u", param, "tail needs u in [mu, inf)"));
                }
                let s = self.state(param);
                (s, s.w(Branch::Tail))
            }
            Branch::ArcLower => (self.lower_arc_state(param)?, param),
            Branch::ArcUpper => (self.upper_arc_state(param)?, param),
            Branch::MonoMain => {
                return Err(Error::invalid(
                    "branch",
                    f64::NAN,
                    "mono_main is not a case-2 branch",
                ))
            }
        };
        Ok(ContourPoint {
            u: state.u,
            w,
            dw_du: state.dw_du(branch),
            branch,
        })
    }

    pub fn psi(&self, point: &ContourPoint) -> f64 {
        point.u.cosh() * point.w.cos() + point.w * self.cosh_mu
    }
}

/// Point on a case-2 branch; see [`Case2Geometry::point`].
pub fn path_case2(mu: f64, branch: Branch, param: f64) -> Result<ContourPoint> {
    Case2Geometry::new(mu)?.point(branch, param)
}

/// `psi = cosh u cos w + w cosh(mu)`.
pub fn psi_case2(mu: f64, point: &ContourPoint) -> f64 {
    point.u.cosh() * point.w.cos() + point.w * mu.cosh()
}
