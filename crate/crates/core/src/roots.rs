//! Bracketed root finding: bisection to a coarse width, then Newton polish
//! that never leaves the bracket.

use crate::error::{Error, Result};

/// Width at which bisection hands over to Newton.
pub const BISECTION_WIDTH: f64 = 1e-8;

const MAX_BISECTIONS: usize = 200;
const MAX_NEWTON: usize = 12;

/// Root of `f` on `[lo, hi]` given a sign change.
///
/// `df` is the derivative used in the polish. Returns the iterate with the
/// smallest `|f|` among those seen in the final bracket.
pub fn bisect_newton<F, D>(f: F, df: D, lo: f64, hi: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    if !(lo <= hi) {
        return Err(Error::RootNotBracketed { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || fa.is_nan() || fb.is_nan() {
        return Err(Error::RootNotBracketed { lo, hi });
    }

    let mut iterations = 0;
    while b - a > BISECTION_WIDTH && iterations < MAX_BISECTIONS {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        iterations += 1;
    }

    let mut x = 0.5 * (a + b);
    let mut fx = f(x);
    let mut best = (x, fx.abs());
    for _ in 0..MAX_NEWTON {
        if fx == 0.0 {
            return Ok(x);
        }
        let d = df(x);
        if d == 0.0 || !d.is_finite() {
            break;
        }
        let next = x - fx / d;
        if !(a..=b).contains(&next) {
            break;
        }
        let step = (next - x).abs();
        x = next;
        fx = f(x);
        if fx.abs() < best.1 {
            best = (x, fx.abs());
        }
        if step <= 2.0 * f64::EPSILON * x.abs().max(f64::MIN_POSITIVE) {
            break;
        }
    }
    Ok(best.0)
}
