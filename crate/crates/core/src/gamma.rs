//! Principal-branch `ln Gamma(z)` for complex `z`.
//!
//! Stirling's series with eight Bernoulli terms once `Re z >= 10`; smaller
//! arguments are shifted up with the recurrence. The result satisfies
//! `lnΓ(z+1) = lnΓ(z) + ln z` with principal logarithms.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `Gamma(1/3)` to 20 significant digits.
#[allow(clippy::excessive_precision)]
pub const GAMMA_ONE_THIRD: f64 = 2.678_938_534_707_747_633_7;

/// `ln(2 pi) / 2`.
#[allow(clippy::excessive_precision)]
const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_741_78;

/// `B_{2k} / (2k (2k-1))` for `k = 1..=8`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const SHIFT_THRESHOLD: f64 = 10.0;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

pub fn complex_log_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::invalid("z", z.re, "must be finite"));
    }

    let mut shifted = z;
    let mut correction = Complex64::new(0.0, 0.0);
    while shifted.re < SHIFT_THRESHOLD {
        correction += shifted.ln();
        shifted += 1.0;
    }

    let inv = shifted.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for coef in STIRLING {
        series += power * coef;
        power *= inv2;
    }
    let stirling = (shifted - 0.5) * shifted.ln() - shifted + HALF_LN_TWO_PI + series;
    Ok(stirling - correction)
}

/// `Gamma(x)` for real `x`, through [`complex_log_gamma`].
pub fn gamma_real(x: f64) -> Result<f64> {
    let lg = complex_log_gamma(Complex64::new(x, 0.0))?;
    // The imaginary part is a multiple of pi and only carries the sign.
    let sign = if ((lg.im / PI).round() as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(sign * lg.re.exp())
}
