//! Complex numbers carried as `mantissa * exp(log_scale)`.
//!
//! Values such as `K_{r+it}(y)` scale like `exp(-pi t / 2)` and leave the
//! range of `f64` long before the interesting regimes. Every evaluator in
//! this crate returns a [`ScaledComplex`]; conversion to a plain
//! [`Complex64`] is only attempted on request.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A complex value `mantissa * exp(log_scale)` with a natural-log frame.
///
/// Normalized values keep `|mantissa|` in `[1, e)`; zero is stored as
/// `0 * exp(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledComplex {
    mantissa: Complex64,
    log_scale: f64,
}

impl ScaledComplex {
    pub const ZERO: ScaledComplex = ScaledComplex {
        mantissa: Complex64::new(0.0, 0.0),
        log_scale: 0.0,
    };

    pub const ONE: ScaledComplex = ScaledComplex {
        mantissa: Complex64::new(1.0, 0.0),
        log_scale: 0.0,
    };

    /// Builds and normalizes `mantissa * exp(log_scale)`.
    pub fn new(mantissa: Complex64, log_scale: f64) -> Self {
        Self::normalized(mantissa, log_scale)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::normalized(z, 0.0)
    }

    /// `exp(log)` for a complex logarithm.
    pub fn from_log(log: Complex64) -> Self {
        Self::normalized(Complex64::cis(log.im), log.re)
    }

    /// `exp(log_modulus + i * phase)`.
    pub fn from_polar_log(log_modulus: f64, phase: f64) -> Self {
        Self::normalized(Complex64::cis(phase), log_modulus)
    }

    fn normalized(mantissa: Complex64, log_scale: f64) -> Self {
        if mantissa.re == 0.0 && mantissa.im == 0.0 {
            return Self::ZERO;
        }
        let norm = mantissa.norm();
        if !norm.is_finite() || !log_scale.is_finite() {
            return ScaledComplex {
                mantissa,
                log_scale,
            };
        }
        let mut shift = norm.ln().floor();
        let mut m = mantissa * (-shift).exp();
        // exp(-shift) is rounded; nudge back into [1, e) if it drifted out.
        let n = m.norm();
        if n < 1.0 {
            m *= std::f64::consts::E;
            shift -= 1.0;
        } else if n >= std::f64::consts::E {
            m /= std::f64::consts::E;
            shift += 1.0;
        }
        ScaledComplex {
            mantissa: m,
            log_scale: log_scale + shift,
        }
    }

    pub fn mantissa(&self) -> Complex64 {
        self.mantissa
    }

    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.re == 0.0 && self.mantissa.im == 0.0
    }

    pub fn is_finite(&self) -> bool {
        self.mantissa.re.is_finite() && self.mantissa.im.is_finite() && self.log_scale.is_finite()
    }

    /// Natural log of the modulus; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mantissa.norm().ln() + self.log_scale
        }
    }

    /// Principal argument in `(-pi, pi]`.
    pub fn arg(&self) -> f64 {
        self.mantissa.arg()
    }

    /// Plain complex value; underflows to zero or overflows to infinity
    /// outside the `f64` range.
    pub fn to_complex(&self) -> Complex64 {
        self.mantissa * self.log_scale.exp()
    }

    /// Plain complex value when it is representable as a normal `f64`.
    pub fn try_to_complex(&self) -> Option<Complex64> {
        if self.is_zero() {
            return Some(Complex64::new(0.0, 0.0));
        }
        let factor = self.log_scale.exp();
        if !(f64::MIN_POSITIVE..f64::INFINITY).contains(&factor) {
            return None;
        }
        let z = self.mantissa * factor;
        (z.re.is_finite() && z.im.is_finite()).then_some(z)
    }

    /// Mantissa expressed in the frame `exp(frame)`.
    pub fn in_frame(&self, frame: f64) -> Complex64 {
        if self.is_zero() {
            return self.mantissa;
        }
        self.mantissa * (self.log_scale - frame).exp()
    }

    pub fn conj(&self) -> Self {
        ScaledComplex {
            mantissa: self.mantissa.conj(),
            log_scale: self.log_scale,
        }
    }

    pub fn scale_by_exp(&self, log_factor: f64) -> Self {
        if self.is_zero() {
            return *self;
        }
        ScaledComplex {
            mantissa: self.mantissa,
            log_scale: self.log_scale + log_factor,
        }
    }

    pub fn mul_complex(&self, z: Complex64) -> Self {
        Self::normalized(self.mantissa * z, self.log_scale)
    }

    /// `|self - other| / |other|`, computed without leaving the scaled frame.
    pub fn rel_diff(&self, other: &ScaledComplex) -> f64 {
        let diff = *self - *other;
        if diff.is_zero() {
            return 0.0;
        }
        (diff.ln_abs() - other.ln_abs()).exp()
    }

    /// `|self| / |other|`.
    pub fn abs_ratio(&self, other: &ScaledComplex) -> f64 {
        (self.ln_abs() - other.ln_abs()).exp()
    }
}

impl Default for ScaledComplex {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<Complex64> for ScaledComplex {
    fn from(z: Complex64) -> Self {
        Self::from_complex(z)
    }
}

impl From<f64> for ScaledComplex {
    fn from(x: f64) -> Self {
        Self::from_complex(Complex64::new(x, 0.0))
    }
}

impl Add for ScaledComplex {
    type Output = ScaledComplex;

    fn add(self, rhs: ScaledComplex) -> ScaledComplex {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let frame = self.log_scale.max(rhs.log_scale);
        let m = self.mantissa * (self.log_scale - frame).exp()
            + rhs.mantissa * (rhs.log_scale - frame).exp();
        Self::normalized(m, frame)
    }
}

impl Sub for ScaledComplex {
    type Output = ScaledComplex;

    fn sub(self, rhs: ScaledComplex) -> ScaledComplex {
        self + (-rhs)
    }
}

impl Neg for ScaledComplex {
    type Output = ScaledComplex;

    fn neg(self) -> ScaledComplex {
        ScaledComplex {
            mantissa: -self.mantissa,
            log_scale: self.log_scale,
        }
    }
}

impl Mul for ScaledComplex {
    type Output = ScaledComplex;

    fn mul(self, rhs: ScaledComplex) -> ScaledComplex {
        Self::normalized(self.mantissa * rhs.mantissa, self.log_scale + rhs.log_scale)
    }
}

impl Mul<Complex64> for ScaledComplex {
    type Output = ScaledComplex;

    fn mul(self, rhs: Complex64) -> ScaledComplex {
        self.mul_complex(rhs)
    }
}

impl Div for ScaledComplex {
    type Output = ScaledComplex;

    fn div(self, rhs: ScaledComplex) -> ScaledComplex {
        Self::normalized(self.mantissa / rhs.mantissa, self.log_scale - rhs.log_scale)
    }
}

impl fmt::Display for ScaledComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} {:+}i)·e^{}",
            self.mantissa.re, self.mantissa.im, self.log_scale
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::E;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn additive_identity() {
        let one = ScaledComplex::from(1.0);
        assert_eq!(one + ScaledComplex::ZERO, one);
        assert_eq!(ScaledComplex::ZERO + one, one);
    }

    #[test]
    fn exact_cancellation() {
        let one = ScaledComplex::from(1.0);
        let z = one + ScaledComplex::from(-1.0);
        assert!(z.is_zero());
        assert_eq!(z.log_scale(), 0.0);
    }

    #[test]
    fn same_scale_addition_normalizes() {
        let a = ScaledComplex::new(c(2.0, 0.0), 10.0);
        let b = ScaledComplex::new(c(3.0, 0.0), 10.0);
        let s = a + b;
        assert_eq!(s.log_scale(), 11.0);
        assert_relative_eq!(s.mantissa().re, 5.0 / E, max_relative = 1e-15);
        assert_eq!(s.mantissa().im, 0.0);
    }

    #[test]
    fn underflowing_magnitudes_stay_exact() {
        let a = ScaledComplex::from_polar_log(-5000.0, 0.3);
        let b = ScaledComplex::new(Complex64::cis(0.3) * 2.0, -5000.0);
        assert!(a.to_complex() == c(0.0, 0.0));
        assert!(a.try_to_complex().is_none());
        let ratio = b / a;
        assert_relative_eq!(ratio.to_complex().re, 2.0, max_relative = 1e-13);
        assert_relative_eq!((a + a).rel_diff(&b), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn rescaling_uses_larger_frame() {
        let big = ScaledComplex::from_polar_log(50.0, 0.0);
        let tiny = ScaledComplex::from_polar_log(-50.0, 0.0);
        let s = big + tiny;
        assert_relative_eq!(s.ln_abs(), 50.0, max_relative = 1e-15);
    }

    proptest! {
        #[test]
        fn round_trip(re in -1e200f64..1e200, im in -1e200f64..1e200) {
            let z = c(re, im);
            let back = ScaledComplex::from_complex(z).to_complex();
            let scale = z.norm().max(f64::MIN_POSITIVE);
            prop_assert!((back - z).norm() <= 4.0 * f64::EPSILON * scale);
        }

        #[test]
        fn mantissa_is_normalized(re in -1e10f64..1e10, im in -1e10f64..1e10, s in -1e3f64..1e3) {
            let v = ScaledComplex::new(c(re, im), s);
            if !v.is_zero() {
                let n = v.mantissa().norm();
                prop_assert!((1.0..E).contains(&n), "norm {}", n);
            }
        }

        #[test]
        fn add_and_mul_match_plain_arithmetic(
            ar in -1e3f64..1e3, ai in -1e3f64..1e3,
            br in -1e3f64..1e3, bi in -1e3f64..1e3,
        ) {
            let (a, b) = (c(ar, ai), c(br, bi));
            let (sa, sb) = (ScaledComplex::from(a), ScaledComplex::from(b));
            let sum = (sa + sb).to_complex();
            let tol = 4.0 * f64::EPSILON * (a.norm() + b.norm()).max(1e-300);
            prop_assert!((sum - (a + b)).norm() <= tol);
            let prod = (sa * sb).to_complex();
            prop_assert!((prod - a * b).norm() <= 8.0 * f64::EPSILON * (a * b).norm().max(1e-300));
        }

        #[test]
        fn multiplication_is_associative(
            x in -700f64..700.0, y in -700f64..700.0, z in -700f64..700.0,
            p in -3.0f64..3.0, q in -3.0f64..3.0,
        ) {
            let a = ScaledComplex::from_polar_log(x, p);
            let b = ScaledComplex::from_polar_log(y, q);
            let cc = ScaledComplex::from_polar_log(z, p - q);
            let lhs = (a * b) * cc;
            let rhs = a * (b * cc);
            // Each product rounds its exponent by ~eps |log_scale|.
            let tol = 8.0 * f64::EPSILON * (x.abs() + y.abs() + z.abs() + 3.0);
            prop_assert!(lhs.rel_diff(&rhs) < tol);
        }
    }
}
