//! Scalar abstraction shared by the imaginary-axis fast path (`f64`) and
//! general complex-frequency evaluation (`Complex64`).

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

pub trait Amplitude:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_real(x: f64) -> Self;
    fn exp(self) -> Self;
    /// `exp(self) - 1` without cancellation near zero.
    fn exp_m1(self) -> Self;
    /// Principal square root.
    fn sqrt(self) -> Self;
    fn modulus(self) -> f64;
    fn re(self) -> f64;
    fn conj(self) -> Self;
    fn to_complex(self) -> Complex64;
    /// `Some` when the value lies exactly on the real line.
    fn as_real(self) -> Option<f64>;

    fn is_finite(self) -> bool {
        let z = self.to_complex();
        z.re.is_finite() && z.im.is_finite()
    }

    fn zero() -> Self {
        Self::from_real(0.0)
    }

    fn one() -> Self {
        Self::from_real(1.0)
    }
}

impl Amplitude for f64 {
    fn from_real(x: f64) -> Self {
        x
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn exp_m1(self) -> Self {
        f64::exp_m1(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn re(self) -> f64 {
        self
    }
    fn conj(self) -> Self {
        self
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    fn as_real(self) -> Option<f64> {
        Some(self)
    }
}

impl Amplitude for Complex64 {
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
    fn exp_m1(self) -> Self {
        // e^x (cos y + i sin y) - 1 with cos y - 1 = -2 sin²(y/2)
        let (x, y) = (self.re, self.im);
        if y == 0.0 {
            return Complex64::new(x.exp_m1(), 0.0);
        }
        let half = (0.5 * y).sin();
        Complex64::new(
            x.exp_m1() * y.cos() - 2.0 * half * half,
            x.exp() * y.sin(),
        )
    }
    fn sqrt(self) -> Self {
        Complex64::sqrt(self)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn re(self) -> f64 {
        self.re
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn to_complex(self) -> Complex64 {
        self
    }
    fn as_real(self) -> Option<f64> {
        (self.im == 0.0).then_some(self.re)
    }
}
