use std::ops::Mul;

use crate::amplitude::Amplitude;
use crate::error::{CasimirError, Result};

use super::{Frequency, TwoPortScattering};

/// Smallest |t| for which a T-matrix is formed; perfect mirrors never
/// enter T-space.
pub const MIN_TRANSMISSION: f64 = 1e-300;

/// Transfer matrix relating `(a_L^out, a_L^in)` to `(a_R^in, a_R^out)`:
///
/// ```text
/// T = (1/t) [[t² − r r̄, r], [−r̄, 1]]
/// ```
///
/// Multiplicative under stacking, `T_AB = T_A T_B`, with `det T = 1` for a
/// reciprocal network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix<A> {
    pub frequency: Frequency,
    pub m: [[A; 2]; 2],
}

impl<A: Amplitude> TransferMatrix<A> {
    pub fn from_scattering(s: &TwoPortScattering<A>) -> Result<Self> {
        if !(s.t.modulus() >= MIN_TRANSMISSION) {
            return Err(CasimirError::Singular(
                "transmission: a T-matrix needs t ≠ 0",
            ));
        }
        let inv_t = A::one() / s.t;
        Ok(Self {
            frequency: s.frequency,
            m: [
                [(s.t * s.t - s.r * s.r_bar) * inv_t, s.r * inv_t],
                [-s.r_bar * inv_t, inv_t],
            ],
        })
    }

    /// `t = 1/T₂₂`, `r = T₁₂/T₂₂`, `r̄ = −T₂₁/T₂₂`.
    pub fn to_scattering(&self) -> Result<TwoPortScattering<A>> {
        let t22 = self.m[1][1];
        if !(t22.modulus() > 0.0) || !t22.is_finite() {
            return Err(CasimirError::Singular("transfer matrix: T22 = 0"));
        }
        let inv = A::one() / t22;
        Ok(TwoPortScattering::new(
            self.frequency,
            self.m[0][1] * inv,
            -self.m[1][0] * inv,
            inv,
        ))
    }

    pub fn det(&self) -> A {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn identity(frequency: Frequency) -> Self {
        Self {
            frequency,
            m: [[A::one(), A::zero()], [A::zero(), A::one()]],
        }
    }

    /// `self · right`: `self` stacked on the left of `right`.
    pub fn product(&self, right: &Self) -> Result<Self> {
        if self.frequency != right.frequency {
            return Err(CasimirError::AxisMismatch);
        }
        Ok(*self * *right)
    }
}

impl<A: Amplitude> Mul for TransferMatrix<A> {
    type Output = TransferMatrix<A>;

    fn mul(self, o: Self) -> Self {
        let (a, b) = (&self.m, &o.m);
        TransferMatrix {
            frequency: self.frequency,
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }
}
