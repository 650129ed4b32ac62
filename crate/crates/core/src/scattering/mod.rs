//! Two-port descriptions of mirrors: slab amplitudes, stacking, transfer
//! and impedance matrices, and passivity checks.
//!
//! A two-port relates incoming and outgoing amplitudes on the left (L) and
//! right (R) faces through `S = [[r, t], [t, r_bar]]`; `r` is the reflection
//! seen from the left, `r_bar` the one seen from the right. Reciprocity
//! (equal transmissions) holds for every network built here.

mod impedance;
mod matrix;
mod passivity;
mod slab;
mod stack;
mod transfer;

use num_complex::Complex64;

use crate::amplitude::Amplitude;
use crate::error::{domain, CasimirError, Result};

pub use impedance::ImpedanceMatrix;
pub use matrix::Mat2;
pub use passivity::{
    check_passivity, default_passivity_grid, PassivityPoint, PassivityReport, PASSIVITY_TOLERANCE,
};
pub use slab::Slab;
pub use stack::{AnalyticMirror, MirrorStack, NarrowBandCutoff};
pub use transfer::TransferMatrix;

/// Where on the complex frequency plane a two-port is evaluated.
///
/// Everything is parametrised by p with ω = ip: the imaginary axis is real
/// p ≥ 0, the physical axis is p = −iω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Frequency {
    Imaginary(f64),
    Real(f64),
    Complex(Complex64),
}

impl Frequency {
    /// Tag a complex p, preferring the axis variants when p lies on one.
    pub fn from_p(p: Complex64) -> Self {
        if p.im == 0.0 {
            Self::Imaginary(p.re)
        } else if p.re == 0.0 && p.im < 0.0 {
            Self::Real(-p.im)
        } else {
            Self::Complex(p)
        }
    }

    pub fn p(&self) -> Complex64 {
        match *self {
            Self::Imaginary(p) => Complex64::new(p, 0.0),
            Self::Real(omega) => Complex64::new(0.0, -omega),
            Self::Complex(p) => p,
        }
    }

    pub(crate) fn check(&self) -> Result<()> {
        match *self {
            Self::Imaginary(p) if !(p >= 0.0 && p.is_finite()) => {
                Err(domain(format!("imaginary-axis frequency requires p ≥ 0, got {p}")))
            }
            Self::Real(w) if !(w > 0.0 && w.is_finite()) => {
                Err(domain(format!("real-axis frequency requires ω > 0, got {w}")))
            }
            Self::Complex(p) if !(p.re >= 0.0 && p.im.is_finite() && p.re.is_finite()) => {
                Err(domain(format!("complex frequency requires Re p ≥ 0, got {p}")))
            }
            _ => Ok(()),
        }
    }
}

/// Scattering amplitudes of a reciprocal two-port at one frequency.
///
/// On the imaginary axis the amplitudes are real, so `A = f64` there;
/// elsewhere `A = Complex64`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPortScattering<A = Complex64> {
    pub frequency: Frequency,
    pub r: A,
    pub r_bar: A,
    pub t: A,
}

/// Below this |1 − r̄_A r_B| the multiple-reflection sum is treated as divergent.
pub const DEGENERATE_DENOMINATOR: f64 = 1e-14;

impl<A: Amplitude> TwoPortScattering<A> {
    pub fn new(frequency: Frequency, r: A, r_bar: A, t: A) -> Self {
        Self {
            frequency,
            r,
            r_bar,
            t,
        }
    }

    /// Fully transparent two-port.
    pub fn identity(frequency: Frequency) -> Self {
        Self::new(frequency, A::zero(), A::zero(), A::one())
    }

    /// `[[r, t], [t, r_bar]]`.
    pub fn s_matrix(&self) -> Mat2 {
        Mat2::new([
            [self.r.to_complex(), self.t.to_complex()],
            [self.t.to_complex(), self.r_bar.to_complex()],
        ])
    }

    pub fn to_complex(&self) -> TwoPortScattering<Complex64> {
        TwoPortScattering::new(
            self.frequency,
            self.r.to_complex(),
            self.r_bar.to_complex(),
            self.t.to_complex(),
        )
    }

    /// Same network with both reflections negated. `S → −D S D` with
    /// `D = diag(1, −1)`, so passivity is unchanged.
    pub fn sign_flipped(&self) -> Self {
        Self::new(self.frequency, -self.r, -self.r_bar, self.t)
    }

    /// Same network seen from the other side.
    pub fn reversed(&self) -> Self {
        Self::new(self.frequency, self.r_bar, self.r, self.t)
    }

    pub fn transfer(&self) -> Result<TransferMatrix<A>> {
        TransferMatrix::from_scattering(self)
    }

    /// Stack `self` (left) against `right`.
    pub fn compose(&self, right: &Self) -> Result<Self> {
        compose(self, right)
    }
}

/// Stack two-port `a` on the left of `b`, summing multiple reflections in
/// closed form:
///
/// ```text
/// t_AB = t_A t_B / (1 − r̄_A r_B)
/// r_AB = r_A + r_B t_A² / (1 − r̄_A r_B)
/// r̄_AB = r̄_B + r̄_A t_B² / (1 − r̄_A r_B)
/// ```
///
/// Equivalent to the transfer-matrix product `T_A T_B`, but stays finite
/// for opaque stacks where the T entries overflow.
pub fn compose<A: Amplitude>(
    a: &TwoPortScattering<A>,
    b: &TwoPortScattering<A>,
) -> Result<TwoPortScattering<A>> {
    if a.frequency != b.frequency {
        return Err(CasimirError::AxisMismatch);
    }
    let denom = A::one() - a.r_bar * b.r;
    let size = denom.modulus();
    if !(size >= DEGENERATE_DENOMINATOR) {
        return Err(CasimirError::DegenerateComposition(size));
    }
    let inv = A::one() / denom;
    Ok(TwoPortScattering::new(
        a.frequency,
        a.r + b.r * a.t * a.t * inv,
        b.r_bar + a.r_bar * b.t * b.t * inv,
        a.t * b.t * inv,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn slab(eps: f64, l: f64) -> Slab {
        Slab::new(crate::PermittivityModel::constant(eps), l).unwrap()
    }

    #[test]
    fn frequency_tags() {
        assert_eq!(Frequency::from_p(Complex64::new(2.0, 0.0)), Frequency::Imaginary(2.0));
        assert_eq!(Frequency::from_p(Complex64::new(0.0, -3.0)), Frequency::Real(3.0));
        assert_eq!(Frequency::Real(3.0).p(), Complex64::new(0.0, -3.0));
        assert!(Frequency::Imaginary(-1.0).check().is_err());
        assert!(Frequency::Complex(Complex64::new(-0.1, 1.0)).check().is_err());
    }

    #[test]
    fn identity_is_neutral() {
        let s = slab(4.0, 1.0).amplitudes_imag(1.0).unwrap();
        let id = TwoPortScattering::identity(s.frequency);
        let left = compose(&id, &s).unwrap();
        let right = compose(&s, &id).unwrap();
        for c in [left, right] {
            assert_relative_eq!(c.r, s.r, max_relative = 1e-15);
            assert_relative_eq!(c.t, s.t, max_relative = 1e-15);
        }
    }

    #[test]
    fn two_identical_slabs() {
        // Oracle: mpmath T-matrix product, -0.333233933294140
        let s = slab(4.0, 1.0).amplitudes_imag(1.0).unwrap();
        let ab = compose(&s, &s).unwrap();
        assert_relative_eq!(ab.r, -0.333_233_933_294_140_2, max_relative = 1e-12);
        assert_relative_eq!(ab.t, 0.016_281_174_759_504_845, max_relative = 1e-12);
        let via_t = s.transfer().unwrap().product(&s.transfer().unwrap()).unwrap().to_scattering().unwrap();
        assert_relative_eq!(ab.r, via_t.r, max_relative = 1e-12);
        assert_relative_eq!(ab.r_bar, via_t.r_bar, max_relative = 1e-12);
        assert_relative_eq!(ab.t, via_t.t, max_relative = 1e-12);
    }

    #[test]
    fn axis_mismatch_rejected() {
        let a = slab(4.0, 1.0).amplitudes_imag(1.0).unwrap();
        let b = slab(4.0, 1.0).amplitudes_imag(2.0).unwrap();
        assert_eq!(compose(&a, &b), Err(CasimirError::AxisMismatch));
    }

    #[test]
    fn degenerate_composition_rejected() {
        let f = Frequency::Imaginary(1.0);
        let mirror = TwoPortScattering::new(f, -1.0, -1.0, 0.0);
        assert!(matches!(
            compose(&mirror, &mirror),
            Err(CasimirError::DegenerateComposition(_))
        ));
    }
}
