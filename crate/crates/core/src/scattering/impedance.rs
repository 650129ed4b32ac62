use crate::amplitude::Amplitude;
use crate::error::{CasimirError, Result};

use super::{Mat2, TwoPortScattering};

const SINGULAR: f64 = 1e-14;

/// Impedance matrix Z with e = Z h, where h = a^in − a^out and
/// e = a^in + a^out. Related to S by S = (Z − 1)(Z + 1)⁻¹.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpedanceMatrix {
    pub z: Mat2,
}

impl ImpedanceMatrix {
    /// Z = (1 + S)(1 − S)⁻¹. Fails when S has an eigenvalue at 1.
    pub fn from_s_matrix(s: &Mat2) -> Result<Self> {
        let one = Mat2::identity();
        let inv = (one - *s)
            .inverse(SINGULAR)
            .ok_or(CasimirError::Singular("impedance: 1 − S is not invertible"))?;
        Ok(Self { z: (one + *s) * inv })
    }

    pub fn from_scattering<A: Amplitude>(s: &TwoPortScattering<A>) -> Result<Self> {
        Self::from_s_matrix(&s.s_matrix())
    }

    /// S = (Z − 1)(Z + 1)⁻¹.
    pub fn to_s_matrix(&self) -> Result<Mat2> {
        let one = Mat2::identity();
        let inv = (self.z + one)
            .inverse(SINGULAR)
            .ok_or(CasimirError::Singular("impedance: Z + 1 is not invertible"))?;
        Ok((self.z - one) * inv)
    }

    /// Smallest eigenvalue of Z + Z†; non-negative for a passive network.
    pub fn min_resistance_eigenvalue(&self) -> f64 {
        2.0 * self.z.hermitian_eigenvalues().0
    }

    /// Largest entry of `1 − SS† − 2(Z + 1)⁻¹(Z + Z†)(Z† + 1)⁻¹`.
    pub fn power_identity_residual(&self, s: &Mat2) -> Result<f64> {
        let one = Mat2::identity();
        let zd = self.z.adjoint();
        let left = (self.z + one)
            .inverse(SINGULAR)
            .ok_or(CasimirError::Singular("impedance: Z + 1 is not invertible"))?;
        let right = (zd + one)
            .inverse(SINGULAR)
            .ok_or(CasimirError::Singular("impedance: Z† + 1 is not invertible"))?;
        let lhs = one - *s * s.adjoint();
        let rhs = (left * (self.z + zd) * right).scale(2.0.into());
        Ok((lhs - rhs).max_abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::Frequency;

    #[test]
    fn matched_load() {
        let s = TwoPortScattering::new(Frequency::Imaginary(1.0), 0.0, 0.0, 0.0);
        let z = ImpedanceMatrix::from_scattering(&s).unwrap();
        assert!((z.z - Mat2::identity()).max_abs() < 1e-15);
    }

    #[test]
    fn perfect_mirror_is_a_short() {
        let s = TwoPortScattering::new(Frequency::Imaginary(1.0), -1.0, -1.0, 0.0);
        let z = ImpedanceMatrix::from_scattering(&s).unwrap();
        assert!(z.z.max_abs() < 1e-15);
        assert_eq!(z.min_resistance_eigenvalue(), 0.0);
    }

    #[test]
    fn transparent_port_is_singular() {
        let s = TwoPortScattering::new(Frequency::Imaginary(1.0), 0.0, 0.0, 1.0);
        assert!(ImpedanceMatrix::from_scattering(&s).is_err());
    }

    #[test]
    fn roundtrip_to_s() {
        let s = TwoPortScattering::new(Frequency::Imaginary(1.0), -0.3, -0.1, 0.5);
        let z = ImpedanceMatrix::from_scattering(&s).unwrap();
        let back = z.to_s_matrix().unwrap();
        assert!((back - s.s_matrix()).max_abs() < 1e-14);
        assert!(z.power_identity_residual(&s.s_matrix()).unwrap() < 1e-14);
    }
}
