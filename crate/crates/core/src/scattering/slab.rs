use num_complex::Complex64;

use crate::amplitude::Amplitude;
use crate::error::{CasimirError, Result};
use crate::permittivity::PermittivityModel;

use super::{Frequency, TwoPortScattering};

/// A homogeneous dielectric layer. `thickness_time` is l/c.
#[derive(Debug, Clone, PartialEq)]
pub struct Slab {
    pub model: PermittivityModel,
    pub thickness_time: f64,
}

impl Slab {
    /// Zero thickness is allowed and behaves as the identity two-port.
    pub fn new(model: PermittivityModel, thickness_time: f64) -> Result<Self> {
        let slab = Self {
            model,
            thickness_time,
        };
        slab.validate()?;
        Ok(slab)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.thickness_time >= 0.0 && self.thickness_time.is_finite()) {
            return Err(CasimirError::InvalidModel(format!(
                "slab thickness must satisfy thickness_time ≥ 0, got {}",
                self.thickness_time
            )));
        }
        let report = self.model.validate_model();
        match report.violation {
            None => Ok(()),
            Some(v) => Err(CasimirError::InvalidModel(v.message)),
        }
    }

    /// Fabry–Perot form of a single slab at complex p (ω = ip):
    ///
    /// ```text
    /// r = r̄ = −ρ (1 − e^{−2pξ}) / (1 − ρ² e^{−2pξ})
    /// t     = (1 − ρ²) e^{−pξ} / (1 − ρ² e^{−2pξ})
    /// ρ = (√ε − 1)/(√ε + 1),  ξ = √ε l/c
    /// ```
    pub(crate) fn amplitudes_at<A: Amplitude>(
        &self,
        p: A,
        frequency: Frequency,
    ) -> Result<TwoPortScattering<A>> {
        let eps = self.model.eval_at(p)?;
        let mut n = eps.sqrt();
        // The form is invariant under n → −n (ρ → 1/ρ); pick the branch whose
        // round-trip factor decays.
        if (p * n).re() < 0.0 {
            n = -n;
        }
        let one = A::one();
        let rho = (n - one) / (n + one);
        let one_minus_rho2 = A::from_real(4.0) * n / ((n + one) * (n + one));
        let rho2 = one - one_minus_rho2;
        let xi = n * A::from_real(self.thickness_time);
        let em1 = (-(A::from_real(2.0) * p * xi)).exp_m1();
        let denom = one_minus_rho2 - rho2 * em1;
        let r = rho * em1 / denom;
        let t = one_minus_rho2 * (-(p * xi)).exp() / denom;
        if !(r.is_finite() && t.is_finite()) {
            return Err(CasimirError::Domain(format!(
                "slab amplitudes not finite at {frequency:?}"
            )));
        }
        Ok(TwoPortScattering::new(frequency, r, r, t))
    }

    /// Amplitudes on the imaginary axis, ω = ip with p ≥ 0. Real-valued,
    /// with r ≤ 0 and 0 < t ≤ 1.
    pub fn amplitudes_imag(&self, p: f64) -> Result<TwoPortScattering<f64>> {
        let f = Frequency::Imaginary(p);
        f.check()?;
        self.amplitudes_at(p, f)
    }

    /// Amplitudes on the physical frequency axis (e^{−2pξ} → e^{2iωξ}).
    pub fn amplitudes_real(&self, omega: f64) -> Result<TwoPortScattering<Complex64>> {
        let f = Frequency::Real(omega);
        f.check()?;
        if !self.model.supports_real_axis() {
            return Err(CasimirError::Unsupported(
                "slab model cannot be evaluated on the real frequency axis".into(),
            ));
        }
        self.amplitudes_at(f.p(), f)
    }

    pub fn amplitudes(&self, frequency: Frequency) -> Result<TwoPortScattering<Complex64>> {
        frequency.check()?;
        self.amplitudes_at(frequency.p(), frequency)
    }

    /// (ε(i·0) − 1)/2 · l/c, the slope −dr/dp at p = 0.
    pub fn theta_static(&self) -> Result<f64> {
        let eps0 = self.model.static_value().ok_or_else(|| {
            CasimirError::Unsupported(
                "ε(i·0) is not determined by this model (tabulation lacks a p = 0 sample)".into(),
            )
        })?;
        if !eps0.is_finite() {
            return Err(CasimirError::Unsupported("ε(i·0) diverges".into()));
        }
        Ok(0.5 * (eps0 - 1.0) * self.thickness_time)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permittivity::Oscillator;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn constant(eps: f64, l: f64) -> Slab {
        Slab::new(PermittivityModel::constant(eps), l).unwrap()
    }

    #[test]
    fn vacuum_slab_is_a_delay() {
        let s = constant(1.0, 0.7).amplitudes_imag(1.3).unwrap();
        assert_eq!(s.r, 0.0);
        assert_relative_eq!(s.t, (-1.3f64 * 0.7).exp(), max_relative = 1e-15);
    }

    #[test]
    fn zero_frequency_is_transparent() {
        for slab in [constant(4.0, 1.0), constant(1e6, 0.1)] {
            let s = slab.amplitudes_imag(0.0).unwrap();
            assert_eq!(s.r, 0.0);
            assert_eq!(s.t, 1.0);
        }
    }

    #[test]
    fn eps4_reference_values() {
        // mpmath oracle
        let s = constant(4.0, 1.0).amplitudes_imag(1.0).unwrap();
        assert_relative_eq!(s.r, -0.327_895_410_807_936_5, max_relative = 1e-13);
        assert_relative_eq!(s.t, 0.120_543_343_805_386_84, max_relative = 1e-13);
        assert_eq!(s.r, s.r_bar);
    }

    #[test]
    fn zero_thickness_is_identity() {
        let s = constant(9.0, 0.0).amplitudes_imag(5.0).unwrap();
        assert_eq!((s.r, s.t), (0.0, 1.0));
    }

    #[test]
    fn half_wave_slab_is_transparent() {
        // ξ = 2, ωξ = π
        let s = constant(4.0, 1.0).amplitudes_real(PI / 2.0).unwrap();
        assert!(s.r.norm() < 1e-15);
        assert_relative_eq!(s.t.norm(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn quarter_wave_slab() {
        // ωξ = π/2, |r| = 2ρ/(1+ρ²) = 0.6
        let s = constant(4.0, 1.0).amplitudes_real(PI / 4.0).unwrap();
        assert_relative_eq!(s.r.norm(), 0.6, max_relative = 1e-14);
        assert_relative_eq!(s.r.norm_sqr() + s.t.norm_sqr(), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn lossy_slab_absorbs() {
        let m = PermittivityModel::lorentz(vec![Oscillator::new(2.0, 1.0, 0.3)]);
        let s = Slab::new(m, 0.5).unwrap().amplitudes_real(1.1).unwrap();
        assert!(s.r.norm_sqr() + s.t.norm_sqr() < 1.0);
    }

    #[test]
    fn lossless_lorentz_above_resonance_stays_bounded() {
        // ε < 0 in a band above ω0: evanescent slab
        let m = PermittivityModel::lorentz(vec![Oscillator::new(3.0, 1.0, 0.0)]);
        let s = Slab::new(m, 2.0).unwrap().amplitudes_real(1.5).unwrap();
        assert_relative_eq!(s.r.norm_sqr() + s.t.norm_sqr(), 1.0, max_relative = 1e-12);
        assert!(s.t.norm() < 1e-2);
    }

    #[test]
    fn theta_of_single_slab() {
        assert_eq!(constant(4.0, 1.0).theta_static().unwrap(), 1.5);
        assert_eq!(constant(1.0, 3.0).theta_static().unwrap(), 0.0);
    }

    #[test]
    fn rejects_negative_thickness() {
        assert!(Slab::new(PermittivityModel::constant(2.0), -1.0).is_err());
        assert!(Slab::new(PermittivityModel::constant(0.5), 1.0).is_err());
    }
}
