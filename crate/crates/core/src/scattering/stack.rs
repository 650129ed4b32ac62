use num_complex::Complex64;

use crate::amplitude::Amplitude;
use crate::error::{CasimirError, Result};

use super::{compose, Frequency, Slab, TwoPortScattering};

/// High-frequency behaviour of the narrow-band toy mirror.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NarrowBandCutoff {
    /// r[ip] = −min(pθ, 1).
    Clamp,
    /// As `Clamp` up to the given p, then fully transparent.
    Truncate(f64),
}

/// Mirrors given by closed-form amplitudes rather than layers.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticMirror {
    /// r = r̄ = −1, t = 0 at every frequency.
    Perfect,
    /// r = r̄ = η, t = 0.
    ConstantReflectivity { eta: f64 },
    /// A dielectric stack with both reflections negated; illustrates the
    /// dielectric–magnetic pairing that yields repulsion.
    Magnetic { base: Vec<Slab> },
    /// Linearised narrow-band reflection r[ip] ≈ −pθ, clamped to stay
    /// passive, with t = 1 − |r|. Defined on the real p axis only.
    NarrowBandToy { theta: f64, cutoff: NarrowBandCutoff },
}

/// One mirror of the cavity, described left to right.
#[derive(Debug, Clone, PartialEq)]
pub enum MirrorStack {
    Layers(Vec<Slab>),
    Analytic(AnalyticMirror),
}

impl MirrorStack {
    pub fn layers(slabs: Vec<Slab>) -> Result<Self> {
        let s = Self::Layers(slabs);
        s.validate()?;
        Ok(s)
    }

    pub fn perfect() -> Self {
        Self::Analytic(AnalyticMirror::Perfect)
    }

    pub fn constant(eta: f64) -> Result<Self> {
        let s = Self::Analytic(AnalyticMirror::ConstantReflectivity { eta });
        s.validate()?;
        Ok(s)
    }

    pub fn magnetic(base: Vec<Slab>) -> Result<Self> {
        let s = Self::Analytic(AnalyticMirror::Magnetic { base });
        s.validate()?;
        Ok(s)
    }

    pub fn narrowband(theta: f64) -> Result<Self> {
        let s = Self::Analytic(AnalyticMirror::NarrowBandToy {
            theta,
            cutoff: NarrowBandCutoff::Clamp,
        });
        s.validate()?;
        Ok(s)
    }

    /// Everything except the |r| ≤ 1 rule for analytic variants, which the
    /// passivity checker reports on.
    pub fn validate_structure(&self) -> Result<()> {
        let invalid = |m: String| Err(CasimirError::InvalidModel(m));
        match self {
            Self::Layers(slabs) | Self::Analytic(AnalyticMirror::Magnetic { base: slabs }) => {
                slabs.iter().try_for_each(Slab::validate)
            }
            Self::Analytic(AnalyticMirror::Perfect) => Ok(()),
            Self::Analytic(AnalyticMirror::ConstantReflectivity { eta }) => {
                if eta.is_finite() {
                    Ok(())
                } else {
                    invalid("eta must be finite".into())
                }
            }
            Self::Analytic(AnalyticMirror::NarrowBandToy { theta, cutoff }) => {
                if !(theta.is_finite() && *theta >= 0.0) {
                    return invalid("theta must satisfy theta ≥ 0".into());
                }
                match cutoff {
                    NarrowBandCutoff::Truncate(pc) if !(*pc > 0.0 && pc.is_finite()) => {
                        invalid("cutoff must satisfy cutoff > 0".into())
                    }
                    _ => Ok(()),
                }
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_structure()?;
        if let Self::Analytic(AnalyticMirror::ConstantReflectivity { eta }) = self {
            if eta.abs() > 1.0 {
                return Err(CasimirError::InvalidModel(format!(
                    "constant reflectivity must satisfy |eta| ≤ 1, got {eta}"
                )));
            }
        }
        Ok(())
    }

    /// Whether the stack is built only from dielectric slabs.
    pub fn is_dielectric(&self) -> bool {
        matches!(self, Self::Layers(_))
    }

    pub fn supports_real_axis(&self) -> bool {
        match self {
            Self::Layers(s) | Self::Analytic(AnalyticMirror::Magnetic { base: s }) => {
                s.iter().all(|x| x.model.supports_real_axis())
            }
            Self::Analytic(AnalyticMirror::NarrowBandToy { .. }) => false,
            Self::Analytic(_) => true,
        }
    }

    pub(crate) fn amplitudes_at<A: Amplitude>(
        &self,
        p: A,
        frequency: Frequency,
    ) -> Result<TwoPortScattering<A>> {
        match self {
            Self::Layers(slabs) => fold_layers(slabs, p, frequency),
            Self::Analytic(a) => match a {
                AnalyticMirror::Perfect => Ok(TwoPortScattering::new(
                    frequency,
                    -A::one(),
                    -A::one(),
                    A::zero(),
                )),
                AnalyticMirror::ConstantReflectivity { eta } => {
                    let r = A::from_real(*eta);
                    Ok(TwoPortScattering::new(frequency, r, r, A::zero()))
                }
                AnalyticMirror::Magnetic { base } => {
                    Ok(fold_layers(base, p, frequency)?.sign_flipped())
                }
                AnalyticMirror::NarrowBandToy { theta, cutoff } => {
                    let p = p.as_real().ok_or_else(|| {
                        CasimirError::Unsupported(
                            "narrow-band toy mirror is defined on the imaginary axis only".into(),
                        )
                    })?;
                    let r = match cutoff {
                        NarrowBandCutoff::Truncate(pc) if p > *pc => 0.0,
                        _ => -(p * theta).min(1.0),
                    };
                    let r = A::from_real(r);
                    Ok(TwoPortScattering::new(
                        frequency,
                        r,
                        r,
                        A::one() - A::from_real(r.modulus()),
                    ))
                }
            },
        }
    }

    /// Amplitudes on the imaginary axis at real p ≥ 0.
    pub fn amplitudes_imag(&self, p: f64) -> Result<TwoPortScattering<f64>> {
        let f = Frequency::Imaginary(p);
        f.check()?;
        self.amplitudes_at(p, f)
    }

    /// Amplitudes at an arbitrary frequency in the closed right half p-plane.
    pub fn amplitudes(&self, frequency: Frequency) -> Result<TwoPortScattering<Complex64>> {
        frequency.check()?;
        if let (Frequency::Real(_), false) = (frequency, self.supports_real_axis()) {
            return Err(CasimirError::Unsupported(
                "mirror has no real-axis reflection model".into(),
            ));
        }
        self.amplitudes_at(frequency.p(), frequency)
    }

    pub fn amplitudes_real(&self, omega: f64) -> Result<TwoPortScattering<Complex64>> {
        self.amplitudes(Frequency::Real(omega))
    }
}

fn fold_layers<A: Amplitude>(
    slabs: &[Slab],
    p: A,
    frequency: Frequency,
) -> Result<TwoPortScattering<A>> {
    slabs
        .iter()
        .try_fold(TwoPortScattering::identity(frequency), |acc, slab| {
            compose(&acc, &slab.amplitudes_at(p, frequency)?)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PermittivityModel;
    use approx::assert_relative_eq;

    fn slab(eps: f64, l: f64) -> Slab {
        Slab::new(PermittivityModel::constant(eps), l).unwrap()
    }

    fn bragg5() -> MirrorStack {
        let slabs = (0..5)
            .map(|k| slab(if k % 2 == 0 { 4.0 } else { 2.0 }, 0.1))
            .collect();
        MirrorStack::layers(slabs).unwrap()
    }

    #[test]
    fn empty_stack_is_transparent() {
        let s = MirrorStack::layers(vec![]).unwrap().amplitudes_imag(2.0).unwrap();
        assert_eq!((s.r, s.r_bar, s.t), (0.0, 0.0, 1.0));
    }

    #[test]
    fn single_slab_matches_slab() {
        let a = MirrorStack::layers(vec![slab(4.0, 1.0)]).unwrap().amplitudes_imag(1.0).unwrap();
        let b = slab(4.0, 1.0).amplitudes_imag(1.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn bragg_stack_golden() {
        // mpmath T-matrix product oracle
        let s = bragg5().amplitudes_imag(1.0).unwrap();
        assert_relative_eq!(s.r, -0.241_645_003_205_618_17, max_relative = 1e-12);
        assert_relative_eq!(s.t, 0.380_648_868_537_616_16, max_relative = 1e-12);
        assert!(s.r < 0.0 && s.t > 0.0 && s.r.abs() <= 1.0);
    }

    #[test]
    fn analytic_closed_forms() {
        let p = MirrorStack::perfect().amplitudes_imag(3.0).unwrap();
        assert_eq!((p.r, p.r_bar, p.t), (-1.0, -1.0, 0.0));
        let c = MirrorStack::constant(0.5).unwrap().amplitudes_imag(3.0).unwrap();
        assert_eq!((c.r, c.t), (0.5, 0.0));
        assert!(MirrorStack::constant(1.2).is_err());

        let base = vec![slab(4.0, 1.0)];
        let m = MirrorStack::magnetic(base.clone()).unwrap().amplitudes_imag(1.0).unwrap();
        let d = MirrorStack::layers(base).unwrap().amplitudes_imag(1.0).unwrap();
        assert_eq!(m.r, -d.r);
        assert_eq!(m.t, d.t);
    }

    #[test]
    fn narrowband_toy_clamps() {
        let toy = MirrorStack::narrowband(0.1).unwrap();
        let low = toy.amplitudes_imag(2.0).unwrap();
        assert_relative_eq!(low.r, -0.2, max_relative = 1e-15);
        assert_relative_eq!(low.t, 0.8, max_relative = 1e-15);
        assert_eq!(toy.amplitudes_imag(50.0).unwrap().r, -1.0);
        assert!(toy.amplitudes_real(1.0).is_err());

        let cut = MirrorStack::Analytic(AnalyticMirror::NarrowBandToy {
            theta: 0.1,
            cutoff: NarrowBandCutoff::Truncate(5.0),
        });
        assert_eq!(cut.amplitudes_imag(6.0).unwrap().r, 0.0);
    }

    #[test]
    fn asymmetric_stack_has_distinct_faces() {
        let s = MirrorStack::layers(vec![slab(9.0, 0.3), slab(1.5, 1.0)])
            .unwrap()
            .amplitudes_imag(1.0)
            .unwrap();
        assert!((s.r - s.r_bar).abs() > 1e-3);
        let rev = MirrorStack::layers(vec![slab(1.5, 1.0), slab(9.0, 0.3)])
            .unwrap()
            .amplitudes_imag(1.0)
            .unwrap();
        assert_relative_eq!(rev.r, s.r_bar, max_relative = 1e-14);
        assert_relative_eq!(rev.t, s.t, max_relative = 1e-14);
    }
}
