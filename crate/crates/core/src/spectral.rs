//! Real-frequency diagnostics: the Airy function g[ω], the round-trip loop
//! function, the signed force spectral density, resonance finding and the
//! dispersion-integral form of θ.
//!
//! None of this is a force route. The real-axis integral only converges
//! through mirror transparency and oscillates; use [`crate::force_imag`].

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::casimir::CavityConfig;
use crate::error::{domain, CasimirError, Result};
use crate::quadrature::{integrate, Tolerance};
use crate::scattering::{Frequency, MirrorStack};

/// Below this |1 − R e^{2iωτ}| with |R| = 1 the Airy function is infinite.
const RESONANCE_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSample {
    pub omega: f64,
    /// Intracavity over external vacuum energy density, g ≥ 0.
    pub g: f64,
    pub loop_f: Complex64,
    /// ω(1 − g)/2π; positive values push the mirrors together.
    pub density: f64,
}

/// Round-trip reflection R e^{2iωτ} on the real axis, and 1 minus it.
fn round_trip(cavity: &CavityConfig, omega: f64) -> Result<(Complex64, Complex64, Complex64)> {
    let r = cavity.reflection_product_at(Frequency::Real(omega))?;
    let loop_gain = r * Complex64::from_polar(1.0, 2.0 * omega * cavity.tau);
    let gap = Complex64::new(1.0, 0.0) - loop_gain;
    if gap.norm() < RESONANCE_FLOOR {
        return Err(CasimirError::DivergentResonance(omega));
    }
    Ok((r, loop_gain, gap))
}

/// g[ω] = (1 − |r₁r₂|²)/|1 − r₁r₂ e^{2iωτ}|².
pub fn airy(cavity: &CavityConfig, omega: f64) -> Result<f64> {
    let (r, _, gap) = round_trip(cavity, omega)?;
    Ok(((1.0 - r.norm_sqr()) / gap.norm_sqr()).max(0.0))
}

/// f[ω] = r₁r₂ e^{2iωτ}/(1 − r₁r₂ e^{2iωτ}).
pub fn loop_function(cavity: &CavityConfig, omega: f64) -> Result<Complex64> {
    let (_, loop_gain, gap) = round_trip(cavity, omega)?;
    Ok(loop_gain / gap)
}

pub fn sample(cavity: &CavityConfig, omega: f64) -> Result<SpectralSample> {
    let (r, loop_gain, gap) = round_trip(cavity, omega)?;
    let g = ((1.0 - r.norm_sqr()) / gap.norm_sqr()).max(0.0);
    Ok(SpectralSample {
        omega,
        g,
        loop_f: loop_gain / gap,
        density: omega * (1.0 - g) / (2.0 * PI),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPoint {
    pub omega: f64,
    pub result: Result<SpectralSample>,
}

/// Samples on a positive increasing grid. A failing point is recorded and
/// the rest of the grid is still evaluated.
pub fn spectrum(cavity: &CavityConfig, omega_grid: &[f64]) -> Result<Vec<SpectrumPoint>> {
    for (i, &w) in omega_grid.iter().enumerate() {
        if !(w > 0.0 && w.is_finite()) {
            return Err(domain(format!("omega grid must be positive, got {w}")));
        }
        if i > 0 && w <= omega_grid[i - 1] {
            return Err(domain("omega grid must be strictly increasing"));
        }
    }
    Ok(omega_grid
        .par_iter()
        .map(|&omega| SpectrumPoint {
            omega,
            result: sample(cavity, omega),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub omega_peak: f64,
    pub g_peak: f64,
    pub fwhm: Option<f64>,
    /// Free spectral range π/τ over the full width.
    pub finesse: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Antiresonance {
    pub omega: f64,
    pub g: f64,
}

fn scan(cavity: &CavityConfig, omega_min: f64, omega_max: f64, points: usize) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    if !(omega_min > 0.0 && omega_max > omega_min && omega_max.is_finite()) {
        return Err(domain("omega range must satisfy 0 < min < max"));
    }
    if points < 3 {
        return Err(domain("resonance scan needs at least 3 points"));
    }
    let step = (omega_max - omega_min) / (points - 1) as f64;
    let fsr = PI / cavity.tau;
    if step > fsr / 20.0 {
        return Err(domain(format!(
            "grid step {step} is coarser than a twentieth of the free spectral range {fsr}"
        )));
    }
    let omegas: Vec<f64> = (0..points).map(|i| omega_min + step * i as f64).collect();
    let g = omegas
        .iter()
        .map(|&w| airy(cavity, w))
        .collect::<Result<Vec<_>>>()?;
    Ok((omegas, g, step))
}

/// Local maxima of g on a uniform grid, refined by Brent's method, with
/// full width at half maximum and finesse.
pub fn find_resonances(
    cavity: &CavityConfig,
    omega_min: f64,
    omega_max: f64,
    points: usize,
) -> Result<Vec<Resonance>> {
    let (omegas, g, step) = scan(cavity, omega_min, omega_max, points)?;
    let fsr = PI / cavity.tau;
    let mut out = Vec::new();
    for i in 1..omegas.len() - 1 {
        if !(g[i] > g[i - 1] && g[i] >= g[i + 1]) {
            continue;
        }
        let (omega_peak, neg) = brent_minimize(
            |w| airy(cavity, w).map(|v| -v),
            omegas[i - 1],
            omegas[i + 1],
        )?;
        let g_peak = -neg;
        let half = 0.5 * g_peak;
        let right = half_crossing(cavity, omega_peak, step, half, fsr / 2.0)?;
        let left = half_crossing(cavity, omega_peak, -step, half, fsr / 2.0)?;
        let fwhm = match (left, right) {
            (Some(l), Some(r)) => Some(r - l),
            _ => None,
        };
        out.push(Resonance {
            omega_peak,
            g_peak,
            fwhm,
            finesse: fwhm.map(|w| fsr / w),
        });
    }
    Ok(out)
}

/// Local minima of g, refined like [`find_resonances`].
pub fn find_antiresonances(
    cavity: &CavityConfig,
    omega_min: f64,
    omega_max: f64,
    points: usize,
) -> Result<Vec<Antiresonance>> {
    let (omegas, g, _) = scan(cavity, omega_min, omega_max, points)?;
    let mut out = Vec::new();
    for i in 1..omegas.len() - 1 {
        if g[i] < g[i - 1] && g[i] <= g[i + 1] {
            let (omega, g) = brent_minimize(|w| airy(cavity, w), omegas[i - 1], omegas[i + 1])?;
            out.push(Antiresonance { omega, g });
        }
    }
    Ok(out)
}

/// Where g falls to `half`, walking from `start` in steps of `step`.
fn half_crossing(
    cavity: &CavityConfig,
    start: f64,
    step: f64,
    half: f64,
    reach: f64,
) -> Result<Option<f64>> {
    let mut inside = start;
    loop {
        let next = inside + step;
        if (next - start).abs() > reach || next <= 0.0 {
            return Ok(None);
        }
        if airy(cavity, next)? < half {
            let (mut a, mut b) = (inside, next);
            for _ in 0..100 {
                let m = 0.5 * (a + b);
                if m == a || m == b {
                    break;
                }
                if airy(cavity, m)? >= half {
                    a = m;
                } else {
                    b = m;
                }
            }
            return Ok(Some(0.5 * (a + b)));
        }
        inside = next;
    }
}

/// Brent's minimiser (golden section with parabolic steps) on [a, b].
fn brent_minimize<F>(mut f: F, mut a: f64, mut b: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    const GOLDEN: f64 = 0.381_966_011_250_105_1;
    let tol = f64::EPSILON.sqrt();
    let mut x = a + GOLDEN * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x)?;
    let (mut fw, mut fv) = (fx, fx);
    let (mut d, mut e): (f64, f64) = (0.0, 0.0);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let tol1 = tol * x.abs() + 1e-300;
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if x < m { tol1 } else { -tol1 };
                }
                golden = false;
            }
        }
        if golden {
            e = if x < m { b - x } else { a - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = f(u)?;
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            (v, fv) = (w, fw);
            (w, fw) = (x, fx);
            (x, fx) = (u, fu);
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                (v, fv) = (w, fw);
                (w, fw) = (u, fu);
            } else if fu <= fv || v == x || v == w {
                (v, fv) = (u, fu);
            }
        }
    }
    Ok((x, fx))
}

/// Controls for [`theta_dispersion`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionSpec {
    /// Number of whole slab periods π/ξ integrated before the tail is
    /// replaced by its period average.
    pub periods: usize,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Allowed relative change between the half-length and full-length
    /// estimates.
    pub convergence: f64,
}

impl Default for DispersionSpec {
    fn default() -> Self {
        Self {
            periods: 1000,
            rel_tol: 1e-9,
            max_subdivisions: 400,
            convergence: 5e-3,
        }
    }
}

/// θ = (2/π) ∫₀^∞ (−Re r[ω]) / ω² dω for a layered dielectric stack.
///
/// Integrates period by period up to `periods` multiples of π/ξ (ξ the
/// total static optical time), then adds the tail mean(−Re r)/Ω_N using
/// the average over the last period.
pub fn theta_dispersion(stack: &MirrorStack, spec: &DispersionSpec) -> Result<f64> {
    let slabs = match stack {
        MirrorStack::Layers(s) => s,
        MirrorStack::Analytic(_) => {
            return Err(CasimirError::Unsupported(
                "dispersion integral needs a layered dielectric stack".into(),
            ))
        }
    };
    if !stack.supports_real_axis() {
        return Err(CasimirError::Unsupported(
            "stack has no real-axis reflection model".into(),
        ));
    }
    if spec.periods < 2 {
        return Err(domain("dispersion integral needs at least 2 periods"));
    }
    let xi: f64 = slabs
        .iter()
        .map(|s| s.model.static_value().unwrap_or(1.0).sqrt() * s.thickness_time)
        .sum();
    if xi == 0.0 {
        return Ok(0.0);
    }
    let period = PI / xi;
    let tol = Tolerance {
        rel: spec.rel_tol,
        abs: 1e-15,
        max_subdivisions: spec.max_subdivisions,
    };
    let minus_re_r = |w: f64| -> Result<f64> { Ok(-stack.amplitudes_real(w)?.r.re) };

    let estimate = |head: f64, k: usize| -> Result<f64> {
        let a = period * (k - 1) as f64;
        let mean = integrate(minus_re_r, &[a, a + period], tol)?.value / period;
        Ok((2.0 / PI) * (head + mean / (period * k as f64)))
    };

    let half = spec.periods / 2;
    let mut head = 0.0;
    let mut half_estimate = 0.0;
    for k in 0..spec.periods {
        let (a, b) = (period * k as f64, period * (k + 1) as f64);
        head += integrate(|w| Ok(minus_re_r(w)? / (w * w)), &[a, b], tol)?.value;
        if k + 1 == half {
            half_estimate = estimate(head, half)?;
        }
    }
    let full = estimate(head, spec.periods)?;
    if (full - half_estimate).abs() > spec.convergence * full.abs().max(1e-300) {
        return Err(CasimirError::Accuracy {
            estimate: full,
            error: (full - half_estimate).abs(),
        });
    }
    Ok(full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::Slab;
    use crate::PermittivityModel;
    use approx::assert_relative_eq;

    fn constant_cavity(eta: f64, tau: f64) -> CavityConfig {
        // r̄₁ r₂ = η with both faces −√η
        let m = MirrorStack::constant(-eta.sqrt()).unwrap();
        CavityConfig::new(m.clone(), m, tau).unwrap()
    }

    fn transparent_cavity() -> CavityConfig {
        let m = MirrorStack::layers(vec![]).unwrap();
        CavityConfig::new(m.clone(), m, 1.0).unwrap()
    }

    #[test]
    fn no_cavity_means_unit_airy() {
        let c = transparent_cavity();
        for w in [0.1, 1.0, 7.3] {
            assert_eq!(airy(&c, w).unwrap(), 1.0);
            assert_eq!(loop_function(&c, w).unwrap(), Complex64::new(0.0, 0.0));
        }
        assert!(find_resonances(&c, 0.1, 10.0, 2000).unwrap().is_empty());
    }

    #[test]
    fn resonance_and_antiresonance_values() {
        let c = constant_cavity(0.5, 1.0);
        assert_relative_eq!(airy(&c, PI).unwrap(), 3.0, max_relative = 1e-14);
        assert_relative_eq!(airy(&c, PI / 2.0).unwrap(), 1.0 / 3.0, max_relative = 1e-14);
        let f = loop_function(&c, PI).unwrap();
        assert_relative_eq!(f.re, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn perfect_mirrors_diverge_on_resonance() {
        let c = CavityConfig::new(MirrorStack::perfect(), MirrorStack::perfect(), 1.0).unwrap();
        assert!(matches!(airy(&c, PI), Err(CasimirError::DivergentResonance(_))));
        assert_eq!(airy(&c, PI / 2.0).unwrap(), 0.0);
    }

    #[test]
    fn resonances_of_constant_mirrors() {
        let c = constant_cavity(0.9, 1.0);
        let peaks = find_resonances(&c, 0.5, 10.0, 2000).unwrap();
        assert_eq!(peaks.len(), 3);
        for (n, pk) in peaks.iter().enumerate() {
            assert!((pk.omega_peak - PI * (n + 1) as f64).abs() < 1e-6);
            assert!((pk.g_peak - 19.0).abs() < 1e-6);
            // π / (2 asin((1−η)/(2√η))), mpmath
            assert_relative_eq!(pk.finesse.unwrap(), 29.789_955_883_029_8, max_relative = 1e-6);
        }
        let troughs = find_antiresonances(&c, 0.5, 10.0, 2000).unwrap();
        for t in troughs {
            assert!((t.g - 1.0 / 19.0).abs() < 1e-6);
        }
    }

    #[test]
    fn lossless_loop_identity() {
        // |r₁r₂| = 1: 1 − g = −f − f*
        let c = CavityConfig::new(MirrorStack::perfect(), MirrorStack::perfect(), 1.3).unwrap();
        for w in [0.2, 1.0, 2.9, 7.7] {
            let s = sample(&c, w).unwrap();
            assert!((1.0 - s.g + 2.0 * s.loop_f.re).abs() < 1e-12);
        }
    }

    #[test]
    fn slab_mirror_density_nearly_cancels() {
        let slab = Slab::new(PermittivityModel::constant(4.0), 0.1).unwrap();
        let m = MirrorStack::layers(vec![slab]).unwrap();
        let c = CavityConfig::new(m.clone(), m, 1.0).unwrap();
        let n = 2000;
        let grid: Vec<f64> = (0..n).map(|i| 200.0 + PI * i as f64 / n as f64).collect();
        let d: Vec<f64> = spectrum(&c, &grid)
            .unwrap()
            .into_iter()
            .map(|p| p.result.unwrap().density)
            .collect();
        let mean = d.iter().sum::<f64>() / n as f64;
        let peak = d.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        assert!(mean.abs() <= 0.2 * peak, "mean {mean} peak {peak}");
    }

    #[test]
    fn spectrum_is_pointwise() {
        let c = constant_cavity(0.5, 1.0);
        let grid: Vec<f64> = (1..=40).map(|i| 0.25 * i as f64).collect();
        let whole = spectrum(&c, &grid).unwrap();
        let halves: Vec<_> = grid
            .chunks(7)
            .flat_map(|g| spectrum(&c, g).unwrap())
            .collect();
        assert_eq!(whole, halves);
    }

    #[test]
    fn coarse_grid_rejected() {
        let c = constant_cavity(0.9, 1.0);
        assert!(find_resonances(&c, 0.5, 10.0, 20).is_err());
    }

    #[test]
    fn density_sign_follows_airy() {
        let c = constant_cavity(0.5, 1.0);
        let grid: Vec<f64> = (1..=300).map(|i| 0.03 * i as f64).collect();
        for pt in spectrum(&c, &grid).unwrap() {
            let s = pt.result.unwrap();
            assert_eq!(s.density < 0.0, s.g > 1.0);
        }
        assert!(spectrum(&c, &[1.0, 0.5]).is_err());
    }

    #[test]
    fn theta_dispersion_single_slab() {
        let stack = MirrorStack::layers(vec![Slab::new(PermittivityModel::constant(4.0), 1.0).unwrap()]).unwrap();
        let theta = theta_dispersion(&stack, &DispersionSpec::default()).unwrap();
        assert_relative_eq!(theta, 1.5, max_relative = 1e-2);
    }

    #[test]
    fn theta_dispersion_is_additive() {
        let stack = MirrorStack::layers(vec![
            Slab::new(PermittivityModel::constant(4.0), 1.0).unwrap(),
            Slab::new(PermittivityModel::constant(2.0), 0.5).unwrap(),
        ])
        .unwrap();
        let theta = theta_dispersion(&stack, &DispersionSpec::default()).unwrap();
        assert_relative_eq!(theta, 1.75, max_relative = 1e-2);
    }

    #[test]
    fn theta_dispersion_vacuum_and_unsupported() {
        let vac = MirrorStack::layers(vec![Slab::new(PermittivityModel::vacuum(), 1.0).unwrap()]).unwrap();
        assert_eq!(theta_dispersion(&vac, &DispersionSpec::default()).unwrap(), 0.0);
        assert!(theta_dispersion(&MirrorStack::perfect(), &DispersionSpec::default()).is_err());
    }
}
