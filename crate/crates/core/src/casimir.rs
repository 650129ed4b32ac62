//! Casimir force between two mirrors: perfect-mirror closed form,
//! imaginary-frequency quadrature for arbitrary stacks, the τ-derivative,
//! the narrow-band approximation, and the bound checks that passivity
//! guarantees.
//!
//! Everything here runs in natural units (ħ = c = 1, times in τ₀); convert
//! with [`Units`] when reporting.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{domain, CasimirError, Result};
use crate::permittivity::log_grid;
use crate::quadrature::{integrate, Tolerance};
use crate::scattering::{check_passivity, AnalyticMirror, Frequency, MirrorStack, PassivityReport};
use crate::units::Units;

/// Bounds are judged with this many quadrature error estimates of slack.
pub const BOUND_SLACK: f64 = 10.0;

/// |R| may exceed one by this much (rounding) before a cavity is unstable.
const STABILITY_SLACK: f64 = 1e-12;

/// Two mirrors facing each other across a flight time τ = q/c.
///
/// Mirror 1 sits on the left and presents its right face (r̄₁) to the
/// cavity; mirror 2 presents its left face (r₂). For symmetric stacks the
/// distinction is moot.
#[derive(Debug, Clone, PartialEq)]
pub struct CavityConfig {
    pub mirror1: MirrorStack,
    pub mirror2: MirrorStack,
    pub tau: f64,
    pub units: Units,
}

impl CavityConfig {
    pub fn new(mirror1: MirrorStack, mirror2: MirrorStack, tau: f64) -> Result<Self> {
        check_tau(tau)?;
        mirror1.validate()?;
        mirror2.validate()?;
        Ok(Self {
            mirror1,
            mirror2,
            tau,
            units: Units::natural(),
        })
    }

    pub fn with_units(mut self, units: Units) -> Self {
        self.units = units;
        self
    }

    pub fn with_tau(&self, tau: f64) -> Self {
        Self {
            tau,
            ..self.clone()
        }
    }

    /// R(p) = r̄₁[ip] r₂[ip], the round-trip reflection on the imaginary axis.
    pub fn reflection_product(&self, p: f64) -> Result<f64> {
        let a = self.mirror1.amplitudes_imag(p)?;
        let b = self.mirror2.amplitudes_imag(p)?;
        Ok(a.r_bar * b.r)
    }

    /// R at an arbitrary frequency.
    pub fn reflection_product_at(&self, frequency: Frequency) -> Result<Complex64> {
        let a = self.mirror1.amplitudes(frequency)?;
        let b = self.mirror2.amplitudes(frequency)?;
        Ok(a.r_bar * b.r)
    }

    /// Both mirrors are layered dielectrics, so the force must be attractive
    /// and decreasing in τ.
    pub fn is_dielectric_pair(&self) -> bool {
        self.mirror1.is_dielectric() && self.mirror2.is_dielectric()
    }

    /// Largest |R(p)| over p = 0 and a logarithmic grid spanning
    /// [10⁻⁶, 10⁶]/τ; fails if the cavity would be unstable.
    pub fn stability_bound(&self) -> Result<f64> {
        let mut sup: f64 = 0.0;
        for x in std::iter::once(0.0).chain(log_grid(1e-6, 1e6, 97)) {
            let p = x / self.tau;
            let product = self.reflection_product(p)?;
            if !(product.abs() <= 1.0 + STABILITY_SLACK) {
                return Err(CasimirError::UnstableCavity { p, product });
            }
            sup = sup.max(product.abs());
        }
        Ok(sup.min(1.0))
    }

    /// Passivity of both mirrors plus the largest |r̄₁ r₂| on the grid.
    pub fn check_passivity(&self, grid: &[Complex64]) -> CavityPassivityReport {
        let mirror1 = check_passivity(&self.mirror1, grid);
        let mirror2 = check_passivity(&self.mirror2, grid);
        let max_abs_product = grid
            .iter()
            .filter_map(|&p| self.reflection_product_at(Frequency::from_p(p)).ok())
            .map(|r| r.norm())
            .fold(0.0, f64::max);
        CavityPassivityReport {
            passed: mirror1.passed && mirror2.passed && max_abs_product <= 1.0 + STABILITY_SLACK,
            mirror1,
            mirror2,
            max_abs_product,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CavityPassivityReport {
    pub mirror1: PassivityReport,
    pub mirror2: PassivityReport,
    pub max_abs_product: f64,
    pub passed: bool,
}

/// Controls for the force quadrature in u = 2pτ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Upper integration limit in u; the remainder is bounded analytically.
    pub u_max: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 0.0,
            max_subdivisions: 2000,
            u_max: 60.0,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(domain("rel_tol must satisfy rel_tol > 0"));
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return Err(domain("abs_tol must satisfy abs_tol ≥ 0"));
        }
        if self.max_subdivisions == 0 {
            return Err(domain("max_subdivisions must be at least 1"));
        }
        if !(self.u_max > 0.0 && self.u_max.is_finite()) {
            return Err(domain("u_max must satisfy u_max > 0"));
        }
        Ok(())
    }

    fn tolerance(&self) -> Tolerance {
        Tolerance {
            rel: self.rel_tol,
            abs: self.abs_tol,
            max_subdivisions: self.max_subdivisions,
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut b = vec![0.0];
        b.extend([1.0, 4.0, 12.0, 30.0].into_iter().filter(|&x| x < self.u_max));
        b.push(self.u_max);
        b
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundFlags {
    /// |F| ≤ F_P (within slack).
    pub within_perfect: bool,
    /// F ≥ 0 (within slack).
    pub attractive: bool,
    /// Attraction is guaranteed for this pair (both mirrors dielectric).
    pub attraction_required: bool,
}

impl BoundFlags {
    /// A guaranteed bound failed; points at a numerical bug, not user input.
    pub fn violated(&self) -> bool {
        !self.within_perfect || (self.attraction_required && !self.attractive)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    pub tau: f64,
    /// Positive values attract.
    pub force: f64,
    pub error_estimate: f64,
    pub f_perfect: f64,
    pub ratio: f64,
    pub bounds: BoundFlags,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientResult {
    pub tau: f64,
    /// dF/dτ.
    pub gradient: f64,
    pub error_estimate: f64,
}

fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("tau must satisfy tau > 0, got {tau}")))
    }
}

/// F_P = π/(24τ²): two perfect mirrors.
pub fn perfect_force(tau: f64) -> Result<f64> {
    check_tau(tau)?;
    Ok(PI / (24.0 * tau * tau))
}

/// Round-trip factor R e^{−u} and 1 − R e^{−u} at u = 2pτ, the latter
/// formed without cancellation when R ≈ 1.
fn round_trip(cavity: &CavityConfig, u: f64) -> Result<(f64, f64)> {
    let p = u / (2.0 * cavity.tau);
    let r = cavity.reflection_product(p)?;
    let decay = (-u).exp();
    let gap = (1.0 - r) - r * (-u).exp_m1();
    if !(gap > 0.0) {
        return Err(CasimirError::UnstableCavity { p, product: r });
    }
    Ok((r * decay, gap))
}

fn force_with_bound(cavity: &CavityConfig, spec: &QuadratureSpec, sup: f64) -> Result<ForceResult> {
    let tau = cavity.tau;
    check_tau(tau)?;
    let integral = integrate(
        |u| {
            let (loop_gain, gap) = round_trip(cavity, u)?;
            Ok(u * loop_gain / gap)
        },
        &spec.breakpoints(),
        spec.tolerance(),
    )
    .map_err(|e| rescale_accuracy(e, tau))?;
    let u = spec.u_max;
    let tail = sup * (1.0 + u) * (-u).exp() / (1.0 - sup * (-u).exp());
    let prefactor = 1.0 / (4.0 * PI * tau * tau);
    let force = prefactor * integral.value;
    let error_estimate = prefactor * (integral.error + tail);
    let f_perfect = perfect_force(tau)?;
    let slack = BOUND_SLACK * error_estimate;
    Ok(ForceResult {
        tau,
        force,
        error_estimate,
        f_perfect,
        ratio: force / f_perfect,
        bounds: BoundFlags {
            within_perfect: force.abs() <= f_perfect + slack,
            attractive: force >= -slack,
            attraction_required: cavity.is_dielectric_pair(),
        },
    })
}

fn rescale_accuracy(e: CasimirError, tau: f64) -> CasimirError {
    match e {
        CasimirError::Accuracy { estimate, error } => {
            let k = 1.0 / (4.0 * PI * tau * tau);
            CasimirError::Accuracy {
                estimate: k * estimate,
                error: k * error,
            }
        }
        other => other,
    }
}

/// F = (1/π) ∫₀^∞ p R / (e^{2pτ} − R) dp, evaluated in u = 2pτ as
/// (1/4πτ²) ∫ u R e^{−u}/(1 − R e^{−u}) du on [0, u_max] plus an analytic
/// tail bound folded into the error estimate.
///
/// Refuses cavities with |R| > 1 anywhere on the stability grid.
pub fn force_imag(cavity: &CavityConfig, spec: &QuadratureSpec) -> Result<ForceResult> {
    spec.validate()?;
    check_tau(cavity.tau)?;
    let sup = cavity.stability_bound()?;
    force_with_bound(cavity, spec, sup)
}

/// dF/dτ = −(1/4πτ³) ∫ u² R e^{−u}/(1 − R e^{−u})² du, by differentiating
/// under the integral (R does not depend on τ).
pub fn force_gradient(cavity: &CavityConfig, spec: &QuadratureSpec) -> Result<GradientResult> {
    spec.validate()?;
    let tau = cavity.tau;
    check_tau(tau)?;
    let sup = cavity.stability_bound()?;
    let integral = integrate(
        |u| {
            let (loop_gain, gap) = round_trip(cavity, u)?;
            Ok(u * u * loop_gain / (gap * gap))
        },
        &spec.breakpoints(),
        spec.tolerance(),
    )?;
    let u = spec.u_max;
    let e = (-u).exp();
    let tail = sup * (u * u + 2.0 * u + 2.0) * e / (1.0 - sup * e).powi(2);
    let prefactor = 1.0 / (4.0 * PI * tau * tau * tau);
    Ok(GradientResult {
        tau,
        gradient: -prefactor * integral.value,
        error_estimate: prefactor * (integral.error + tail),
    })
}

/// θ = Σ (ε_A(i·0) − 1)/2 · l_A/c, the low-frequency slope −dr/dp at p = 0.
pub fn theta_static(stack: &MirrorStack) -> Result<f64> {
    match stack {
        MirrorStack::Layers(slabs) => slabs.iter().map(|s| s.theta_static()).sum(),
        MirrorStack::Analytic(AnalyticMirror::NarrowBandToy { theta, .. }) => Ok(*theta),
        MirrorStack::Analytic(_) => Err(CasimirError::Unsupported(
            "theta is defined for mirrors transparent at zero frequency with r ≤ 0".into(),
        )),
    }
}

/// −dr/dp and −dr̄/dp at p = 0 by Richardson-extrapolated forward
/// differences. Independent check of [`theta_static`].
pub fn theta_numeric(stack: &MirrorStack) -> Result<(f64, f64)> {
    let scale = optical_time(stack)?.max(1e-12);
    let h = 1e-4 / scale;
    let slope = |h: f64| -> Result<(f64, f64)> {
        let s = stack.amplitudes_imag(h)?;
        Ok((-s.r / h, -s.r_bar / h))
    };
    let d1 = slope(h)?;
    let d2 = slope(h / 2.0)?;
    let d4 = slope(h / 4.0)?;
    let extrapolate = |a: f64, b: f64, c: f64| {
        let first = 2.0 * b - a;
        let second = 2.0 * c - b;
        (4.0 * second - first) / 3.0
    };
    Ok((extrapolate(d1.0, d2.0, d4.0), extrapolate(d1.1, d2.1, d4.1)))
}

/// Rough optical extent of a stack: Σ √ε(0)·l, or θ for the toy.
fn optical_time(stack: &MirrorStack) -> Result<f64> {
    match stack {
        MirrorStack::Layers(s) => Ok(s
            .iter()
            .map(|x| x.model.static_value().unwrap_or(1.0).sqrt() * x.thickness_time)
            .sum()),
        MirrorStack::Analytic(AnalyticMirror::NarrowBandToy { theta, .. }) => Ok(*theta),
        MirrorStack::Analytic(_) => theta_static(stack),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NarrowBandEstimate {
    /// 3θ₁θ₂/(8πτ⁴).
    pub force: f64,
    /// F/F_P = 9θ₁θ₂/(π²τ²).
    pub ratio: f64,
    /// θ_j/τ ≤ 0.1 for both mirrors.
    pub within_validity: bool,
}

/// Low-frequency estimate of the force between narrow-band mirrors.
pub fn narrowband_force(theta1: f64, theta2: f64, tau: f64) -> Result<NarrowBandEstimate> {
    check_tau(tau)?;
    for th in [theta1, theta2] {
        if !(th >= 0.0 && th.is_finite()) {
            return Err(domain(format!("theta must satisfy theta ≥ 0, got {th}")));
        }
    }
    let product = theta1 * theta2;
    Ok(NarrowBandEstimate {
        force: 3.0 * product / (8.0 * PI * tau.powi(4)),
        ratio: 9.0 * product / (PI * PI * tau * tau),
        within_validity: theta1.max(theta2) / tau <= 0.1,
    })
}

/// Force of a single transverse mode scaled by the number of coupled
/// modes. A qualitative three-dimensional estimate only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FresnelEstimate {
    pub force_1d: f64,
    pub fresnel_number: f64,
    pub force: f64,
    pub qualitative: bool,
}

pub fn fresnel_scale(force_1d: f64, fresnel_number: f64) -> Result<FresnelEstimate> {
    if !(fresnel_number >= 0.0 && fresnel_number.is_finite()) {
        return Err(domain(format!(
            "fresnel number must satisfy N ≥ 0, got {fresnel_number}"
        )));
    }
    Ok(FresnelEstimate {
        force_1d,
        fresnel_number,
        force: force_1d * fresnel_number,
        qualitative: true,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub tau: f64,
    pub result: Result<ForceResult>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    /// Successive successful forces never increase beyond their error slack.
    pub non_increasing: bool,
}

impl SweepResult {
    pub fn any_error(&self) -> bool {
        self.points.iter().any(|p| p.result.is_err())
    }

    pub fn any_bound_violated(&self) -> bool {
        self.points
            .iter()
            .any(|p| matches!(&p.result, Ok(r) if r.bounds.violated()))
    }
}

/// Force on every τ of a strictly increasing grid. Points are evaluated in
/// parallel; each is a pure function of its τ, so results do not depend on
/// the worker count.
pub fn sweep_force(
    template: &CavityConfig,
    tau_grid: &[f64],
    spec: &QuadratureSpec,
) -> Result<SweepResult> {
    spec.validate()?;
    if tau_grid.is_empty() {
        return Err(domain("tau grid is empty"));
    }
    for (i, &t) in tau_grid.iter().enumerate() {
        check_tau(t)?;
        if i > 0 && t <= tau_grid[i - 1] {
            return Err(domain("tau grid must be strictly increasing"));
        }
    }
    // R(p) does not depend on τ; only the grid scaling does.
    let sup = template.with_tau(tau_grid[0]).stability_bound();
    let points: Vec<SweepPoint> = tau_grid
        .par_iter()
        .map(|&tau| {
            let cavity = template.with_tau(tau);
            let result = match &sup {
                Ok(s) => force_with_bound(&cavity, spec, *s),
                Err(e) => Err(e.clone()),
            };
            SweepPoint { tau, result }
        })
        .collect();
    let ok: Vec<&ForceResult> = points.iter().filter_map(|p| p.result.as_ref().ok()).collect();
    let non_increasing = ok.windows(2).all(|w| {
        w[1].force <= w[0].force + BOUND_SLACK * (w[0].error_estimate + w[1].error_estimate)
    });
    Ok(SweepResult {
        points,
        non_increasing,
    })
}
