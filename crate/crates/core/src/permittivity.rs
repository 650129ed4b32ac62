//! Dielectric response ε evaluated on the imaginary frequency axis, where
//! the force integral lives, and on the real axis for spectral diagnostics.
//!
//! Frequencies are in units of 1/τ₀. Along the imaginary axis ω = ip every
//! passive model is real, at least one, and (for the analytic families)
//! non-increasing in p.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::amplitude::Amplitude;
use crate::error::{domain, CasimirError, Result};

/// One damped oscillator term Ω²/(ω₀² − ω² − iγω).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator {
    /// Oscillator strength Ω.
    pub strength: f64,
    /// Resonance frequency ω₀; must be positive.
    pub resonance: f64,
    /// Damping rate γ ≥ 0.
    pub damping: f64,
}

impl Oscillator {
    pub fn new(strength: f64, resonance: f64, damping: f64) -> Self {
        Self {
            strength,
            resonance,
            damping,
        }
    }

    fn check(&self) -> std::result::Result<(), String> {
        let Self {
            strength,
            resonance,
            damping,
        } = *self;
        if !(strength.is_finite() && resonance.is_finite() && damping.is_finite()) {
            return Err("oscillator parameters must be finite".into());
        }
        if strength < 0.0 {
            return Err("oscillator strength must satisfy Ω ≥ 0".into());
        }
        if resonance <= 0.0 {
            return Err("oscillator resonance must satisfy ω0 > 0".into());
        }
        if damping < 0.0 {
            return Err("oscillator damping must satisfy γ ≥ 0".into());
        }
        Ok(())
    }
}

/// What a tabulated model does beyond its last sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailPolicy {
    /// ε = 1 + A/p², with A matched at the last sample.
    #[default]
    Decay,
    /// Queries past the last sample are errors.
    Error,
}

/// ε(ip) sampled on the imaginary axis, interpolated with a monotone
/// piecewise cubic in ln p.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedImag {
    samples: Vec<(f64, f64)>,
    tail: TailPolicy,
    // Hermite data over the strictly positive samples, in (ln p, ε).
    log_p: Vec<f64>,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl TabulatedImag {
    pub fn new(samples: Vec<(f64, f64)>, tail: TailPolicy) -> Result<Self> {
        if samples.is_empty() {
            return Err(CasimirError::InvalidModel(
                "tabulated model needs at least one sample".into(),
            ));
        }
        for (i, &(p, eps)) in samples.iter().enumerate() {
            if !(p.is_finite() && eps.is_finite()) {
                return Err(CasimirError::InvalidModel(format!(
                    "sample {i} is not finite"
                )));
            }
            if p < 0.0 {
                return Err(CasimirError::InvalidModel(format!(
                    "sample {i}: p must satisfy p ≥ 0"
                )));
            }
            if eps < 1.0 {
                return Err(CasimirError::InvalidModel(format!(
                    "sample {i}: eps must satisfy eps ≥ 1"
                )));
            }
            if i > 0 && p <= samples[i - 1].0 {
                return Err(CasimirError::InvalidModel(format!(
                    "sample {i}: p values must be strictly increasing"
                )));
            }
        }
        if samples.last().map(|s| s.0) == Some(0.0) {
            return Err(CasimirError::InvalidModel(
                "tabulated model needs a sample with p > 0".into(),
            ));
        }
        let positive: Vec<(f64, f64)> = samples.iter().copied().filter(|s| s.0 > 0.0).collect();
        let log_p: Vec<f64> = positive.iter().map(|s| s.0.ln()).collect();
        let values: Vec<f64> = positive.iter().map(|s| s.1).collect();
        let slopes = pchip_slopes(&log_p, &values);
        Ok(Self {
            samples,
            tail,
            log_p,
            values,
            slopes,
        })
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn tail(&self) -> TailPolicy {
        self.tail
    }

    fn last(&self) -> (f64, f64) {
        *self.samples.last().expect("non-empty by construction")
    }

    fn eval(&self, p: f64) -> Result<f64> {
        let (p_last, eps_last) = self.last();
        let value = if p > p_last {
            match self.tail {
                TailPolicy::Decay => {
                    let ratio = p_last / p;
                    1.0 + (eps_last - 1.0) * ratio * ratio
                }
                TailPolicy::Error => return Err(CasimirError::Extrapolation { p, last: p_last }),
            }
        } else if p < self.log_p.first().map_or(f64::INFINITY, |l| l.exp()) {
            let (p1, e1) = (self.log_p[0].exp(), self.values[0]);
            match self.samples[0] {
                (0.0, e0) => e0 + (e1 - e0) * (p / p1),
                _ => e1,
            }
        } else {
            hermite(&self.log_p, &self.values, &self.slopes, p.ln())
        };
        Ok(value.max(1.0))
    }
}

/// Fritsch–Carlson slopes; preserves monotonicity of the data.
fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n < 2 {
        return vec![0.0; n];
    }
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
    if n == 2 {
        return vec![delta[0]; 2];
    }
    let mut d = vec![0.0; n];
    for k in 1..n - 1 {
        if delta[k - 1] * delta[k] > 0.0 {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
        }
    }
    let end = |h0: f64, h1: f64, d0: f64, d1: f64| {
        let s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if s.signum() != d0.signum() || d0 == 0.0 {
            0.0
        } else if d0.signum() != d1.signum() && s.abs() > 3.0 * d0.abs() {
            3.0 * d0
        } else {
            s
        }
    };
    d[0] = end(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = end(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    d
}

fn hermite(x: &[f64], y: &[f64], d: &[f64], at: f64) -> f64 {
    if x.len() == 1 {
        return y[0];
    }
    let k = match x.partition_point(|&xi| xi <= at) {
        0 => 0,
        i if i >= x.len() => x.len() - 2,
        i => i - 1,
    };
    let h = x[k + 1] - x[k];
    let s = (at - x[k]) / h;
    let s2 = s * s;
    let s3 = s2 * s;
    let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    let h10 = s3 - 2.0 * s2 + s;
    let h01 = -2.0 * s3 + 3.0 * s2;
    let h11 = s3 - s2;
    h00 * y[k] + h10 * h * d[k] + h01 * y[k + 1] + h11 * h * d[k + 1]
}

#[derive(Debug, Clone, PartialEq)]
pub enum PermittivityModel {
    Constant { eps: f64 },
    LorentzOscillators { oscillators: Vec<Oscillator> },
    TabulatedImag(TabulatedImag),
}

/// First failure found by [`PermittivityModel::validate_model`].
#[derive(Debug, Clone, PartialEq)]
pub struct ModelViolation {
    pub p: Option<f64>,
    pub value: Option<f64>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub passed: bool,
    pub violation: Option<ModelViolation>,
}

impl ValidationReport {
    fn fail(p: Option<f64>, value: Option<f64>, message: impl Into<String>) -> Self {
        Self {
            passed: false,
            violation: Some(ModelViolation {
                p,
                value,
                message: message.into(),
            }),
        }
    }
}

impl PermittivityModel {
    pub fn constant(eps: f64) -> Self {
        Self::Constant { eps }
    }

    pub fn lorentz(oscillators: Vec<Oscillator>) -> Self {
        Self::LorentzOscillators { oscillators }
    }

    pub fn vacuum() -> Self {
        Self::Constant { eps: 1.0 }
    }

    /// ε at complex p = −iω with Re p ≥ 0. Tabulated models accept only
    /// real p.
    pub fn eval_at<A: Amplitude>(&self, p: A) -> Result<A> {
        match self {
            Self::Constant { eps } => Ok(A::from_real(*eps)),
            Self::LorentzOscillators { oscillators } => {
                let mut eps = A::one();
                for o in oscillators {
                    let denom = A::from_real(o.resonance * o.resonance)
                        + A::from_real(o.damping) * p
                        + p * p;
                    eps = eps + A::from_real(o.strength * o.strength) / denom;
                }
                Ok(eps)
            }
            Self::TabulatedImag(table) => match p.as_real() {
                Some(x) => table.eval(x).map(A::from_real),
                None => Err(CasimirError::Unsupported(
                    "tabulated imaginary-axis permittivity cannot be continued off the real p axis"
                        .into(),
                )),
            },
        }
    }

    /// ε(ip) for real p ≥ 0.
    pub fn eval_imag(&self, p: f64) -> Result<f64> {
        if !(p >= 0.0) {
            return Err(domain(format!("eval_imag requires p ≥ 0, got {p}")));
        }
        self.eval_at(p)
    }

    /// ε(ω) on the real axis for ω > 0; Im ε ≥ 0 for damped oscillators.
    pub fn eval_real(&self, omega: f64) -> Result<Complex64> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(domain(format!("eval_real requires ω > 0, got {omega}")));
        }
        if let Self::TabulatedImag(_) = self {
            return Err(CasimirError::Unsupported(
                "tabulated imaginary-axis models have no real-axis continuation".into(),
            ));
        }
        self.eval_at(Complex64::new(0.0, -omega))
    }

    /// ε(i·0), when the model determines it.
    pub fn static_value(&self) -> Option<f64> {
        match self {
            Self::Constant { eps } => Some(*eps),
            Self::LorentzOscillators { oscillators } => Some(
                1.0 + oscillators
                    .iter()
                    .map(|o| (o.strength / o.resonance).powi(2))
                    .sum::<f64>(),
            ),
            Self::TabulatedImag(t) => match t.samples[0] {
                (0.0, eps) => Some(eps),
                _ => None,
            },
        }
    }

    pub fn supports_real_axis(&self) -> bool {
        !matches!(self, Self::TabulatedImag(_))
    }

    fn is_monotone_family(&self) -> bool {
        !matches!(self, Self::TabulatedImag(_))
    }

    /// Checks parameters, then scans ε(ip) on a logarithmic grid
    /// p ∈ [10⁻⁶, 10⁶] for ε ≥ 1 and (analytic families) monotone decay.
    pub fn validate_model(&self) -> ValidationReport {
        match self {
            Self::Constant { eps } => {
                if !eps.is_finite() {
                    return ValidationReport::fail(None, Some(*eps), "eps must be finite");
                }
                if *eps < 1.0 {
                    return ValidationReport::fail(None, Some(*eps), "eps must satisfy eps ≥ 1");
                }
            }
            Self::LorentzOscillators { oscillators } => {
                for (i, o) in oscillators.iter().enumerate() {
                    if let Err(msg) = o.check() {
                        return ValidationReport::fail(None, None, format!("oscillator {i}: {msg}"));
                    }
                }
            }
            Self::TabulatedImag(t) => {
                // Re-run construction checks; fields are private so this only
                // fails for tables built before a rule change.
                if let Err(e) = TabulatedImag::new(t.samples.clone(), t.tail) {
                    return ValidationReport::fail(None, None, e.to_string());
                }
            }
        }

        let mut previous: Option<f64> = None;
        for p in log_grid(1e-6, 1e6, 121) {
            let eps = match self.eval_imag(p) {
                Ok(v) => v,
                Err(CasimirError::Extrapolation { .. }) => break,
                Err(e) => return ValidationReport::fail(Some(p), None, e.to_string()),
            };
            if !eps.is_finite() {
                return ValidationReport::fail(Some(p), Some(eps), "eps(ip) is not finite");
            }
            if eps < 1.0 {
                return ValidationReport::fail(Some(p), Some(eps), "eps(ip) must satisfy eps ≥ 1");
            }
            if let Some(prev) = previous {
                if self.is_monotone_family() && eps > prev * (1.0 + 1e-12) {
                    return ValidationReport::fail(
                        Some(p),
                        Some(eps),
                        "eps(ip) must be non-increasing in p",
                    );
                }
            }
            previous = Some(eps);
        }
        ValidationReport {
            passed: true,
            violation: None,
        }
    }
}

/// `n` points spaced evenly in ln p between `lo` and `hi` inclusive.
pub(crate) fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(move |i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
}
