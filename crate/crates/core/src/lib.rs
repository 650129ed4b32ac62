//! Casimir force between frequency-dependent mirrors in a one-dimensional
//! scalar-field model.
//!
//! Mirrors are stacks of dielectric slabs (or closed-form analytic
//! reflectors) described as reciprocal two-ports. The force between two
//! mirrors a flight time τ apart is evaluated on the imaginary frequency
//! axis,
//!
//! ```text
//! F = (ħ/πc) ∫₀^∞ p R(p) / (e^{2pτ} − R(p)) dp,   R = r̄₁[ip] r₂[ip]
//! ```
//!
//! and checked against the perfect-mirror value πħ/(24cτ²). Internally
//! ħ = c = 1 and times are measured in a reference time τ₀.

// `!(x > 0.0)` is the idiom used throughout to reject NaN alongside bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amplitude;
pub mod casimir;
pub mod config;
pub mod error;
pub mod permittivity;
pub mod quadrature;
pub mod scattering;
pub mod spectral;
pub mod units;

pub use error::{CasimirError, Result};
pub use permittivity::{Oscillator, PermittivityModel, TabulatedImag, TailPolicy};
pub use scattering::{
    check_passivity, compose, AnalyticMirror, Frequency, ImpedanceMatrix, MirrorStack,
    NarrowBandCutoff, Slab, TransferMatrix, TwoPortScattering,
};
pub use units::{UnitSystem, Units};
pub use casimir::{
    force_gradient, force_imag, fresnel_scale, narrowband_force, perfect_force, sweep_force,
    theta_numeric, theta_static, CavityConfig, ForceResult, QuadratureSpec,
};
pub use spectral::{
    airy, find_antiresonances, find_resonances, loop_function, spectrum, theta_dispersion,
    DispersionSpec, Resonance, SpectralSample,
};
pub use config::{parse_config, parse_config_with, ConfigError, ParseOptions, RunConfig};
