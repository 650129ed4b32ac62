//! JSON run configuration: cavity geometry, mirror stacks, grids and
//! output options.
//!
//! All times in the file (τ, slab thicknesses, grids, oscillator
//! frequencies, tabulated p) are multiples of the reference time τ₀. The
//! `units` block only chooses how results are reported.
//!
//! ```json
//! {
//!   "units": { "system": "natural" },
//!   "cavity": {
//!     "tau": 1.0,
//!     "mirror1": { "layers": [ { "model": { "type": "constant", "eps": 4.0 }, "thickness_time": 0.5 } ] },
//!     "mirror2": { "analytic": { "type": "perfect" } }
//!   }
//! }
//! ```

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::casimir::{CavityConfig, QuadratureSpec};
use crate::error::CasimirError;
use crate::permittivity::{log_grid, Oscillator, PermittivityModel, TabulatedImag, TailPolicy};
use crate::scattering::{
    default_passivity_grid, AnalyticMirror, MirrorStack, NarrowBandCutoff, Slab,
};
use crate::units::{UnitSystem, Units};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Semantic { field: String, message: String },
    #[error("{field}: not passive at p = {p}: min eigenvalue of 1 − SS† is {min_eigenvalue:.6e}")]
    Passivity {
        field: String,
        p: String,
        min_eigenvalue: f64,
    },
}

fn semantic(field: impl Into<String>, message: impl fmt::Display) -> ConfigError {
    ConfigError::Semantic {
        field: field.into(),
        message: message.to_string(),
    }
}

// ---- file schema -----------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub units: UnitsSpec,
    pub cavity: CavitySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_grid: Option<GridSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fresnel_number: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsSpec {
    pub system: UnitSystem,
    /// τ₀ in seconds; required for SI output.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_time_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavitySpec {
    pub tau: f64,
    pub mirror1: StackSpec,
    pub mirror2: StackSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StackSpec {
    Layers(Vec<LayerSpec>),
    Analytic(AnalyticSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerSpec {
    pub model: ModelSpec,
    pub thickness_time: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum AnalyticSpec {
    // braces so that stray keys are rejected
    Perfect {},
    Constant { eta: f64 },
    Magnetic { layers: Vec<LayerSpec> },
    Narrowband {
        theta: f64,
        /// Transparent above this p; clamped at |r| = 1 when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cutoff: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    Constant { eps: f64 },
    /// Each oscillator is `[Ω, ω0, γ]`.
    Lorentz { oscillators: Vec<[f64; 3]> },
    /// Samples `[p, eps(ip)]`.
    TabulatedImag {
        samples: Vec<[f64; 2]>,
        #[serde(default)]
        tail: TailPolicy,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_subdivisions: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_max: Option<f64>,
}

/// Uniform or logarithmic grid over [min, max].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    #[serde(default)]
    pub log: bool,
}

impl GridSpec {
    pub fn validate(&self) -> std::result::Result<(), String> {
        if !(self.min > 0.0 && self.min.is_finite() && self.max.is_finite()) {
            return Err("grid must satisfy 0 < min and finite max".into());
        }
        match self.steps {
            0 => Err("grid must satisfy steps ≥ 1".into()),
            1 if self.max != self.min => Err("a one-point grid must have min = max".into()),
            1 => Ok(()),
            _ if self.max <= self.min => Err("grid must satisfy max > min".into()),
            _ => Ok(()),
        }
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        if self.log {
            let mut g: Vec<f64> = log_grid(self.min, self.max, self.steps).collect();
            g[0] = self.min;
            g[self.steps - 1] = self.max;
            return g;
        }
        let h = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.max } else { self.min + h * i as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Csv,
    Structured,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(Self::Text),
            "csv" => Ok(Self::Csv),
            "structured" | "json" => Ok(Self::Structured),
            _ => Err(format!("unknown format {s:?}; expected text, csv or structured")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
}

// ---- validated configuration -----------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub cavity: CavityConfig,
    pub quadrature: QuadratureSpec,
    pub tau_grid: Option<GridSpec>,
    pub omega_grid: Option<GridSpec>,
    pub output: OutputSpec,
    pub fresnel_number: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParseOptions {
    /// Reject mirrors that fail the passivity check on the default grid.
    pub passivity_screen: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            passivity_screen: true,
        }
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    parse_config_with(text, ParseOptions::default())
}

pub fn parse_config_with(text: &str, options: ParseOptions) -> Result<RunConfig, ConfigError> {
    let file: ConfigFile = from_json(text)?;
    file.to_run_config(options)
}

/// Parses and validates a single mirror stack description.
pub fn parse_stack(text: &str) -> Result<MirrorStack, ConfigError> {
    let spec: StackSpec = from_json(text)?;
    let stack = spec.build("stack")?;
    stack.validate().map_err(|e| semantic("stack", e))?;
    Ok(stack)
}

/// Parses and validates a single permittivity model description.
pub fn parse_model(text: &str) -> Result<PermittivityModel, ConfigError> {
    let spec: ModelSpec = from_json(text)?;
    spec.build("model")
}

fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, ConfigError> {
    serde_json::from_str(text).map_err(|e| ConfigError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_location(&e.to_string()),
    })
}

fn strip_location(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

fn finite(field: &str, name: &str, x: f64) -> Result<f64, ConfigError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(semantic(field, format!("{name} must be finite")))
    }
}

impl ModelSpec {
    pub fn build(&self, field: &str) -> Result<PermittivityModel, ConfigError> {
        let model = match self {
            Self::Constant { eps } => PermittivityModel::constant(*eps),
            Self::Lorentz { oscillators } => PermittivityModel::lorentz(
                oscillators
                    .iter()
                    .map(|&[s, w, g]| Oscillator::new(s, w, g))
                    .collect(),
            ),
            Self::TabulatedImag { samples, tail } => PermittivityModel::TabulatedImag(
                TabulatedImag::new(samples.iter().map(|&[p, e]| (p, e)).collect(), *tail)
                    .map_err(|e| semantic(format!("{field}.samples"), bare(&e)))?,
            ),
        };
        let report = model.validate_model();
        if let Some(v) = report.violation {
            let at = match v.p {
                Some(p) => format!(" (at p = {p})"),
                None => String::new(),
            };
            return Err(semantic(field, format!("{}{at}", v.message)));
        }
        Ok(model)
    }

    fn from_model(model: &PermittivityModel) -> Self {
        match model {
            PermittivityModel::Constant { eps } => Self::Constant { eps: *eps },
            PermittivityModel::LorentzOscillators { oscillators } => Self::Lorentz {
                oscillators: oscillators
                    .iter()
                    .map(|o| [o.strength, o.resonance, o.damping])
                    .collect(),
            },
            PermittivityModel::TabulatedImag(t) => Self::TabulatedImag {
                samples: t.samples().iter().map(|&(p, e)| [p, e]).collect(),
                tail: t.tail(),
            },
        }
    }
}

/// Error text without the variant prefix added by [`CasimirError`]'s
/// `Display`.
fn bare(e: &CasimirError) -> String {
    match e {
        CasimirError::InvalidModel(m) | CasimirError::Domain(m) => m.clone(),
        other => other.to_string(),
    }
}

fn build_layers(field: &str, layers: &[LayerSpec]) -> Result<Vec<Slab>, ConfigError> {
    layers
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let f = format!("{field}[{i}]");
            let model = l.model.build(&format!("{f}.model"))?;
            let thickness = finite(&f, "thickness_time", l.thickness_time)?;
            if thickness < 0.0 {
                return Err(semantic(
                    format!("{f}.thickness_time"),
                    format!("must satisfy thickness_time ≥ 0, got {thickness}"),
                ));
            }
            Slab::new(model, thickness).map_err(|e| semantic(f, bare(&e)))
        })
        .collect()
}

impl StackSpec {
    /// Builds the stack, checking everything except |r| ≤ 1 for analytic
    /// mirrors, which is left to the passivity screen.
    pub fn build(&self, field: &str) -> Result<MirrorStack, ConfigError> {
        let stack = match self {
            Self::Layers(layers) => MirrorStack::Layers(build_layers(&format!("{field}.layers"), layers)?),
            Self::Analytic(a) => {
                let f = format!("{field}.analytic");
                MirrorStack::Analytic(match a {
                    AnalyticSpec::Perfect {} => AnalyticMirror::Perfect,
                    AnalyticSpec::Constant { eta } => AnalyticMirror::ConstantReflectivity {
                        eta: finite(&format!("{f}.eta"), "eta", *eta)?,
                    },
                    AnalyticSpec::Magnetic { layers } => AnalyticMirror::Magnetic {
                        base: build_layers(&format!("{f}.layers"), layers)?,
                    },
                    AnalyticSpec::Narrowband { theta, cutoff } => AnalyticMirror::NarrowBandToy {
                        theta: *theta,
                        cutoff: cutoff.map_or(NarrowBandCutoff::Clamp, NarrowBandCutoff::Truncate),
                    },
                })
            }
        };
        stack.validate_structure().map_err(|e| semantic(field, bare(&e)))?;
        Ok(stack)
    }

    pub fn from_stack(stack: &MirrorStack) -> Self {
        let layers = |slabs: &[Slab]| {
            slabs
                .iter()
                .map(|s| LayerSpec {
                    model: ModelSpec::from_model(&s.model),
                    thickness_time: s.thickness_time,
                })
                .collect()
        };
        match stack {
            MirrorStack::Layers(s) => Self::Layers(layers(s)),
            MirrorStack::Analytic(a) => Self::Analytic(match a {
                AnalyticMirror::Perfect => AnalyticSpec::Perfect {},
                AnalyticMirror::ConstantReflectivity { eta } => AnalyticSpec::Constant { eta: *eta },
                AnalyticMirror::Magnetic { base } => AnalyticSpec::Magnetic { layers: layers(base) },
                AnalyticMirror::NarrowBandToy { theta, cutoff } => AnalyticSpec::Narrowband {
                    theta: *theta,
                    cutoff: match cutoff {
                        NarrowBandCutoff::Clamp => None,
                        NarrowBandCutoff::Truncate(p) => Some(*p),
                    },
                },
            }),
        }
    }
}

impl ConfigFile {
    pub fn to_run_config(&self, options: ParseOptions) -> Result<RunConfig, ConfigError> {
        let units = match (self.units.system, self.units.reference_time_s) {
            (_, Some(t)) if !(t > 0.0 && t.is_finite()) => {
                return Err(semantic(
                    "units.reference_time_s",
                    "must satisfy reference_time_s > 0",
                ))
            }
            (UnitSystem::Si, None) => {
                return Err(semantic(
                    "units.reference_time_s",
                    "required when system is \"si\"",
                ))
            }
            (system, t) => Units {
                system,
                reference_time_s: t.unwrap_or(1.0),
            },
        };

        let tau = self.cavity.tau;
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(semantic("cavity.tau", format!("must satisfy tau > 0, got {tau}")));
        }
        let mirror1 = self.cavity.mirror1.build("cavity.mirror1")?;
        let mirror2 = self.cavity.mirror2.build("cavity.mirror2")?;
        if options.passivity_screen {
            for (field, m) in [("cavity.mirror1", &mirror1), ("cavity.mirror2", &mirror2)] {
                passivity_screen(field, m)?;
            }
        }
        let cavity = CavityConfig {
            mirror1,
            mirror2,
            tau,
            units,
        };

        let mut quadrature = QuadratureSpec::default();
        if let Some(q) = self.quadrature {
            quadrature.rel_tol = q.rel_tol.unwrap_or(quadrature.rel_tol);
            quadrature.abs_tol = q.abs_tol.unwrap_or(quadrature.abs_tol);
            quadrature.max_subdivisions = q.max_subdivisions.unwrap_or(quadrature.max_subdivisions);
            quadrature.u_max = q.u_max.unwrap_or(quadrature.u_max);
        }
        quadrature
            .validate()
            .map_err(|e| semantic("quadrature", bare(&e)))?;

        for (field, grid) in [("tau_grid", &self.tau_grid), ("omega_grid", &self.omega_grid)] {
            if let Some(g) = grid {
                g.validate().map_err(|m| semantic(field, m))?;
            }
        }
        if let Some(n) = self.fresnel_number {
            if !(n > 0.0 && n.is_finite()) {
                return Err(semantic("fresnel_number", "must satisfy fresnel_number > 0"));
            }
        }

        Ok(RunConfig {
            cavity,
            quadrature,
            tau_grid: self.tau_grid,
            omega_grid: self.omega_grid,
            output: self.output.clone().unwrap_or_default(),
            fresnel_number: self.fresnel_number,
        })
    }
}

fn passivity_screen(field: &str, stack: &MirrorStack) -> Result<(), ConfigError> {
    let report = crate::scattering::check_passivity(stack, &default_passivity_grid());
    if let Some(v) = report.first_violation {
        return Err(ConfigError::Passivity {
            field: field.into(),
            p: format!("{}", v.p),
            min_eigenvalue: v.min_eigenvalue,
        });
    }
    if let Some((p, msg)) = report.errors.first() {
        return Err(semantic(field, format!("cannot be evaluated at p = {p}: {msg}")));
    }
    Ok(())
}

impl RunConfig {
    /// The canonical file form of this configuration.
    pub fn to_file(&self) -> ConfigFile {
        let q = self.quadrature;
        let output = (self.output != OutputSpec::default()).then(|| self.output.clone());
        ConfigFile {
            units: UnitsSpec {
                system: self.cavity.units.system,
                reference_time_s: Some(self.cavity.units.reference_time_s),
            },
            cavity: CavitySpec {
                tau: self.cavity.tau,
                mirror1: StackSpec::from_stack(&self.cavity.mirror1),
                mirror2: StackSpec::from_stack(&self.cavity.mirror2),
            },
            quadrature: Some(QuadratureFile {
                rel_tol: Some(q.rel_tol),
                abs_tol: Some(q.abs_tol),
                max_subdivisions: Some(q.max_subdivisions),
                u_max: Some(q.u_max),
            }),
            tau_grid: self.tau_grid,
            omega_grid: self.omega_grid,
            output,
            fresnel_number: self.fresnel_number,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("config serialises");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "units": {"system": "natural"},
        "cavity": {"tau": 1.0,
                   "mirror1": {"analytic": {"type": "perfect"}},
                   "mirror2": {"analytic": {"type": "perfect"}}}
    }"#;

    fn with_mirror(m: &str) -> String {
        format!(
            r#"{{"units": {{"system": "natural"}},
                "cavity": {{"tau": 1.0, "mirror1": {m}, "mirror2": {{"analytic": {{"type": "perfect"}}}}}}}}"#
        )
    }

    #[test]
    fn minimal_perfect_cavity() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.cavity.mirror1, MirrorStack::perfect());
        assert_eq!(c.cavity.tau, 1.0);
        assert_eq!(c.quadrature, QuadratureSpec::default());
        assert_eq!(c.cavity.units, Units::natural());
    }

    #[test]
    fn bad_eps_names_field_and_invariant() {
        let text = with_mirror(
            r#"{"layers": [{"model": {"type": "constant", "eps": 0.5}, "thickness_time": 1.0}]}"#,
        );
        let e = parse_config(&text).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("eps ≥ 1"), "{msg}");
        assert!(msg.contains("cavity.mirror1.layers[0].model"), "{msg}");
    }

    #[test]
    fn duplicate_field_rejected() {
        let text = MINIMAL.replace(r#""tau": 1.0,"#, r#""tau": 1.0, "tau": 2.0,"#);
        match parse_config(&text).unwrap_err() {
            ConfigError::Syntax { message, line, .. } => {
                assert!(message.contains("duplicate field"), "{message}");
                assert_eq!(line, 3);
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn unknown_fields_rejected_everywhere() {
        for bad in [
            MINIMAL.replace(r#""system": "natural""#, r#""system": "natural", "x": 1"#),
            MINIMAL.replace(r#""tau": 1.0"#, r#""tau": 1.0, "gap": 2"#),
            with_mirror(r#"{"analytic": {"type": "perfect", "eta": 0.3}}"#),
            with_mirror(r#"{"layers": [{"model": {"type": "constant", "eps": 2, "mu": 1}, "thickness_time": 1}]}"#),
            with_mirror(r#"{"layers": [], "analytic": {"type": "perfect"}}"#),
        ] {
            assert!(matches!(parse_config(&bad), Err(ConfigError::Syntax { .. })), "{bad}");
        }
    }

    #[test]
    fn syntax_error_has_location() {
        match parse_config("{\n  \"units\": {\n    \"system\": natural\n  }\n}").unwrap_err() {
            ConfigError::Syntax { line, column, .. } => assert_eq!((line, column), (3, 15)),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn gain_mirror_screened_unless_disabled() {
        let text = with_mirror(r#"{"analytic": {"type": "constant", "eta": 1.2}}"#);
        match parse_config(&text).unwrap_err() {
            ConfigError::Passivity { field, min_eigenvalue, .. } => {
                assert_eq!(field, "cavity.mirror1");
                assert!((min_eigenvalue + 0.44).abs() < 1e-12);
            }
            e => panic!("{e}"),
        }
        let c = parse_config_with(&text, ParseOptions { passivity_screen: false }).unwrap();
        assert!(matches!(
            c.cavity.mirror1,
            MirrorStack::Analytic(AnalyticMirror::ConstantReflectivity { eta }) if eta == 1.2
        ));
    }

    #[test]
    fn si_requires_reference_time() {
        let text = MINIMAL.replace(r#""system": "natural""#, r#""system": "si""#);
        let e = parse_config(&text).unwrap_err();
        assert!(e.to_string().contains("units.reference_time_s"));
    }

    #[test]
    fn semantic_checks() {
        for (text, field) in [
            (MINIMAL.replace("\"tau\": 1.0", "\"tau\": -1.0"), "cavity.tau"),
            (
                with_mirror(r#"{"layers": [{"model": {"type": "constant", "eps": 2}, "thickness_time": -1}]}"#),
                "thickness_time",
            ),
            (
                with_mirror(r#"{"layers": [{"model": {"type": "lorentz", "oscillators": [[1, 0, 0.1]]}, "thickness_time": 1}]}"#),
                "ω0 > 0",
            ),
            (
                with_mirror(r#"{"layers": [{"model": {"type": "tabulated_imag", "samples": [[0, 2], [1, 0.5]]}, "thickness_time": 1}]}"#),
                "eps ≥ 1",
            ),
            (with_mirror(r#"{"analytic": {"type": "narrowband", "theta": -1}}"#), "theta ≥ 0"),
            (MINIMAL.replace("}}}", "}}}, \"tau_grid\": {\"min\": 2, \"max\": 1, \"steps\": 3}"), "tau_grid"),
        ] {
            let e = parse_config(&text).unwrap_err();
            assert!(matches!(e, ConfigError::Semantic { .. }), "{e}");
            assert!(e.to_string().contains(field), "{e} lacks {field}");
        }
    }

    #[test]
    fn round_trip_is_identity() {
        let text = r#"{
            "units": {"system": "si", "reference_time_s": 3.3e-15},
            "cavity": {
                "tau": 2.5,
                "mirror1": {"layers": [
                    {"model": {"type": "constant", "eps": 4.0}, "thickness_time": 0.5},
                    {"model": {"type": "lorentz", "oscillators": [[1.5, 2.0, 0.1]]}, "thickness_time": 0.25},
                    {"model": {"type": "tabulated_imag", "samples": [[0.0, 3.0], [1.0, 2.0], [4.0, 1.2]], "tail": "decay"}, "thickness_time": 0.1}
                ]},
                "mirror2": {"analytic": {"type": "magnetic", "layers": [
                    {"model": {"type": "constant", "eps": 2.0}, "thickness_time": 1.0}]}}
            },
            "quadrature": {"rel_tol": 1e-8},
            "tau_grid": {"min": 0.5, "max": 4.0, "steps": 5, "log": true},
            "omega_grid": {"min": 0.1, "max": 10.0, "steps": 100},
            "output": {"format": "csv", "path": "out.csv"},
            "fresnel_number": 12.0
        }"#;
        let a = parse_config(text).unwrap();
        let b = parse_config(&a.to_text()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_text(), b.to_text());

        for m in [
            r#"{"analytic": {"type": "constant", "eta": -0.5}}"#,
            r#"{"analytic": {"type": "narrowband", "theta": 0.1, "cutoff": 5.0}}"#,
            r#"{"analytic": {"type": "narrowband", "theta": 0.1}}"#,
        ] {
            let a = parse_config(&with_mirror(m)).unwrap();
            assert_eq!(parse_config(&a.to_text()).unwrap(), a);
        }
    }

    #[test]
    fn grids() {
        let g = GridSpec { min: 1.0, max: 2.0, steps: 3, log: false };
        assert_eq!(g.points(), vec![1.0, 1.5, 2.0]);
        let g = GridSpec { min: 1.0, max: 100.0, steps: 3, log: true };
        let p = g.points();
        assert!((p[1] - 10.0).abs() < 1e-12 && p[2] == 100.0);
        assert_eq!(GridSpec { min: 3.0, max: 3.0, steps: 1, log: false }.points(), vec![3.0]);
        assert!(GridSpec { min: 0.0, max: 1.0, steps: 3, log: false }.validate().is_err());
    }

    #[test]
    fn standalone_parsers() {
        assert_eq!(
            parse_model(r#"{"type": "constant", "eps": 2.25}"#).unwrap(),
            PermittivityModel::constant(2.25)
        );
        assert!(parse_stack(r#"{"analytic": {"type": "constant", "eta": 1.5}}"#).is_err());
        assert!(parse_stack(r#"{"layers": []}"#).is_ok());
    }
}
