//! Unit handling. All computations run in natural units (ħ = c = 1) with
//! times measured in a reference time τ₀; SI values appear only when a
//! result is reported.

use serde::{Deserialize, Serialize};

/// Reduced Planck constant, J·s (CODATA 2018, exact).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    Natural,
    Si,
}

/// Output unit selector together with the reference time τ₀ (seconds).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    pub system: UnitSystem,
    pub reference_time_s: f64,
}

impl Default for Units {
    fn default() -> Self {
        Self::natural()
    }
}

impl Units {
    pub fn natural() -> Self {
        Self {
            system: UnitSystem::Natural,
            reference_time_s: 1.0,
        }
    }

    pub fn si(reference_time_s: f64) -> Self {
        Self {
            system: UnitSystem::Si,
            reference_time_s,
        }
    }

    /// Reference time chosen so that one natural time unit is the flight
    /// time across `length_m` metres.
    pub fn si_from_length(length_m: f64) -> Self {
        Self::si(length_m / SPEED_OF_LIGHT)
    }

    fn scale(&self, natural_in_si: impl FnOnce(f64) -> f64) -> f64 {
        match self.system {
            UnitSystem::Natural => 1.0,
            UnitSystem::Si => natural_in_si(self.reference_time_s),
        }
    }

    /// Time: τ₀ (s).
    pub fn time(&self, x: f64) -> f64 {
        x * self.scale(|t0| t0)
    }

    /// Angular frequency: 1/τ₀ (rad/s).
    pub fn frequency(&self, x: f64) -> f64 {
        x * self.scale(|t0| 1.0 / t0)
    }

    /// One-dimensional force: ħ/(c τ₀²) (N).
    pub fn force(&self, x: f64) -> f64 {
        x * self.scale(|t0| HBAR / (SPEED_OF_LIGHT * t0 * t0))
    }

    /// Force derivative with respect to flight time: ħ/(c τ₀³) (N/s).
    pub fn force_gradient(&self, x: f64) -> f64 {
        x * self.scale(|t0| HBAR / (SPEED_OF_LIGHT * t0 * t0 * t0))
    }

    /// Force per unit angular frequency: ħ/(c τ₀) (N·s/rad).
    pub fn spectral_density(&self, x: f64) -> f64 {
        x * self.scale(|t0| HBAR / (SPEED_OF_LIGHT * t0))
    }

    pub fn label(&self) -> &'static str {
        match self.system {
            UnitSystem::Natural => "natural",
            UnitSystem::Si => "si",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_is_identity() {
        let u = Units::natural();
        assert_eq!(u.force(0.25), 0.25);
        assert_eq!(u.time(3.0), 3.0);
    }

    #[test]
    fn si_force_scale() {
        let u = Units::si(2.0);
        let expect = HBAR / (SPEED_OF_LIGHT * 4.0);
        assert!((u.force(1.0) - expect).abs() <= 1e-15 * expect);
        assert_eq!(u.frequency(1.0), 0.5);
    }
}
