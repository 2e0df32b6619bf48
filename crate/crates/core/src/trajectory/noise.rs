use serde::{Deserialize, Serialize};

use crate::dynamics::StarkCoefficients;
use crate::error::{Error, Result};

/// How the random Stark phase is shared among the three encoded atoms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseMode {
    /// One phase per trajectory, seen by all three atoms.
    #[default]
    Shared,
    /// An independent phase for each atom.
    Independent,
}

/// Noise model: random Stark channel plus cavity and atomic decay.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseConfig {
    /// Upper bound of the uniform phase distribution, rad.
    pub phi_max: f64,
    /// Cavity photon lifetime, s. `f64::INFINITY` disables cavity decay.
    pub t_cav: f64,
    /// Lifetime of each `e -> g` and `g -> i` step, s. Infinite disables.
    pub t_atom: f64,
    pub phase_mode: PhaseMode,
    pub coefficients: StarkCoefficients,
}

impl NoiseConfig {
    /// No random field and no decay.
    pub fn ideal() -> Self {
        NoiseConfig {
            phi_max: 0.0,
            t_cav: f64::INFINITY,
            t_atom: f64::INFINITY,
            phase_mode: PhaseMode::Shared,
            coefficients: StarkCoefficients::default(),
        }
    }

    pub fn with_phi_max(mut self, phi_max: f64) -> Self {
        self.phi_max = phi_max;
        self
    }

    pub fn with_lifetimes(mut self, t_cav: f64, t_atom: f64) -> Self {
        self.t_cav = t_cav;
        self.t_atom = t_atom;
        self
    }

    pub fn decay_enabled(&self) -> bool {
        self.t_cav.is_finite() || self.t_atom.is_finite()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.phi_max >= 0.0) || !self.phi_max.is_finite() {
            return Err(Error::Config(format!(
                "phi_max must be finite and nonnegative, got {}",
                self.phi_max
            )));
        }
        for (name, value) in [("t_cav", self.t_cav), ("t_atom", self.t_atom)] {
            if !(value > 0.0) {
                return Err(Error::InvalidLifetime { name, value });
            }
        }
        Ok(())
    }
}

impl Default for NoiseConfig {
    /// 100 ms cavities, 30 ms atoms, no random field.
    fn default() -> Self {
        NoiseConfig {
            phi_max: 0.0,
            t_cav: 0.1,
            t_atom: 0.03,
            phase_mode: PhaseMode::Shared,
            coefficients: StarkCoefficients::default(),
        }
    }
}
