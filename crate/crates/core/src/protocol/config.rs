use serde::{Deserialize, Serialize};

use crate::dynamics::{Envelope, GateMode};
use crate::error::{Error, Result};
use crate::hilbert::C64;
use crate::trajectory::NoiseConfig;

/// Distances of the apparatus elements from the entrance, in metres.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Layout {
    pub r1: f64,
    pub c1: f64,
    pub r2: f64,
    pub c2: f64,
    pub r3: f64,
    pub detector: f64,
}

impl Default for Layout {
    fn default() -> Self {
        Layout {
            r1: 0.020,
            c1: 0.045,
            r2: 0.075,
            c2: 0.105,
            r3: 0.130,
            detector: 0.150,
        }
    }
}

/// Atom transit timing. Atom `k` enters at `(k - 1) * spacing` and reaches
/// an element at distance `x` after a further `x / velocity`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    /// m/s
    pub velocity: f64,
    /// Cavity mode waist, m.
    pub waist: f64,
    /// Delay between successive atoms, s.
    pub spacing: f64,
    /// Atom-cavity interaction window, s.
    pub window: f64,
    pub layout: Layout,
}

impl Default for Timing {
    fn default() -> Self {
        Timing {
            velocity: 500.0,
            waist: 6e-3,
            spacing: 300e-6,
            window: 20e-6,
            layout: Layout::default(),
        }
    }
}

impl Timing {
    /// Time atom `atom` (1..=4) reaches distance `x`.
    pub fn arrival(&self, atom: usize, x: f64) -> f64 {
        (atom - 1) as f64 * self.spacing + x / self.velocity
    }

    /// Until the last atom reaches the detector.
    pub fn total_duration(&self) -> f64 {
        self.arrival(4, self.layout.detector)
    }

    pub fn envelope(&self) -> Envelope {
        Envelope::new(self.window, self.velocity, self.waist)
    }

    pub fn validate(&self) -> Result<()> {
        let l = &self.layout;
        for (name, value) in [
            ("velocity", self.velocity),
            ("waist", self.waist),
            ("spacing", self.spacing),
            ("window", self.window),
            ("r1", l.r1),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositive { name, value });
            }
        }
        let xs = [l.r1, l.c1, l.r2, l.c2, l.r3, l.detector];
        if xs.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Config(format!(
                "element positions must increase along the beam: {xs:?}"
            )));
        }
        let half = 0.5 * self.window * self.velocity;
        if l.c1 - half <= l.r1 || l.c1 + half >= l.r2 || l.c2 - half <= l.r2 || l.c2 + half >= l.r3 {
            return Err(Error::Config(
                "interaction window overlaps a neighbouring Ramsey zone".into(),
            ));
        }
        Ok(())
    }
}

/// How Jaynes-Cummings pulses are realized in a schedule.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PulseShape {
    #[default]
    Instantaneous,
    /// Integrated across the Gaussian mode profile over the interaction
    /// window, with decay acting during the pulse.
    Envelope,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtocolConfig {
    pub alpha: C64,
    pub beta: C64,
    pub correction_enabled: bool,
    pub noise: NoiseConfig,
    pub timing: Timing,
    pub pulse_shape: PulseShape,
}

impl Default for ProtocolConfig {
    /// `|alpha|^2 = 0.7`, default decay, no random field.
    fn default() -> Self {
        ProtocolConfig::from_alpha_sq(0.7)
    }
}

impl ProtocolConfig {
    /// Real amplitudes `sqrt(p)`, `sqrt(1 - p)`.
    pub fn from_alpha_sq(p: f64) -> Self {
        ProtocolConfig {
            alpha: C64::new(p.sqrt(), 0.0),
            beta: C64::new((1.0 - p).sqrt(), 0.0),
            correction_enabled: true,
            noise: NoiseConfig::default(),
            timing: Timing::default(),
            pulse_shape: PulseShape::Instantaneous,
        }
    }

    pub fn with_noise(mut self, noise: NoiseConfig) -> Self {
        self.noise = noise;
        self
    }

    pub fn gate_mode(&self) -> GateMode {
        match self.pulse_shape {
            PulseShape::Instantaneous => GateMode::Instantaneous,
            PulseShape::Envelope => GateMode::Envelope(self.timing.envelope()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let norm = self.alpha.norm_sqr() + self.beta.norm_sqr();
        if !((norm - 1.0).abs() <= 1e-12) {
            return Err(Error::NotNormalized(norm));
        }
        self.noise.validate()?;
        self.timing.validate()
    }
}
