use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protocol::{Layout, ProtocolConfig, PulseShape, Timing};
use crate::trajectory::{NoiseConfig, PhaseMode};

/// Config file schema. Times in milliseconds, speeds in m/s, lengths in
/// millimetres, angles in radians. A lifetime of `inf` disables that decay
/// channel.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConfigFile {
    pub protocol: ProtocolSection,
    pub timing: TimingSection,
    pub sweep: Option<SweepSection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProtocolSection {
    pub alpha_sq: f64,
    pub phi_max: f64,
    /// ms
    pub t_cav: f64,
    /// ms
    pub t_atom: f64,
    pub n_traj: u64,
    pub seed: u64,
    pub correction: bool,
    pub phase_mode: PhaseMode,
    pub gate_mode: PulseShape,
}

impl Default for ProtocolSection {
    fn default() -> Self {
        ProtocolSection {
            alpha_sq: 0.7,
            phi_max: 0.0,
            t_cav: 100.0,
            t_atom: 30.0,
            n_traj: 1000,
            seed: 0,
            correction: true,
            phase_mode: PhaseMode::Shared,
            gate_mode: PulseShape::Instantaneous,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TimingSection {
    /// m/s
    pub v: f64,
    /// mm
    pub w0: f64,
    /// ms between successive atoms
    pub spacing: f64,
    /// ms
    pub window: f64,
    /// Element positions along the beam, mm.
    pub r1: f64,
    pub c1: f64,
    pub r2: f64,
    pub c2: f64,
    pub r3: f64,
    pub detector: f64,
}

impl Default for TimingSection {
    fn default() -> Self {
        let t = Timing::default();
        let l = t.layout;
        TimingSection {
            v: t.velocity,
            w0: t.waist * 1e3,
            spacing: t.spacing * 1e3,
            window: t.window * 1e3,
            r1: l.r1 * 1e3,
            c1: l.c1 * 1e3,
            r2: l.r2 * 1e3,
            c2: l.c2 * 1e3,
            r3: l.r3 * 1e3,
            detector: l.detector * 1e3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    PhiMax,
    TCav,
    AlphaSq,
}

/// Either `values = [...]` or `start`, `stop`, `count`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub parameter: SweepParameter,
    pub values: Option<Vec<f64>>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub count: Option<usize>,
}

/// One swept parameter over a nonempty grid, in config units.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

impl SweepSpec {
    pub fn new(parameter: SweepParameter, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Config("sweep grid is empty".into()));
        }
        for &v in &values {
            check_value(parameter, v)?;
        }
        Ok(SweepSpec { parameter, values })
    }

    /// `count` evenly spaced values from `start` to `stop` inclusive.
    pub fn linear(parameter: SweepParameter, start: f64, stop: f64, count: usize) -> Result<Self> {
        let values = match count {
            0 => Vec::new(),
            1 => vec![start],
            n => (0..n)
                .map(|k| start + (stop - start) * k as f64 / (n - 1) as f64)
                .collect(),
        };
        SweepSpec::new(parameter, values)
    }
}

fn check_value(parameter: SweepParameter, v: f64) -> Result<()> {
    let ok = match parameter {
        SweepParameter::PhiMax => v.is_finite() && v >= 0.0,
        SweepParameter::TCav => v > 0.0,
        SweepParameter::AlphaSq => (0.0..=1.0).contains(&v),
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Config(format!("{parameter:?} value {v} out of range")))
    }
}

/// Validated run description.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSpec {
    pub protocol: ProtocolConfig,
    /// As given in the config; reported verbatim in result rows.
    pub alpha_sq: f64,
    /// ms, as given in the config.
    pub t_cav_ms: f64,
    pub n_traj: u64,
    pub seed: u64,
    /// Defaults to a single `phi_max` point at the configured value.
    pub sweep: SweepSpec,
}

impl RunSpec {
    /// Protocol config for one grid value.
    pub fn point(&self, value: f64) -> Result<ProtocolConfig> {
        let mut cfg = self.protocol;
        match self.sweep.parameter {
            SweepParameter::PhiMax => cfg.noise.phi_max = value,
            SweepParameter::TCav => cfg.noise.t_cav = value * 1e-3,
            SweepParameter::AlphaSq => {
                let other = ProtocolConfig::from_alpha_sq(value);
                cfg.alpha = other.alpha;
                cfg.beta = other.beta;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

impl ConfigFile {
    pub fn into_spec(self) -> Result<RunSpec> {
        let p = &self.protocol;
        if !(0.0..=1.0).contains(&p.alpha_sq) {
            return Err(Error::Config(format!("alpha_sq = {} is not in [0, 1]", p.alpha_sq)));
        }
        if p.n_traj < 1 {
            return Err(Error::Config("n_traj must be at least 1".into()));
        }
        let t = &self.timing;
        let timing = Timing {
            velocity: t.v,
            waist: t.w0 * 1e-3,
            spacing: t.spacing * 1e-3,
            window: t.window * 1e-3,
            layout: Layout {
                r1: t.r1 * 1e-3,
                c1: t.c1 * 1e-3,
                r2: t.r2 * 1e-3,
                c2: t.c2 * 1e-3,
                r3: t.r3 * 1e-3,
                detector: t.detector * 1e-3,
            },
        };
        let mut protocol = ProtocolConfig::from_alpha_sq(p.alpha_sq);
        protocol.correction_enabled = p.correction;
        protocol.pulse_shape = p.gate_mode;
        protocol.timing = timing;
        protocol.noise = NoiseConfig {
            phi_max: p.phi_max,
            t_cav: p.t_cav * 1e-3,
            t_atom: p.t_atom * 1e-3,
            phase_mode: p.phase_mode,
            ..NoiseConfig::default()
        };
        protocol.validate()?;

        let sweep = match self.sweep {
            None => SweepSpec::new(SweepParameter::PhiMax, vec![p.phi_max])?,
            Some(s) => match (s.values, s.start, s.stop, s.count) {
                (Some(v), None, None, None) => SweepSpec::new(s.parameter, v)?,
                (None, Some(a), Some(b), Some(n)) => SweepSpec::linear(s.parameter, a, b, n)?,
                _ => {
                    return Err(Error::Config(
                        "sweep needs either `values` or all of `start`, `stop`, `count`".into(),
                    ))
                }
            },
        };
        Ok(RunSpec {
            protocol,
            alpha_sq: p.alpha_sq,
            t_cav_ms: p.t_cav,
            n_traj: p.n_traj,
            seed: p.seed,
            sweep,
        })
    }
}

pub fn parse_config(text: &str) -> Result<RunSpec> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    file.into_spec()
}

pub fn load_config(path: &Path) -> Result<RunSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}
