use std::io::Write;

use serde::{Deserialize, Serialize};

use super::config::{RunSpec, SweepParameter};
use crate::error::{Error, Result};
use crate::protocol::run_protocol;
use crate::trajectory::{trajectory_seed, Ensemble, Syndrome, TrajectorySample};

/// One grid point. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub phi_max: f64,
    pub t_cav_ms: f64,
    pub alpha_sq: f64,
    pub n_traj: u64,
    /// Empty when correction is disabled.
    pub f_corr: Option<f64>,
    pub f_corr_se: Option<f64>,
    pub f_uncorr: f64,
    pub f_uncorr_se: f64,
    pub syn_mm: u64,
    pub syn_pm: u64,
    pub syn_mp: u64,
    pub syn_pp: u64,
    /// Master seed of this point's ensembles.
    pub seed: u64,
}

impl ResultRow {
    /// Value of the swept parameter.
    pub fn swept(&self, parameter: SweepParameter) -> f64 {
        match parameter {
            SweepParameter::PhiMax => self.phi_max,
            SweepParameter::TCav => self.t_cav_ms,
            SweepParameter::AlphaSq => self.alpha_sq,
        }
    }
}

/// Seed of grid point `index`; shared by every run with the same master
/// seed, so sweeps over different parameters stay paired.
pub fn point_seed(master: u64, index: usize) -> u64 {
    trajectory_seed(master, index as u64)
}

#[derive(Serialize)]
struct LogLine<'a> {
    point: usize,
    variant: &'static str,
    #[serde(flatten)]
    sample: &'a TrajectorySample,
}

fn log_ensemble(log: &mut dyn Write, point: usize, variant: &'static str, e: &Ensemble) -> Result<()> {
    for sample in &e.samples {
        let line = LogLine {
            point,
            variant,
            sample,
        };
        let text = serde_json::to_string(&line).map_err(|e| Error::Config(e.to_string()))?;
        writeln!(log, "{text}").map_err(|e| Error::io("trajectory log", e))?;
    }
    Ok(())
}

/// Runs every grid point in order. `log`, if given, receives one JSON line
/// per trajectory.
pub fn run_sweep(spec: &RunSpec, workers: usize, mut log: Option<&mut dyn Write>) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::with_capacity(spec.sweep.values.len());
    for (k, &value) in spec.sweep.values.iter().enumerate() {
        let cfg = spec.point(value)?;
        let seed = point_seed(spec.seed, k);
        let run = run_protocol(&cfg, spec.n_traj, seed, workers)?;
        if let Some(log) = log.as_deref_mut() {
            if let Some(c) = &run.corrected {
                log_ensemble(log, k, "corrected", c)?;
            }
            log_ensemble(log, k, "uncorrected", &run.uncorrected)?;
        }
        let u = &run.uncorrected.stats;
        let c = run.corrected.as_ref().map(|c| &c.stats);
        let counts = &u.syndrome_counts;
        let param = spec.sweep.parameter;
        rows.push(ResultRow {
            phi_max: cfg.noise.phi_max,
            t_cav_ms: if param == SweepParameter::TCav { value } else { spec.t_cav_ms },
            alpha_sq: if param == SweepParameter::AlphaSq { value } else { spec.alpha_sq },
            n_traj: spec.n_traj,
            f_corr: c.map(|c| c.fidelity),
            f_corr_se: c.map(|c| c.stderr),
            f_uncorr: u.fidelity,
            f_uncorr_se: u.stderr,
            syn_mm: counts.get(Syndrome::MM),
            syn_pm: counts.get(Syndrome::PM),
            syn_mp: counts.get(Syndrome::MP),
            syn_pp: counts.get(Syndrome::PP),
            seed,
        });
    }
    Ok(rows)
}
