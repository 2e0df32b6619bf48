//! Batch runner: TOML config, parameter sweeps over paired corrected and
//! uncorrected ensembles, CSV output and SVG plots.

mod config;
mod csvio;
mod plot;
mod sweep;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;

pub use config::{
    load_config, parse_config, ConfigFile, ProtocolSection, RunSpec, SweepParameter, SweepSection,
    SweepSpec, TimingSection,
};
pub use csvio::{
    emit_analytic_csv, emit_csv, load_csv, read_rows, write_rows, ANALYTIC_HEADER, CSV_HEADER,
};
pub use plot::{render_model_plot, render_plot, write_svg};
pub use sweep::{point_seed, run_sweep, ResultRow};

use crate::analytic::{model_grid, ModelPoint};
use crate::error::{Error, Result};

/// Environment variable read when `--seed` is not given.
pub const SEED_ENV: &str = "CQED_QECC_SEED";

#[derive(Debug, Clone, Parser)]
#[command(name = "cqed-qecc", version, about = "Quantum-trajectory runs of the cavity-QED repetition code")]
pub struct Args {
    /// TOML run configuration; defaults apply to anything missing.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// CSV output file; stdout if omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// SVG plot of the results.
    #[arg(long, value_name = "PATH")]
    pub plot: Option<PathBuf>,

    /// Master seed, overriding the config.
    #[arg(long, value_name = "N", env = SEED_ENV)]
    pub seed: Option<u64>,

    /// Worker threads per ensemble; 0 uses every core.
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub workers: usize,

    /// Run only the baseline without the feedback pulse.
    #[arg(long)]
    pub no_correction: bool,

    /// Emit the closed-form model curves instead of simulating.
    #[arg(long)]
    pub analytic_only: bool,

    /// One JSON line per trajectory.
    #[arg(long, value_name = "PATH")]
    pub trajectory_log: Option<PathBuf>,
}

/// Model curve over the sweep range, or `[0, 4 pi]` if `phi_max` is not
/// swept over a range.
fn model_points(spec: &RunSpec) -> Vec<ModelPoint> {
    let v = &spec.sweep.values;
    let hi = v.iter().copied().fold(0.0f64, f64::max);
    if spec.sweep.parameter == SweepParameter::PhiMax && hi > 0.0 {
        model_grid(hi, 201)
    } else {
        model_grid(4.0 * std::f64::consts::PI, 201)
    }
}

fn write_csv_to<T: serde::Serialize>(rows: &[T], out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
            write_rows(f, rows).map_err(|source| Error::Csv {
                path: path.clone(),
                source,
            })
        }
        None => write_rows(std::io::stdout().lock(), rows).map_err(|source| Error::Csv {
            path: "<stdout>".into(),
            source,
        }),
    }
}

pub fn run(args: &Args) -> Result<()> {
    let mut spec = match &args.config {
        Some(path) => load_config(path)?,
        None => parse_config("")?,
    };
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    if args.no_correction {
        spec.protocol.correction_enabled = false;
    }

    if args.analytic_only {
        let points = if spec.sweep.parameter == SweepParameter::PhiMax && spec.sweep.values.len() > 1 {
            spec.sweep.values.iter().map(|&p| ModelPoint::at(p)).collect()
        } else {
            model_points(&spec)
        };
        write_csv_to(&points, args.out.as_ref())?;
        if let Some(path) = &args.plot {
            write_svg(&render_model_plot(&points), path)?;
        }
        return Ok(());
    }

    let mut log = match &args.trajectory_log {
        Some(path) => Some(std::io::BufWriter::new(
            std::fs::File::create(path).map_err(|e| Error::io(path, e))?,
        )),
        None => None,
    };
    let start = Instant::now();
    let rows = run_sweep(&spec, args.workers, log.as_mut().map(|w| w as &mut dyn Write))?;
    if let (Some(w), Some(path)) = (log.as_mut(), &args.trajectory_log) {
        w.flush().map_err(|e| Error::io(path, e))?;
    }
    eprintln!(
        "{} point(s), {} trajectories each, {:.2} s",
        rows.len(),
        spec.n_traj,
        start.elapsed().as_secs_f64()
    );
    write_csv_to(&rows, args.out.as_ref())?;
    if let Some(path) = &args.plot {
        let model = (spec.sweep.parameter == SweepParameter::PhiMax).then(|| model_points(&spec));
        write_svg(&render_plot(&rows, spec.sweep.parameter, model.as_deref()), path)?;
    }
    Ok(())
}
