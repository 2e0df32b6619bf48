use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::engine::{Prepared, TrajectoryRecord};
use super::noise::NoiseConfig;
use super::schedule::{Schedule, Syndrome, SyndromeCounts};
use super::seed::trajectory_seed;
use crate::error::{Error, Result};

/// Per-trajectory summary kept after the state itself is dropped.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectorySample {
    pub index: u64,
    pub seed: u64,
    /// `<t|rho_j|t>` as returned by the scoring function.
    pub overlap: f64,
    pub syndrome: Option<Syndrome>,
    pub phi: [f64; 3],
    pub jumps: Vec<super::JumpRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStats {
    pub n_traj: u64,
    /// `sqrt(mean_j overlap_j)`
    pub fidelity: f64,
    /// Jackknife standard error of `fidelity`; zero for a single trajectory.
    pub stderr: f64,
    pub syndrome_counts: SyndromeCounts,
    pub total_jumps: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Ensemble {
    pub stats: EnsembleStats,
    pub samples: Vec<TrajectorySample>,
}

/// Neumaier-compensated sum in iteration order.
fn compensated_sum<I: IntoIterator<Item = f64>>(xs: I) -> f64 {
    let (mut sum, mut c) = (0.0f64, 0.0f64);
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// `sqrt(mean)` of the overlaps and its leave-one-out jackknife error.
pub fn jackknife_fidelity(overlaps: &[f64]) -> Result<(f64, f64)> {
    let n = overlaps.len();
    if n == 0 {
        return Err(Error::EmptyEnsemble);
    }
    let total = compensated_sum(overlaps.iter().copied());
    let fid = (total / n as f64).max(0.0).sqrt();
    if n == 1 {
        return Ok((fid, 0.0));
    }
    let m = (n - 1) as f64;
    let loo: Vec<f64> = overlaps
        .iter()
        .map(|x| ((total - x) / m).max(0.0).sqrt())
        .collect();
    let mean = compensated_sum(loo.iter().copied()) / n as f64;
    let var = compensated_sum(loo.iter().map(|f| (f - mean).powi(2))) * m / n as f64;
    Ok((fid, var.sqrt()))
}

/// Runs `n_traj` trajectories on `workers` threads (0 = rayon default) and
/// scores each final state. Seeds depend only on `(master_seed, index)` and
/// aggregation runs in index order, so the result does not depend on
/// `workers`.
pub fn run_ensemble<F>(
    schedule: &Schedule,
    noise: &NoiseConfig,
    n_traj: u64,
    master_seed: u64,
    workers: usize,
    score: F,
) -> Result<Ensemble>
where
    F: Fn(&TrajectoryRecord) -> Result<f64> + Sync,
{
    if n_traj < 1 {
        return Err(Error::EmptyEnsemble);
    }
    let prepared = Prepared::new(schedule, noise)?;
    let one = |index: u64| -> Result<TrajectorySample> {
        let seed = trajectory_seed(master_seed, index);
        let rec = prepared.run(seed)?;
        Ok(TrajectorySample {
            index,
            seed,
            overlap: score(&rec)?,
            syndrome: rec.syndrome,
            phi: rec.phi_drawn,
            jumps: rec.jumps,
        })
    };
    let samples: Vec<TrajectorySample> = if workers == 1 {
        (0..n_traj).map(one).collect::<Result<_>>()?
    } else {
        let work = || (0..n_traj).into_par_iter().map(one).collect::<Result<Vec<_>>>();
        if workers == 0 {
            work()?
        } else {
            rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?
                .install(work)?
        }
    };

    let overlaps: Vec<f64> = samples.iter().map(|s| s.overlap).collect();
    let (fidelity, stderr) = jackknife_fidelity(&overlaps)?;
    let mut counts = SyndromeCounts::default();
    samples.iter().filter_map(|s| s.syndrome).for_each(|s| counts.record(s));
    let total_jumps = samples.iter().map(|s| s.jumps.len() as u64).sum();
    Ok(Ensemble {
        stats: EnsembleStats {
            n_traj,
            fidelity,
            stderr,
            syndrome_counts: counts,
            total_jumps,
        },
        samples,
    })
}
