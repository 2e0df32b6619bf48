//! Monte Carlo wave-function engine.
//!
//! Between gates the only generator is the non-Hermitian decay term
//! `-(i/2) sum_c L_c^dag L_c`, which is diagonal in the product basis for
//! every channel this crate builds, so no-jump evolution is propagated
//! exactly and jump times come from solving `||psi(t)||^2 = u` directly.

mod channels;
mod engine;
mod ensemble;
mod measure;
mod noise;
mod schedule;
mod seed;

pub use channels::{build_jump_channels, decay_interval, DecayModel, JumpChannel, JumpRecord};
pub use engine::{run_trajectory, TrajectoryRecord};
pub use ensemble::{jackknife_fidelity, run_ensemble, Ensemble, EnsembleStats, TrajectorySample};
pub use measure::{plus_probability, project_sign};
pub use noise::{NoiseConfig, PhaseMode};
pub use schedule::{Event, EventKind, Schedule, Sign, Syndrome, SyndromeCounts};
pub use seed::{splitmix64, trajectory_seed};
