//! The four-step correction script: preparation of the atom-cavity qubit,
//! encoding on two ancillas, the random Stark channel, and decoding into a
//! fourth atom followed by syndrome measurement and feedback.
//!
//! Each step exists both as a deterministic state map (for exact checks)
//! and as timed events in a [`Schedule`](crate::trajectory::Schedule)
//! built from the same gate constructors.

mod config;
mod stages;
mod timeline;

pub use config::{Layout, ProtocolConfig, PulseShape, Timing};
pub use stages::{
    branch_phase_gate, channel_entry_pulse, channel_exit_pulse, correct, decode, decode_ancillas,
    decode_first, decode_last, encode, expected_overlap, feedback_pulse, fidelity, initial_state,
    inject_flip, jc_gate, measure_syndrome, noisy_channel, phase_fix_pulse, prepare_ancillas,
    prepare_qubit, preparation_angle, preparation_gates, project_syndrome, r1_pulse,
    target_overlap, target_vector, BranchAverage, QUBIT_FACTORS,
};
pub use timeline::{build_schedule, run_protocol, ProtocolRun};
