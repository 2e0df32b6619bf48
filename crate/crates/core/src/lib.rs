//! Quantum-trajectory simulation of a three-qubit repetition code run on
//! circular Rydberg atoms crossing two high-Q microwave cavities.
//!
//! The composite system is four three-level atoms (`|i>`, `|g>`, `|e>`) and
//! two cavity modes truncated to zero or one photon: 324 basis states.
//!
//! * [`hilbert`]: basis indexing, state vectors, sparse embedded operators,
//!   reduced density matrices.
//! * [`dynamics`]: Jaynes-Cummings pulses, classical Ramsey pulses and
//!   quadratic Stark phase kicks.
//! * [`trajectory`]: Monte Carlo wave-function engine with seeded,
//!   worker-count independent ensembles.
//! * [`protocol`]: preparation, encoding, noisy channel, decoding, syndrome
//!   measurement and feedback, plus the timeline that strings them together.
//! * [`analytic`]: closed-form single-qubit model of the correction step.
//! * [`cli`]: config parsing, parameter sweeps, CSV and SVG output.

pub mod analytic;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod hilbert;
pub mod protocol;
pub mod quad;
pub mod trajectory;

pub use error::{Error, Result};
