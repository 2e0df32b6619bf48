//! Unitary building blocks of the protocol.
//!
//! Every primitive has an in-place form working on a [`PureState`](crate::hilbert::PureState) and a
//! value-returning form. All of them are exact rotations except the
//! envelope-resolved Jaynes-Cummings pulse, which integrates the coupling
//! numerically.

mod envelope;
mod gate;
mod jc;
mod ramsey;
mod stark;

pub use envelope::{
    full_passage_angle, gaussian_window_integral, omega0_for_angle, rabi_angle_from_envelope,
    Envelope, EnvelopeDrive,
};
pub use gate::Gate;
pub use jc::{jc_apply, jc_coupling_operator, jc_rotate_in_place, jc_unitary, GateMode, JcPulse};
pub use ramsey::{ramsey_apply, ramsey_local, RamseyPulse, Transition};
pub use stark::{
    stark_coefficient, stark_kick_apply, stark_shift_parabolic, StarkCoefficients, StarkKick,
};

