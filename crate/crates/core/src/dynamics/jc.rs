use super::envelope::{Envelope, EnvelopeDrive};
use crate::error::{Error, Result};
use crate::hilbert::{
    annihilation, atom_ket_bra, creation, embed_atom_op, embed_cavity_op, Level, LinearOperator,
    PureState, Subsystem, DIM,
};

/// How a Jaynes-Cummings pulse is realized.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateMode {
    /// Exact rotation by the accumulated angle.
    Instantaneous,
    /// Time-resolved Gaussian coupling integrated over a finite window.
    Envelope(Envelope),
}

/// Resonant atom-cavity exchange on the `g <-> e` transition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JcPulse {
    pub atom: usize,
    pub cavity: usize,
    /// Accumulated Rabi angle; `pi` swaps `|e,0>` into `|g,1>`, `2 pi` is a
    /// full vacuum Rabi cycle.
    pub rabi_angle: f64,
    /// Only zero is supported by the exact rotation.
    pub detuning: f64,
    pub mode: GateMode,
}

impl JcPulse {
    pub fn new(atom: usize, cavity: usize, rabi_angle: f64) -> Self {
        JcPulse {
            atom,
            cavity,
            rabi_angle,
            detuning: 0.0,
            mode: GateMode::Instantaneous,
        }
    }

    pub fn with_mode(mut self, mode: GateMode) -> Self {
        self.mode = mode;
        self
    }

    pub(crate) fn subsystems(&self) -> Result<(Subsystem, Subsystem)> {
        Ok((Subsystem::atom(self.atom)?, Subsystem::cavity(self.cavity)?))
    }

    pub(crate) fn validate(&self) -> Result<()> {
        self.subsystems()?;
        if self.detuning != 0.0 {
            return Err(Error::UnsupportedDetuning(self.detuning));
        }
        if let GateMode::Envelope(env) = self.mode {
            env.validate()?;
        }
        Ok(())
    }
}

/// Rotates every `{|e,0>, |g,1>}` block of `(atom, cavity)` by `theta`:
/// `|e,0> -> cos(theta/2)|e,0> + sin(theta/2)|g,1>`,
/// `|g,1> -> -sin(theta/2)|e,0> + cos(theta/2)|g,1>`.
pub fn jc_rotate_in_place(psi: &mut PureState, atom: Subsystem, cavity: Subsystem, theta: f64) {
    let (s, c) = (0.5 * theta).sin_cos();
    let shift = atom.stride() * (Level::E.digit() - Level::G.digit());
    let amps = psi.amplitudes_mut();
    for idx in 0..DIM {
        if atom.digit_of(idx) == Level::E.digit() && cavity.digit_of(idx) == 0 {
            let partner = idx - shift + cavity.stride();
            let (e0, g1) = (amps[idx], amps[partner]);
            amps[idx] = e0 * c - g1 * s;
            amps[partner] = e0 * s + g1 * c;
        }
    }
}

pub fn jc_apply(psi: &PureState, pulse: &JcPulse) -> Result<PureState> {
    pulse.validate()?;
    let (atom, cavity) = pulse.subsystems()?;
    let mut out = psi.clone();
    match pulse.mode {
        GateMode::Instantaneous => jc_rotate_in_place(&mut out, atom, cavity, pulse.rabi_angle),
        GateMode::Envelope(env) => {
            let drive = EnvelopeDrive::new(pulse.atom, pulse.cavity, pulse.rabi_angle, env)?;
            drive.integrate(&mut out, None);
        }
    }
    Ok(out)
}

/// `K = a^dag |g><e| - |e><g| a`, the generator with `H = i (Omega/2) K`.
pub fn jc_coupling_operator(atom: usize, cavity: usize) -> Result<LinearOperator> {
    let lower = embed_atom_op(atom, &atom_ket_bra(Level::G, Level::E))?;
    let raise = embed_atom_op(atom, &atom_ket_bra(Level::E, Level::G))?;
    let a = embed_cavity_op(cavity, &annihilation())?;
    let ad = embed_cavity_op(cavity, &creation())?;
    let emit = ad.mul(&lower);
    let absorb = raise.mul(&a);
    Ok(emit.add(&absorb.scale(num_complex::Complex64::new(-1.0, 0.0))))
}

/// The instantaneous pulse as an explicit sparse unitary.
pub fn jc_unitary(atom: usize, cavity: usize, theta: f64) -> Result<LinearOperator> {
    let (a, c) = (Subsystem::atom(atom)?, Subsystem::cavity(cavity)?);
    let mut entries = Vec::with_capacity(DIM + 64);
    for col in 0..DIM {
        let mut basis = PureState::zero();
        basis.amplitudes_mut()[col] = crate::hilbert::ONE;
        jc_rotate_in_place(&mut basis, a, c, theta);
        for (row, v) in basis.amplitudes().iter().enumerate() {
            if v.norm() > 0.0 {
                entries.push((row, col, *v));
            }
        }
    }
    Ok(LinearOperator::from_triplets(entries))
}
