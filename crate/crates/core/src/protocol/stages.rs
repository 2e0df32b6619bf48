use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;

use crate::dynamics::{
    Gate, GateMode, JcPulse, RamseyPulse, StarkCoefficients, StarkKick, Transition,
};
use crate::error::{Error, Result};
use crate::hilbert::{reduced_density, BasisLabel, Level, PureState, Subsystem, C64, ZERO};
use crate::trajectory::{plus_probability, project_sign, Sign, Syndrome};

/// `|e, i, i, g>` with both cavities empty.
pub fn initial_state() -> PureState {
    PureState::basis(BasisLabel::new([Level::E, Level::I, Level::I, Level::G], [0, 0]))
}

/// Ancilla preparation `|i> -> (|i> + |g>)/sqrt 2`.
pub fn r1_pulse(atom: usize) -> Gate {
    RamseyPulse::new(atom, Transition::IG, FRAC_PI_2, FRAC_PI_2).into()
}

/// Takes A1 into the `(|g> +- |e>)/sqrt 2` basis: `e -> +`, `g -> -`.
pub fn channel_entry_pulse() -> Gate {
    RamseyPulse::new(1, Transition::GE, FRAC_PI_2, -FRAC_PI_2).into()
}

/// Inverse of [`channel_entry_pulse`].
pub fn channel_exit_pulse() -> Gate {
    RamseyPulse::new(1, Transition::GE, FRAC_PI_2, FRAC_PI_2).into()
}

/// `g <-> e` flip of A4.
pub fn feedback_pulse() -> Gate {
    RamseyPulse::new(4, Transition::GE, PI, 0.0).into()
}

/// `i <-> g` cycle of A4: sign flip of its `g` component.
pub fn phase_fix_pulse() -> Gate {
    RamseyPulse::new(4, Transition::IG, 2.0 * PI, FRAC_PI_2).into()
}

pub fn jc_gate(atom: usize, cavity: usize, angle: f64, mode: GateMode) -> Gate {
    JcPulse::new(atom, cavity, angle).with_mode(mode).into()
}

/// Rabi angle and `g`-branch phase taking `|e, 0>` to
/// `|alpha| |e, 0> + |beta| e^{i chi} |g, 1>`.
pub fn preparation_angle(alpha: C64, beta: C64) -> Result<(f64, f64)> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if !((norm - 1.0).abs() <= 1e-12) {
        return Err(Error::NotNormalized(norm));
    }
    let theta = 2.0 * beta.norm().atan2(alpha.norm());
    let chi = if alpha.norm() > 0.0 && beta.norm() > 0.0 {
        beta.arg() - alpha.arg()
    } else {
        0.0
    };
    Ok((theta, chi))
}

/// Phase `e^{i chi}` on the `g` level of A1.
pub fn branch_phase_gate(chi: f64) -> Gate {
    StarkKick::new(vec![1], 1.0, StarkCoefficients::new(0.0, -chi, 0.0)).into()
}

/// Gates of the preparation step: the Rabi pulse, then a phase gate if
/// the amplitudes are not relatively real and positive.
pub fn preparation_gates(alpha: C64, beta: C64, mode: GateMode) -> Result<Vec<Gate>> {
    let (theta, chi) = preparation_angle(alpha, beta)?;
    let mut gates = Vec::new();
    if theta != 0.0 {
        gates.push(jc_gate(1, 1, theta, mode));
    }
    if chi != 0.0 {
        gates.push(branch_phase_gate(chi));
    }
    Ok(gates)
}

fn apply_all(mut psi: PureState, gates: &[Gate]) -> Result<PureState> {
    for g in gates {
        g.apply_in_place(&mut psi)?;
    }
    Ok(psi)
}

/// `alpha |e, 0_C1> + beta |g, 1_C1>` (up to a global phase), ancillas in
/// `|i>`, A4 in `|g>`.
pub fn prepare_qubit(alpha: C64, beta: C64) -> Result<PureState> {
    let gates = preparation_gates(alpha, beta, GateMode::Instantaneous)?;
    apply_all(initial_state(), &gates)
}

/// R1 on both ancillas.
pub fn prepare_ancillas(psi: &PureState) -> Result<PureState> {
    apply_all(psi.clone(), &[r1_pulse(2), r1_pulse(3)])
}

/// R1 on both ancillas, then a vacuum Rabi cycle of each with C1.
pub fn encode(psi: &PureState) -> Result<PureState> {
    let mode = GateMode::Instantaneous;
    let gates = [
        r1_pulse(2),
        r1_pulse(3),
        jc_gate(2, 1, 2.0 * PI, mode),
        jc_gate(3, 1, 2.0 * PI, mode),
    ];
    apply_all(psi.clone(), &gates)
}

/// Random Stark field on the three encoded atoms, atom `k` seeing
/// `phases[k - 1]`, sandwiched between the A1 basis change and its inverse.
pub fn noisy_channel(psi: &PureState, phases: [f64; 3], coeffs: StarkCoefficients) -> Result<PureState> {
    let mut out = channel_entry_pulse().apply(psi)?;
    for (k, &phi) in phases.iter().enumerate() {
        Gate::from(StarkKick::new(vec![k + 1], phi, coeffs)).apply_in_place(&mut out)?;
    }
    channel_exit_pulse().apply_in_place(&mut out)?;
    Ok(out)
}

/// Exact bit flip of one encoded atom in its code basis: a channel pass
/// in which only `atom` rotates, by half a turn.
pub fn inject_flip(psi: &PureState, atom: usize) -> Result<PureState> {
    let mut phases = [0.0; 3];
    let coeffs = match atom {
        1 => StarkCoefficients::new(0.0, 0.0, 1.0),
        2 | 3 => StarkCoefficients::new(0.0, 1.0, 1.0),
        _ => return Err(Error::InvalidAtom(atom)),
    };
    phases[atom - 1] = PI;
    noisy_channel(psi, phases, coeffs)
}

/// A1 swaps its excitation into C2.
pub fn decode_first(psi: &PureState) -> Result<PureState> {
    jc_gate(1, 2, PI, GateMode::Instantaneous).apply(psi)
}

/// Vacuum Rabi cycles of A2 and A3 with C2.
pub fn decode_ancillas(psi: &PureState) -> Result<PureState> {
    let mode = GateMode::Instantaneous;
    apply_all(psi.clone(), &[jc_gate(2, 2, 2.0 * PI, mode), jc_gate(3, 2, 2.0 * PI, mode)])
}

/// A4 reloads the C2 excitation.
pub fn decode_last(psi: &PureState) -> Result<PureState> {
    jc_gate(4, 2, PI, GateMode::Instantaneous).apply(psi)
}

pub fn decode(psi: &PureState) -> Result<PureState> {
    decode_last(&decode_ancillas(&decode_first(psi)?)?)
}

/// Measures A2 then A3 in the `|+>`/rest basis and returns the collapsed,
/// renormalized state.
pub fn measure_syndrome<R: Rng + ?Sized>(psi: &PureState, rng: &mut R) -> Result<(Syndrome, PureState)> {
    let mut out = psi.clone();
    let mut signs = [Sign::Minus; 2];
    for (slot, atom) in [2usize, 3].into_iter().enumerate() {
        let p = plus_probability(&out, atom)?;
        signs[slot] = if rng.random::<f64>() < p { Sign::Plus } else { Sign::Minus };
        project_sign(&mut out, atom, signs[slot])?;
        out.normalize();
    }
    Ok((Syndrome::new(signs[0], signs[1]), out))
}

/// Unnormalized projection onto one syndrome branch; its squared norm is
/// the Born probability of that outcome.
pub fn project_syndrome(psi: &PureState, syndrome: Syndrome) -> Result<PureState> {
    let mut out = psi.clone();
    project_sign(&mut out, 2, syndrome.a2)?;
    project_sign(&mut out, 3, syndrome.a3)?;
    Ok(out)
}

/// R3: the feedback flip when enabled and the syndrome is `(+,+)`, then
/// the unconditional phase fix.
pub fn correct(psi: &PureState, syndrome: Syndrome, correction_enabled: bool) -> Result<PureState> {
    let mut out = psi.clone();
    if correction_enabled && syndrome == Syndrome::PP {
        feedback_pulse().apply_in_place(&mut out)?;
    }
    phase_fix_pulse().apply_in_place(&mut out)?;
    Ok(out)
}

/// Subsystems the fidelity is evaluated on, in this order.
pub const QUBIT_FACTORS: [Subsystem; 2] = [Subsystem::C1, Subsystem::A4];

/// `alpha |0_C1, e_A4> + beta |1_C1, g_A4>` over the `(C1, A4)` factor,
/// index `n1 * 3 + level`.
pub fn target_vector(alpha: C64, beta: C64) -> [C64; 6] {
    let mut t = [ZERO; 6];
    t[Level::E.digit()] = alpha;
    t[3 + Level::G.digit()] = beta;
    t
}

/// `<t| rho_(C1,A4) |t>` of the normalized `psi`.
pub fn target_overlap(psi: &PureState, target: &[C64; 6]) -> Result<f64> {
    let rho = reduced_density(psi, &QUBIT_FACTORS)?;
    Ok(rho.expectation(target).re / psi.norm_sqr())
}

/// `sqrt` of the mean target overlap of an ensemble of final states.
pub fn fidelity(states: &[PureState], alpha: C64, beta: C64) -> Result<f64> {
    if states.is_empty() {
        return Err(Error::EmptyEnsemble);
    }
    let t = target_vector(alpha, beta);
    let mut sum = 0.0;
    for s in states {
        sum += target_overlap(s, &t)?;
    }
    Ok((sum / states.len() as f64).max(0.0).sqrt())
}

/// Syndrome-averaged outcome of one decay-free run at fixed phases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchAverage {
    /// `sum_s p_s <t|rho_s|t>`
    pub overlap: f64,
    /// Indexed by [`Syndrome::slot`].
    pub probabilities: [f64; 4],
}

/// Runs the decay-free protocol at fixed channel phases and averages the
/// target overlap over all four syndrome branches with their Born weights.
pub fn expected_overlap(
    alpha: C64,
    beta: C64,
    phases: [f64; 3],
    coeffs: StarkCoefficients,
    correction_enabled: bool,
) -> Result<BranchAverage> {
    let psi = prepare_qubit(alpha, beta)?;
    let psi = decode(&noisy_channel(&encode(&psi)?, phases, coeffs)?)?;
    let t = target_vector(alpha, beta);
    let mut overlap = 0.0;
    let mut probabilities = [0.0; 4];
    for s in Syndrome::ALL {
        let branch = project_syndrome(&psi, s)?;
        let p = branch.norm_sqr();
        probabilities[s.slot()] = p;
        if p > 0.0 {
            overlap += p * target_overlap(&correct(&branch, s, correction_enabled)?, &t)?;
        }
    }
    Ok(BranchAverage {
        overlap,
        probabilities,
    })
}
