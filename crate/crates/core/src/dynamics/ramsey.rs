use crate::error::Result;
use crate::hilbert::{Level, PureState, Subsystem, C64, DIM, ONE, ZERO};

/// Pair of adjacent circular levels addressed by a classical pulse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transition {
    /// `i <-> g`
    IG,
    /// `g <-> e`
    GE,
}

impl Transition {
    pub fn levels(self) -> (Level, Level) {
        match self {
            Transition::IG => (Level::I, Level::G),
            Transition::GE => (Level::G, Level::E),
        }
    }
}

/// Classical microwave pulse in a Ramsey zone.
///
/// On the addressed pair `(lower, upper)` it applies
/// `exp(-i (area/2) (cos(axis) X + sin(axis) Y))`; the third level is left
/// alone. With `axis = pi/2` this is the real rotation
/// `lower -> cos(area/2) lower + sin(area/2) upper`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RamseyPulse {
    pub atom: usize,
    pub transition: Transition,
    pub area: f64,
    pub axis_phase: f64,
}

impl RamseyPulse {
    pub fn new(atom: usize, transition: Transition, area: f64, axis_phase: f64) -> Self {
        RamseyPulse {
            atom,
            transition,
            area,
            axis_phase,
        }
    }
}

/// The pulse as a 3x3 matrix indexed `[to][from]` in `i, g, e` order.
pub fn ramsey_local(pulse: &RamseyPulse) -> [[C64; 3]; 3] {
    let (lo, hi) = pulse.transition.levels();
    let (lo, hi) = (lo.digit(), hi.digit());
    let (s, c) = (0.5 * pulse.area).sin_cos();
    let minus_i = C64::new(0.0, -1.0);
    let mut m = [[ZERO; 3]; 3];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = ONE;
    }
    m[lo][lo] = C64::new(c, 0.0);
    m[hi][hi] = C64::new(c, 0.0);
    m[lo][hi] = minus_i * s * C64::from_polar(1.0, -pulse.axis_phase);
    m[hi][lo] = minus_i * s * C64::from_polar(1.0, pulse.axis_phase);
    m
}

pub(crate) fn ramsey_in_place(psi: &mut PureState, pulse: &RamseyPulse) -> Result<()> {
    let sub = Subsystem::atom(pulse.atom)?;
    let m = ramsey_local(pulse);
    let (lo, hi) = pulse.transition.levels();
    let (lo, hi) = (lo.digit(), hi.digit());
    let shift = (hi - lo) * sub.stride();
    let amps = psi.amplitudes_mut();
    for idx in 0..DIM {
        if sub.digit_of(idx) == lo {
            let (a, b) = (amps[idx], amps[idx + shift]);
            amps[idx] = m[lo][lo] * a + m[lo][hi] * b;
            amps[idx + shift] = m[hi][lo] * a + m[hi][hi] * b;
        }
    }
    Ok(())
}

pub fn ramsey_apply(psi: &PureState, pulse: &RamseyPulse) -> Result<PureState> {
    let mut out = psi.clone();
    ramsey_in_place(&mut out, pulse)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::Level::*;
    use crate::hilbert::{embed_atom_op, re, BasisLabel};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn ket(a: [Level; 4]) -> PureState {
        PureState::basis(BasisLabel::new(a, [0, 0]))
    }

    #[test]
    fn half_pi_prepares_plus() {
        let p = RamseyPulse::new(2, Transition::IG, FRAC_PI_2, FRAC_PI_2);
        let out = ramsey_apply(&ket([E, I, I, G]), &p).unwrap();
        let want = PureState::superposition([
            (re(FRAC_1_SQRT_2), BasisLabel::new([E, I, I, G], [0, 0])),
            (re(FRAC_1_SQRT_2), BasisLabel::new([E, G, I, G], [0, 0])),
        ]);
        assert!(out.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn two_pi_on_ig_flips_only_g() {
        let (gamma, delta) = (C64::new(0.6, 0.1), C64::new(0.2, -0.77));
        let psi = PureState::superposition([
            (gamma, BasisLabel::new([G, I, I, E], [0, 0])),
            (delta, BasisLabel::new([G, I, I, G], [1, 0])),
        ]);
        for axis in [0.0, FRAC_PI_2, 1.1] {
            let out = ramsey_apply(&psi, &RamseyPulse::new(4, Transition::IG, 2.0 * PI, axis)).unwrap();
            let want = PureState::superposition([
                (gamma, BasisLabel::new([G, I, I, E], [0, 0])),
                (-delta, BasisLabel::new([G, I, I, G], [1, 0])),
            ]);
            assert!(out.max_abs_diff(&want) < 1e-15);
        }
    }

    #[test]
    fn double_pi_on_ge_is_minus_identity_on_pair() {
        let p = RamseyPulse::new(3, Transition::GE, PI, 0.4);
        let m = ramsey_local(&p);
        let mut sq = [[ZERO; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    sq[i][j] += m[i][k] * m[k][j];
                }
            }
        }
        assert!((sq[0][0] - ONE).norm() < 1e-15);
        assert!((sq[1][1] + ONE).norm() < 1e-15);
        assert!((sq[2][2] + ONE).norm() < 1e-15);
        assert!(sq[1][2].norm() < 1e-15 && sq[2][1].norm() < 1e-15);
    }

    #[test]
    fn pi_on_ge_swaps_populations() {
        let p = RamseyPulse::new(4, Transition::GE, PI, 0.0);
        let out = ramsey_apply(&ket([I, I, I, G]), &p).unwrap();
        assert!((out.amplitude(BasisLabel::new([I, I, I, E], [0, 0])).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn in_place_matches_embedded_matrix() {
        let p = RamseyPulse::new(1, Transition::GE, 1.3, 0.7);
        let psi = PureState::superposition([
            (C64::new(0.3, 0.2), BasisLabel::new([E, G, I, G], [1, 0])),
            (C64::new(-0.5, 0.1), BasisLabel::new([G, G, I, G], [1, 0])),
            (C64::new(0.1, 0.7), BasisLabel::new([I, G, I, G], [0, 1])),
        ]);
        let op = embed_atom_op(1, &ramsey_local(&p)).unwrap();
        assert!(op.is_unitary());
        assert!(ramsey_apply(&psi, &p).unwrap().max_abs_diff(&op.apply(&psi)) < 1e-15);
    }
}
