use super::jc::{jc_apply, jc_rotate_in_place, GateMode, JcPulse};
use super::ramsey::{ramsey_in_place, RamseyPulse};
use super::stark::{stark_in_place, StarkKick};
use crate::error::Result;
use crate::hilbert::PureState;

/// Any unitary primitive of the protocol.
#[derive(Clone, Debug, PartialEq)]
pub enum Gate {
    Jc(JcPulse),
    Ramsey(RamseyPulse),
    Stark(StarkKick),
}

impl Gate {
    pub fn apply_in_place(&self, psi: &mut PureState) -> Result<()> {
        match self {
            Gate::Jc(p) => match p.mode {
                GateMode::Instantaneous => {
                    p.validate()?;
                    let (a, c) = p.subsystems()?;
                    jc_rotate_in_place(psi, a, c, p.rabi_angle);
                }
                GateMode::Envelope(_) => *psi = jc_apply(psi, p)?,
            },
            Gate::Ramsey(p) => ramsey_in_place(psi, p)?,
            Gate::Stark(k) => stark_in_place(psi, k)?,
        }
        Ok(())
    }

    pub fn apply(&self, psi: &PureState) -> Result<PureState> {
        let mut out = psi.clone();
        self.apply_in_place(&mut out)?;
        Ok(out)
    }
}

impl From<JcPulse> for Gate {
    fn from(p: JcPulse) -> Self {
        Gate::Jc(p)
    }
}

impl From<RamseyPulse> for Gate {
    fn from(p: RamseyPulse) -> Self {
        Gate::Ramsey(p)
    }
}

impl From<StarkKick> for Gate {
    fn from(k: StarkKick) -> Self {
        Gate::Stark(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{StarkCoefficients, Transition};
    use crate::hilbert::{PureState, C64, DIM};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_state(rng: &mut ChaCha8Rng) -> PureState {
        let mut s = PureState::from_amplitudes(
            (0..DIM)
                .map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
                .collect(),
        )
        .unwrap();
        s.normalize();
        s
    }

    #[test]
    fn every_gate_preserves_norm() {
        let gates: Vec<Gate> = vec![
            JcPulse::new(1, 1, 1.1).into(),
            JcPulse::new(4, 2, std::f64::consts::PI).into(),
            RamseyPulse::new(2, Transition::IG, 0.5 * std::f64::consts::PI, 0.3).into(),
            RamseyPulse::new(4, Transition::GE, std::f64::consts::PI, 0.0).into(),
            StarkKick::new(vec![1, 2, 3], 5.3, StarkCoefficients::default()).into(),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let psi = random_state(&mut rng);
            for g in &gates {
                let out = g.apply(&psi).unwrap();
                assert!((out.norm() - 1.0).abs() < 1e-12, "{g:?}");
            }
        }
    }
}
