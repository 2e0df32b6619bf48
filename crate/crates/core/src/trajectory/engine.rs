use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::channels::{build_jump_channels, draw_threshold, DecayModel, JumpRecord};
use super::measure::{plus_probability, project_sign};
use super::noise::{NoiseConfig, PhaseMode};
use super::schedule::{EventKind, Schedule, Sign, Syndrome};
use crate::dynamics::{EnvelopeDrive, Gate, GateMode, StarkKick};
use crate::error::Result;
use crate::hilbert::PureState;

/// Everything one trajectory produced.
#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryRecord {
    /// Normalized state at `total_duration`.
    pub final_state: PureState,
    pub jumps: Vec<JumpRecord>,
    pub syndrome: Option<Syndrome>,
    /// Random phases seen by atoms 1, 2, 3 (all equal in shared mode).
    pub phi_drawn: [f64; 3],
    pub rng_seed: u64,
}

/// Schedule with envelope drives built once, shareable across workers.
pub(crate) struct Prepared<'a> {
    schedule: &'a Schedule,
    noise: &'a NoiseConfig,
    decay: DecayModel,
    drives: Vec<Option<EnvelopeDrive>>,
}

impl<'a> Prepared<'a> {
    pub(crate) fn new(schedule: &'a Schedule, noise: &'a NoiseConfig) -> Result<Self> {
        noise.validate()?;
        schedule.validate()?;
        let decay = DecayModel::new(build_jump_channels(noise)?);
        let mut drives = Vec::with_capacity(schedule.events.len());
        for ev in &schedule.events {
            drives.push(match &ev.kind {
                EventKind::Gate(Gate::Jc(p)) => match p.mode {
                    GateMode::Envelope(env) => {
                        Some(EnvelopeDrive::new(p.atom, p.cavity, p.rabi_angle, env)?)
                    }
                    GateMode::Instantaneous => None,
                },
                _ => None,
            });
        }
        Ok(Prepared {
            schedule,
            noise,
            decay,
            drives,
        })
    }

    pub(crate) fn run(&self, seed: u64) -> Result<TrajectoryRecord> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi_drawn = draw_phases(self.noise, &mut rng);
        let mut run = Run {
            prepared: self,
            psi: self.schedule.initial.clone(),
            present: presence(&self.schedule.initially_present),
            rates: Vec::new(),
            threshold: draw_threshold(&mut rng),
            outcomes: [None; 2],
            jumps: Vec::new(),
            rng,
        };
        run.psi.normalize();
        run.rates = self.decay.rates(&run.present);

        let mut t = 0.0;
        for (k, ev) in self.schedule.events.iter().enumerate() {
            run.decay(t, ev.time - t);
            t = ev.time;
            match &ev.kind {
                EventKind::Gate(g) => match &self.drives[k] {
                    Some(drive) => {
                        run.envelope(drive, t);
                        t += drive.duration();
                    }
                    None => g.apply_in_place(&mut run.psi)?,
                },
                EventKind::NoiseKick { atom } => {
                    let kick = StarkKick::new(
                        vec![*atom],
                        phi_drawn[atom - 1],
                        self.noise.coefficients,
                    );
                    Gate::Stark(kick).apply_in_place(&mut run.psi)?;
                }
                EventKind::Measure { atom } => {
                    let sign = run.measure(*atom)?;
                    run.outcomes[atom - 2] = Some(sign);
                }
                EventKind::Conditional { syndrome, gate } => {
                    if run.syndrome() == Some(*syndrome) {
                        gate.apply_in_place(&mut run.psi)?;
                    }
                }
                EventKind::Enter { atom } => run.set_present(*atom, true),
                EventKind::Exit { atom } => run.set_present(*atom, false),
            }
        }
        run.decay(t, self.schedule.total_duration - t);
        run.psi.normalize();
        let syndrome = run.syndrome();
        Ok(TrajectoryRecord {
            final_state: run.psi,
            jumps: run.jumps,
            syndrome,
            phi_drawn,
            rng_seed: seed,
        })
    }
}

fn presence(atoms: &[bool; 4]) -> [bool; 6] {
    [atoms[0], atoms[1], atoms[2], atoms[3], true, true]
}

fn draw_phases<R: Rng + ?Sized>(noise: &NoiseConfig, rng: &mut R) -> [f64; 3] {
    let mut draw = || noise.phi_max * rng.random::<f64>();
    match noise.phase_mode {
        PhaseMode::Shared => {
            let phi = draw();
            [phi; 3]
        }
        PhaseMode::Independent => [draw(), draw(), draw()],
    }
}

struct Run<'p, 'a> {
    prepared: &'p Prepared<'a>,
    psi: PureState,
    present: [bool; 6],
    rates: Vec<f64>,
    threshold: f64,
    outcomes: [Option<Sign>; 2],
    jumps: Vec<JumpRecord>,
    rng: ChaCha8Rng,
}

impl Run<'_, '_> {
    fn decay(&mut self, t0: f64, dt: f64) {
        if dt <= 0.0 || self.prepared.decay.is_empty() {
            return;
        }
        self.prepared.decay.evolve(
            &mut self.psi,
            t0,
            dt,
            &self.present,
            &self.rates,
            &mut self.threshold,
            &mut self.rng,
            &mut self.jumps,
        );
    }

    fn set_present(&mut self, atom: usize, on: bool) {
        self.present[atom - 1] = on;
        self.rates = self.prepared.decay.rates(&self.present);
    }

    /// Coupling and decay integrated together; a jump fires at the end of
    /// the step in which the norm crosses the threshold.
    fn envelope(&mut self, drive: &EnvelopeDrive, t0: f64) {
        let h = drive.step_size();
        let with_decay = !self.prepared.decay.is_empty();
        for n in 0..drive.steps() {
            let t = n as f64 * h;
            let rates = with_decay.then_some(self.rates.as_slice());
            drive.step(&mut self.psi, t, h, rates);
            if with_decay && self.psi.norm_sqr() <= self.threshold {
                self.prepared
                    .decay
                    .jump(&mut self.psi, &self.present, t0 + t + h, &mut self.rng, &mut self.jumps);
                self.threshold = draw_threshold(&mut self.rng);
            }
        }
    }

    /// Born-rule projection onto `|+>` or its complement, then
    /// renormalization and a fresh jump threshold.
    fn measure(&mut self, atom: usize) -> Result<Sign> {
        let p_plus = plus_probability(&self.psi, atom)?;
        let sign = if self.rng.random::<f64>() < p_plus {
            Sign::Plus
        } else {
            Sign::Minus
        };
        project_sign(&mut self.psi, atom, sign)?;
        self.psi.normalize();
        self.threshold = draw_threshold(&mut self.rng);
        Ok(sign)
    }

    fn syndrome(&self) -> Option<Syndrome> {
        match self.outcomes {
            [Some(a2), Some(a3)] => Some(Syndrome::new(a2, a3)),
            _ => None,
        }
    }
}

/// Runs one trajectory; a pure function of its arguments.
pub fn run_trajectory(schedule: &Schedule, noise: &NoiseConfig, seed: u64) -> Result<TrajectoryRecord> {
    Prepared::new(schedule, noise)?.run(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{JcPulse, RamseyPulse, Transition};
    use crate::hilbert::Level::*;
    use crate::hilbert::{re, BasisLabel};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn schedule() -> Schedule {
        let mut s = Schedule::new(PureState::basis(BasisLabel::new([E, I, I, G], [0, 0])), 1e-3);
        s.push(1e-4, EventKind::Gate(JcPulse::new(1, 1, FRAC_PI_2).into()));
        s.push(2e-4, EventKind::Gate(RamseyPulse::new(2, Transition::IG, FRAC_PI_2, FRAC_PI_2).into()));
        s.push(3e-4, EventKind::NoiseKick { atom: 2 });
        s.push(4e-4, EventKind::Measure { atom: 2 });
        s.push(4e-4, EventKind::Measure { atom: 3 });
        s
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let noise = NoiseConfig::default().with_phi_max(3.0).with_lifetimes(1e-4, 1e-4);
        let a = run_trajectory(&schedule(), &noise, 99).unwrap();
        let b = run_trajectory(&schedule(), &noise, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ideal_run_keeps_unit_norm_and_expected_state() {
        let rec = run_trajectory(&schedule(), &NoiseConfig::ideal(), 5).unwrap();
        assert!((rec.final_state.norm() - 1.0).abs() < 1e-12);
        assert!(rec.jumps.is_empty());
        assert_eq!(rec.phi_drawn, [0.0; 3]);
        // A3 sits in |i>, which is an equal mix of |+> and |->; A2 is |+>.
        let syn = rec.syndrome.unwrap();
        assert_eq!(syn.a2, Sign::Plus);
        let c = FRAC_1_SQRT_2;
        let a3 = match syn.a3 {
            Sign::Plus => [re(c), re(c)],
            Sign::Minus => [re(c), re(-c)],
        };
        let mut want = PureState::zero();
        for (l1, n1) in [(E, 0u8), (G, 1)] {
            for l2 in [I, G] {
                for (aa, l3) in [(a3[0], I), (a3[1], G)] {
                    let ket = PureState::basis(BasisLabel::new([l1, l2, l3, G], [n1, 0]));
                    want.axpy(re(c * c) * aa, &ket);
                }
            }
        }
        assert!(rec.final_state.distance_up_to_phase(&want) < 1e-12);
    }
}
