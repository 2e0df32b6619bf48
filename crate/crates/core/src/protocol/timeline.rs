use std::f64::consts::PI;

use super::config::ProtocolConfig;
use super::stages::{
    channel_entry_pulse, channel_exit_pulse, feedback_pulse, initial_state, jc_gate,
    phase_fix_pulse, preparation_gates, r1_pulse, target_overlap, target_vector,
};
use crate::dynamics::{Gate, GateMode};
use crate::error::Result;
use crate::trajectory::{run_ensemble, Ensemble, EventKind, Schedule, Syndrome};

/// Event list for one run. The feedback flip is included only when
/// `with_feedback` is set; everything else is identical.
pub fn build_schedule(cfg: &ProtocolConfig, with_feedback: bool) -> Result<Schedule> {
    cfg.validate()?;
    let t = &cfg.timing;
    let l = &t.layout;
    let mode = cfg.gate_mode();
    let half_window = match mode {
        GateMode::Envelope(env) => 0.5 * env.duration,
        GateMode::Instantaneous => 0.0,
    };
    let mut s = Schedule::new(initial_state(), t.total_duration());
    s.initially_present = [false; 4];

    // A cavity crossing occupies [start, start + window] in envelope mode;
    // gates that follow it in the same crossing go at the end of the window.
    let crossing = |s: &mut Schedule, atom: usize, x: f64, gates: Vec<Gate>| {
        let start = t.arrival(atom, x) - half_window;
        let end = start + 2.0 * half_window;
        for (k, g) in gates.into_iter().enumerate() {
            s.push(if k == 0 { start } else { end }, EventKind::Gate(g));
        }
    };

    for atom in 1..=4 {
        s.push(t.arrival(atom, 0.0), EventKind::Enter { atom });
        s.push(t.arrival(atom, l.detector), EventKind::Exit { atom });
    }

    crossing(&mut s, 1, l.c1, preparation_gates(cfg.alpha, cfg.beta, mode)?);
    let r2 = t.arrival(1, l.r2);
    s.push(r2, EventKind::Gate(channel_entry_pulse()));
    s.push(r2, EventKind::NoiseKick { atom: 1 });
    s.push(r2, EventKind::Gate(channel_exit_pulse()));
    crossing(&mut s, 1, l.c2, vec![jc_gate(1, 2, PI, mode)]);

    for atom in [2, 3] {
        s.push(t.arrival(atom, l.r1), EventKind::Gate(r1_pulse(atom)));
        crossing(&mut s, atom, l.c1, vec![jc_gate(atom, 1, 2.0 * PI, mode)]);
        s.push(t.arrival(atom, l.r2), EventKind::NoiseKick { atom });
        crossing(&mut s, atom, l.c2, vec![jc_gate(atom, 2, 2.0 * PI, mode)]);
        s.push(t.arrival(atom, l.detector), EventKind::Measure { atom });
    }

    crossing(&mut s, 4, l.c2, vec![jc_gate(4, 2, PI, mode)]);
    let r3 = t.arrival(4, l.r3);
    if with_feedback {
        s.push(
            r3,
            EventKind::Conditional {
                syndrome: Syndrome::PP,
                gate: feedback_pulse(),
            },
        );
    }
    s.push(r3, EventKind::Gate(phase_fix_pulse()));

    // Measurements precede the exit of the same atom at the detector.
    s.events.sort_by(|a, b| {
        let rank = |k: &EventKind| match k {
            EventKind::Exit { .. } => 1,
            _ => 0,
        };
        a.time.total_cmp(&b.time).then(rank(&a.kind).cmp(&rank(&b.kind)))
    });
    s.validate()?;
    Ok(s)
}

/// Paired ensembles on identical trajectory seeds and phase draws.
#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolRun {
    /// Absent when correction is disabled in the config.
    pub corrected: Option<Ensemble>,
    pub uncorrected: Ensemble,
}

/// Runs the corrected and uncorrected variants of the protocol with the
/// same `n_traj` trajectory seeds.
pub fn run_protocol(cfg: &ProtocolConfig, n_traj: u64, master_seed: u64, workers: usize) -> Result<ProtocolRun> {
    let target = target_vector(cfg.alpha, cfg.beta);
    let score = |rec: &crate::trajectory::TrajectoryRecord| target_overlap(&rec.final_state, &target);
    let run = |feedback: bool| -> Result<Ensemble> {
        let schedule = build_schedule(cfg, feedback)?;
        run_ensemble(&schedule, &cfg.noise, n_traj, master_seed, workers, score)
    };
    let corrected = if cfg.correction_enabled {
        Some(run(true)?)
    } else {
        None
    };
    Ok(ProtocolRun {
        corrected,
        uncorrected: run(false)?,
    })
}
