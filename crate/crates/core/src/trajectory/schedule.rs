use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynamics::{Gate, GateMode};
use crate::error::{Error, Result};
use crate::hilbert::PureState;

/// Outcome of a `|+>`/`|->` measurement on the `i`/`g` pair of an ancilla.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Joint ancilla outcome `(A2, A3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Syndrome {
    pub a2: Sign,
    pub a3: Sign,
}

impl Syndrome {
    pub const MM: Syndrome = Syndrome { a2: Sign::Minus, a3: Sign::Minus };
    pub const PM: Syndrome = Syndrome { a2: Sign::Plus, a3: Sign::Minus };
    pub const MP: Syndrome = Syndrome { a2: Sign::Minus, a3: Sign::Plus };
    pub const PP: Syndrome = Syndrome { a2: Sign::Plus, a3: Sign::Plus };
    /// Order used for counts and CSV columns.
    pub const ALL: [Syndrome; 4] = [Syndrome::MM, Syndrome::PM, Syndrome::MP, Syndrome::PP];

    pub fn new(a2: Sign, a3: Sign) -> Self {
        Syndrome { a2, a3 }
    }

    pub fn slot(self) -> usize {
        Syndrome::ALL.iter().position(|s| *s == self).expect("listed")
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a2.symbol(), self.a3.symbol())
    }
}

/// Counts per syndrome in [`Syndrome::ALL`] order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyndromeCounts(pub [u64; 4]);

impl SyndromeCounts {
    pub fn record(&mut self, s: Syndrome) {
        self.0[s.slot()] += 1;
    }

    pub fn get(&self, s: Syndrome) -> u64 {
        self.0[s.slot()]
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EventKind {
    Gate(Gate),
    /// Stark phase kick on one encoded atom (1..=3) with the trajectory's
    /// random phase for that atom.
    NoiseKick { atom: usize },
    /// Projective `|+>` vs. rest measurement of ancilla 2 or 3.
    Measure { atom: usize },
    /// Gate applied only if the completed syndrome equals `syndrome`.
    Conditional { syndrome: Syndrome, gate: Gate },
    /// Atom enters the apparatus; its decay channels switch on.
    Enter { atom: usize },
    /// Atom leaves the apparatus; its decay channels switch off.
    Exit { atom: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Event {
    pub time: f64,
    pub kind: EventKind,
}

impl Event {
    /// Time the event occupies; nonzero only for envelope-resolved pulses.
    pub fn duration(&self) -> f64 {
        match &self.kind {
            EventKind::Gate(Gate::Jc(p)) => match p.mode {
                GateMode::Envelope(env) => env.duration,
                GateMode::Instantaneous => 0.0,
            },
            _ => 0.0,
        }
    }
}

/// Timed sequence of operations applied to an initial state. Decay acts on
/// every gap between events and after the last one up to `total_duration`.
#[derive(Clone, Debug, PartialEq)]
pub struct Schedule {
    pub initial: PureState,
    pub events: Vec<Event>,
    pub total_duration: f64,
    /// Atoms inside the apparatus at `t = 0`.
    pub initially_present: [bool; 4],
}

impl Schedule {
    pub fn new(initial: PureState, total_duration: f64) -> Self {
        Schedule {
            initial,
            events: Vec::new(),
            total_duration,
            initially_present: [true; 4],
        }
    }

    pub fn push(&mut self, time: f64, kind: EventKind) {
        self.events.push(Event { time, kind });
    }

    /// Stable sort by time; simultaneous events keep insertion order.
    pub fn sort(&mut self) {
        self.events.sort_by(|a, b| a.time.total_cmp(&b.time));
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::MalformedSchedule(msg));
        let mut busy_until = 0.0f64;
        let mut measured = [false; 2];
        for (k, ev) in self.events.iter().enumerate() {
            if !ev.time.is_finite() || ev.time < 0.0 {
                return bad(format!("event {k} has invalid time {}", ev.time));
            }
            if ev.time < busy_until {
                return bad(format!(
                    "event {k} at {} s starts before the previous event ends ({} s)",
                    ev.time, busy_until
                ));
            }
            busy_until = ev.time + ev.duration();
            match &ev.kind {
                EventKind::Gate(g) | EventKind::Conditional { gate: g, .. } => {
                    if let Gate::Jc(p) = g {
                        p.validate()?;
                    }
                }
                EventKind::NoiseKick { atom } if !(1..=3).contains(atom) => {
                    return bad(format!("noise kick on atom {atom}; only atoms 1-3 are exposed"));
                }
                EventKind::Measure { atom } => match atom {
                    2 | 3 => measured[atom - 2] = true,
                    _ => return bad(format!("measurement of atom {atom}; only ancillas 2-3")),
                },
                EventKind::Enter { atom } | EventKind::Exit { atom } if !(1..=4).contains(atom) => {
                    return bad(format!("presence event for atom {atom}"));
                }
                _ => {}
            }
            if let EventKind::Conditional { .. } = ev.kind {
                if !(measured[0] && measured[1]) {
                    return bad(format!("conditional event {k} precedes the syndrome measurement"));
                }
            }
        }
        if !(self.total_duration >= busy_until) {
            return bad(format!(
                "total duration {} s ends before the last event ({} s)",
                self.total_duration, busy_until
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{Envelope, JcPulse};
    use crate::hilbert::Level::*;
    use crate::hilbert::BasisLabel;

    fn start() -> PureState {
        PureState::basis(BasisLabel::new([E, I, I, G], [0, 0]))
    }

    #[test]
    fn rejects_decreasing_times() {
        let mut s = Schedule::new(start(), 1.0);
        s.push(0.5, EventKind::Gate(JcPulse::new(1, 1, 1.0).into()));
        s.push(0.4, EventKind::Gate(JcPulse::new(1, 1, 1.0).into()));
        assert!(s.validate().is_err());
        s.sort();
        assert!(s.validate().is_ok());
    }

    #[test]
    fn rejects_overlapping_envelope_window() {
        let env = Envelope::new(20e-6, 500.0, 6e-3);
        let mut s = Schedule::new(start(), 1.0);
        s.push(0.0, EventKind::Gate(JcPulse::new(1, 1, 1.0).with_mode(GateMode::Envelope(env)).into()));
        s.push(10e-6, EventKind::Measure { atom: 2 });
        assert!(s.validate().is_err());
    }

    #[test]
    fn rejects_short_total_and_early_feedback() {
        let mut s = Schedule::new(start(), 0.1);
        s.push(0.2, EventKind::Measure { atom: 2 });
        assert!(s.validate().is_err());

        let mut s = Schedule::new(start(), 1.0);
        s.push(0.1, EventKind::Measure { atom: 2 });
        s.push(
            0.2,
            EventKind::Conditional {
                syndrome: Syndrome::PP,
                gate: JcPulse::new(4, 2, 1.0).into(),
            },
        );
        assert!(s.validate().is_err());
    }

    #[test]
    fn rejects_kick_on_fourth_atom() {
        let mut s = Schedule::new(start(), 1.0);
        s.push(0.1, EventKind::NoiseKick { atom: 4 });
        assert!(s.validate().is_err());
    }

    #[test]
    fn syndrome_slots_follow_column_order() {
        let slots: Vec<usize> = Syndrome::ALL.iter().map(|s| s.slot()).collect();
        assert_eq!(slots, vec![0, 1, 2, 3]);
        assert_eq!(Syndrome::PM.to_string(), "(+,-)");
    }
}
