use rand::Rng;
use serde::{Deserialize, Serialize};

use super::noise::NoiseConfig;
use crate::error::{Error, Result};
use crate::hilbert::{
    annihilation, atom_ket_bra, embed_atom_op, embed_cavity_op, re, Level, LinearOperator,
    PureState, Subsystem, DIM,
};

/// A quantum-jump operator `L = sqrt(rate) * A`.
#[derive(Clone, Debug)]
pub struct JumpChannel {
    pub operator: LinearOperator,
    pub rate: f64,
    pub label: String,
    /// Factor whose presence in the apparatus gates this channel.
    pub owner: Subsystem,
    /// Diagonal of `L^dag L`.
    decay_diag: Vec<f64>,
}

impl JumpChannel {
    /// `operator` is the bare jump operator; it is scaled by `sqrt(rate)`.
    pub fn new(
        operator: &LinearOperator,
        rate: f64,
        label: impl Into<String>,
        owner: Subsystem,
    ) -> Result<Self> {
        if !(rate >= 0.0) || !rate.is_finite() {
            return Err(Error::NonPositive { name: "jump rate", value: rate });
        }
        let scaled = operator.scale(re(rate.sqrt()));
        let ltl = scaled.adjoint().mul(&scaled);
        let decay_diag = ltl
            .diagonal()
            .ok_or(Error::NonDiagonalDecay)?
            .iter()
            .map(|v| v.re)
            .collect();
        Ok(JumpChannel {
            operator: scaled,
            rate,
            label: label.into(),
            owner,
            decay_diag,
        })
    }

    pub fn decay_diagonal(&self) -> &[f64] {
        &self.decay_diag
    }

    /// `<psi|L^dag L|psi>`
    pub fn jump_weight(&self, psi: &PureState) -> f64 {
        psi.amplitudes()
            .iter()
            .zip(&self.decay_diag)
            .map(|(a, g)| a.norm_sqr() * g)
            .sum()
    }
}

/// A quantum jump that occurred at `time` through channel `label`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JumpRecord {
    pub time: f64,
    pub label: String,
}

fn rate_of(name: &'static str, lifetime: f64) -> Result<Option<f64>> {
    if lifetime.is_infinite() && lifetime > 0.0 {
        Ok(None)
    } else if lifetime > 0.0 {
        Ok(Some(1.0 / lifetime))
    } else {
        Err(Error::InvalidLifetime { name, value: lifetime })
    }
}

/// Cavity leakage on both modes plus ladder decay `e -> g -> i` on every
/// atom. Infinite lifetimes drop the corresponding channels.
pub fn build_jump_channels(cfg: &NoiseConfig) -> Result<Vec<JumpChannel>> {
    let mut out = Vec::new();
    if let Some(kappa) = rate_of("t_cav", cfg.t_cav)? {
        for k in 1..=2 {
            let a = embed_cavity_op(k, &annihilation())?;
            out.push(JumpChannel::new(&a, kappa, format!("C{k}:a"), Subsystem::cavity(k)?)?);
        }
    }
    if let Some(gamma) = rate_of("t_atom", cfg.t_atom)? {
        for k in 1..=4 {
            let owner = Subsystem::atom(k)?;
            let eg = embed_atom_op(k, &atom_ket_bra(Level::G, Level::E))?;
            out.push(JumpChannel::new(&eg, gamma, format!("A{k}:e->g"), owner)?);
            let gi = embed_atom_op(k, &atom_ket_bra(Level::I, Level::G))?;
            out.push(JumpChannel::new(&gi, gamma, format!("A{k}:g->i"), owner)?);
        }
    }
    Ok(out)
}

/// Decay channels with a presence mask over the six factors.
#[derive(Clone, Debug)]
pub struct DecayModel {
    channels: Vec<JumpChannel>,
}

impl DecayModel {
    pub fn new(channels: Vec<JumpChannel>) -> Self {
        DecayModel { channels }
    }

    pub fn channels(&self) -> &[JumpChannel] {
        &self.channels
    }

    pub fn is_empty(&self) -> bool {
        self.channels.is_empty()
    }

    /// Diagonal of `sum L^dag L` over channels whose owner is present.
    pub fn rates(&self, present: &[bool; 6]) -> Vec<f64> {
        let mut r = vec![0.0; DIM];
        for ch in self.channels.iter().filter(|c| present[c.owner.position()]) {
            for (acc, g) in r.iter_mut().zip(&ch.decay_diag) {
                *acc += g;
            }
        }
        r
    }

    /// Evolves over `dt` starting at absolute time `t0`, jumping whenever
    /// the squared norm falls to `threshold`; `threshold` is redrawn after
    /// every jump. The state is left unnormalized between jumps.
    #[allow(clippy::too_many_arguments)]
    pub fn evolve<R: Rng + ?Sized>(
        &self,
        psi: &mut PureState,
        t0: f64,
        dt: f64,
        present: &[bool; 6],
        rates: &[f64],
        threshold: &mut f64,
        rng: &mut R,
        jumps: &mut Vec<JumpRecord>,
    ) {
        let mut t = 0.0;
        loop {
            let remaining = dt - t;
            if remaining <= 0.0 {
                return;
            }
            match first_crossing(psi, rates, *threshold, remaining) {
                None => {
                    propagate(psi, rates, remaining);
                    return;
                }
                Some(tau) => {
                    propagate(psi, rates, tau);
                    t += tau;
                    self.jump(psi, present, t0 + t, rng, jumps);
                    *threshold = draw_threshold(rng);
                }
            }
        }
    }

    /// Applies one randomly chosen jump (weights `<L^dag L>`) and
    /// renormalizes. No-op if every active channel is dark.
    pub fn jump<R: Rng + ?Sized>(
        &self,
        psi: &mut PureState,
        present: &[bool; 6],
        time: f64,
        rng: &mut R,
        jumps: &mut Vec<JumpRecord>,
    ) {
        let weights: Vec<f64> = self
            .channels
            .iter()
            .map(|c| {
                if present[c.owner.position()] {
                    c.jump_weight(psi)
                } else {
                    0.0
                }
            })
            .collect();
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return;
        }
        let mut pick = rng.random::<f64>() * total;
        let mut chosen = weights.iter().rposition(|&w| w > 0.0).expect("positive total");
        for (k, w) in weights.iter().enumerate() {
            if *w > 0.0 && pick < *w {
                chosen = k;
                break;
            }
            pick -= w;
        }
        let ch = &self.channels[chosen];
        *psi = ch.operator.apply(psi);
        psi.normalize();
        jumps.push(JumpRecord {
            time,
            label: ch.label.clone(),
        });
    }
}

/// Uniform on `(0, 1]`.
pub(crate) fn draw_threshold<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    1.0 - rng.random::<f64>()
}

fn propagate(psi: &mut PureState, rates: &[f64], dt: f64) {
    for (a, g) in psi.amplitudes_mut().iter_mut().zip(rates) {
        if *g != 0.0 {
            *a *= (-0.5 * g * dt).exp();
        }
    }
}

/// Smallest `t` in `[0, horizon]` with `sum_k |c_k|^2 exp(-g_k t) = u`, if any.
fn first_crossing(psi: &PureState, rates: &[f64], u: f64, horizon: f64) -> Option<f64> {
    let terms: Vec<(f64, f64)> = psi
        .amplitudes()
        .iter()
        .zip(rates)
        .map(|(a, &g)| (a.norm_sqr(), g))
        .filter(|&(w, _)| w > 0.0)
        .collect();
    let f = |t: f64| terms.iter().map(|(w, g)| w * (-g * t).exp()).sum::<f64>() - u;
    if f(horizon) > 0.0 {
        return None;
    }
    if f(0.0) <= 0.0 {
        return Some(0.0);
    }
    // f is convex and decreasing, so Newton from the left never overshoots.
    let (mut lo, mut hi) = (0.0, horizon);
    let mut t = 0.0;
    for _ in 0..200 {
        let val = f(t);
        if val > 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let slope: f64 = -terms.iter().map(|(w, g)| w * g * (-g * t).exp()).sum::<f64>();
        let mut next = if slope < 0.0 { t - val / slope } else { hi };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - t).abs() <= 1e-15 * next.abs().max(1e-300) {
            return Some(next);
        }
        t = next;
    }
    Some(t)
}

/// Evolves `psi` over `dt` with every channel active, starting from a
/// fresh jump threshold; returns the normalized state.
pub fn decay_interval<R: Rng + ?Sized>(
    psi: &PureState,
    dt: f64,
    channels: &[JumpChannel],
    rng: &mut R,
) -> Result<PureState> {
    if !(dt >= 0.0) {
        return Err(Error::NonPositive { name: "decay interval", value: dt });
    }
    let model = DecayModel::new(channels.to_vec());
    let present = [true; 6];
    let rates = model.rates(&present);
    let mut out = psi.clone();
    out.normalize();
    let mut threshold = draw_threshold(rng);
    let mut jumps = Vec::new();
    model.evolve(&mut out, 0.0, dt, &present, &rates, &mut threshold, rng, &mut jumps);
    out.normalize();
    Ok(out)
}
