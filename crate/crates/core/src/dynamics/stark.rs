use crate::error::{Error, Result};
use crate::hilbert::{Level, PureState, Subsystem, C64, DIM};

/// Second-order Stark shift of a hydrogenic level in parabolic quantum
/// numbers, in atomic units per `|E|^2`.
pub fn stark_shift_parabolic(n: u32, n1: u32, m: i32) -> f64 {
    let n = n as f64;
    let n1 = n1 as f64;
    let m = m.unsigned_abs() as f64;
    let bracket = 7.0 * n * n - 6.0 * (m + n1).powi(2) + 6.0 * n1 * (m - 1.0) + 6.0 * n * (m + 1.0)
        - 1.5 * m
        + 8.0;
    -bracket * n.powi(4) / 8.0
}

/// Quadratic Stark coefficient `alpha_n` of the circular level with
/// principal quantum number `n` (`n1 = 0`, `|m| = n - 1`).
pub fn stark_coefficient(n: u32) -> Result<f64> {
    if !(49..=51).contains(&n) {
        return Err(Error::UnsupportedPrincipalNumber(n));
    }
    let x = n as f64;
    Ok(-(7.0 * x * x + 10.5 * x + 3.5) * x.powi(4) / 8.0)
}

/// Dimensionless level shifts used by the phase kick.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StarkCoefficients {
    pub beta_i: f64,
    pub beta_g: f64,
    pub beta_e: f64,
}

impl StarkCoefficients {
    pub fn new(beta_i: f64, beta_g: f64, beta_e: f64) -> Self {
        StarkCoefficients {
            beta_i,
            beta_g,
            beta_e,
        }
    }

    /// Circular levels `n = 49, 50, 51` scaled by `alpha_51 - alpha_50`, so
    /// an `e`-`g` coherence turns by exactly `phi`.
    pub fn circular_rydberg() -> Self {
        let a = |n| stark_coefficient(n).expect("supported level");
        let (ai, ag, ae) = (a(49), a(50), a(51));
        let scale = ae - ag;
        StarkCoefficients::new(ai / scale, ag / scale, ae / scale)
    }

    pub fn level(&self, level: Level) -> f64 {
        match level {
            Level::I => self.beta_i,
            Level::G => self.beta_g,
            Level::E => self.beta_e,
        }
    }

    /// Rotation of a `g`-`i` coherence per unit of `phi`.
    pub fn ig_ratio(&self) -> f64 {
        self.beta_g - self.beta_i
    }
}

impl Default for StarkCoefficients {
    fn default() -> Self {
        Self::circular_rydberg()
    }
}

/// Level-dependent phase `exp(-i phi beta_k)` on each listed atom.
#[derive(Clone, Debug, PartialEq)]
pub struct StarkKick {
    pub atoms: Vec<usize>,
    pub phi: f64,
    pub coeffs: StarkCoefficients,
}

impl StarkKick {
    pub fn new(atoms: Vec<usize>, phi: f64, coeffs: StarkCoefficients) -> Self {
        StarkKick { atoms, phi, coeffs }
    }
}

pub(crate) fn stark_in_place(psi: &mut PureState, kick: &StarkKick) -> Result<()> {
    for &atom in &kick.atoms {
        let sub = Subsystem::atom(atom)?;
        let phases: Vec<C64> = Level::ALL
            .iter()
            .map(|&l| C64::from_polar(1.0, -kick.phi * kick.coeffs.level(l)))
            .collect();
        let amps = psi.amplitudes_mut();
        for (idx, a) in amps.iter_mut().enumerate().take(DIM) {
            *a *= phases[sub.digit_of(idx)];
        }
    }
    Ok(())
}

pub fn stark_kick_apply(psi: &PureState, kick: &StarkKick) -> Result<PureState> {
    let mut out = psi.clone();
    stark_in_place(&mut out, kick)?;
    Ok(out)
}
