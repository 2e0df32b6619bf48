use std::f64::consts::PI;

use statrs::function::erf::{erf, erfc};

use super::jc::jc_coupling_operator;
use crate::error::{Error, Result};
use crate::hilbert::{LinearOperator, PureState, C64, DIM, ZERO};

/// Minimum number of integration steps per envelope window.
pub const MIN_STEPS: usize = 2000;

/// Gaussian mode profile crossed at constant velocity, truncated to a
/// window of `duration` seconds centred on the mode axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Envelope {
    /// Window length, s.
    pub duration: f64,
    /// Atomic velocity, m/s.
    pub velocity: f64,
    /// Mode waist, m.
    pub waist: f64,
    /// Fixed-step count; raised to `MIN_STEPS` if smaller.
    pub steps: usize,
}

impl Envelope {
    pub fn new(duration: f64, velocity: f64, waist: f64) -> Self {
        Envelope {
            duration,
            velocity,
            waist,
            steps: MIN_STEPS,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.duration > 0.0) {
            return Err(Error::NonPositiveDuration(self.duration));
        }
        positive("velocity", self.velocity)?;
        positive("waist", self.waist)?;
        Ok(())
    }

    /// `w0 / v`, the 1/e half-width of the coupling in time.
    pub fn transit_time(&self) -> f64 {
        self.waist / self.velocity
    }
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositive { name, value })
    }
}

/// `(Omega0/2) * integral_{-inf}^{t_int} exp(-v^2 t^2 / w0^2) dt`.
pub fn rabi_angle_from_envelope(t_int: f64, omega0: f64, v: f64, w0: f64) -> Result<f64> {
    positive("velocity", v)?;
    positive("waist", w0)?;
    let tau = w0 / v;
    // erfc(-x) = 1 + erf(x) without cancellation in the far tail.
    Ok(0.5 * omega0 * tau * 0.5 * PI.sqrt() * erfc(-t_int / tau))
}

/// Angle accumulated over a complete passage through the mode.
pub fn full_passage_angle(omega0: f64, v: f64, w0: f64) -> Result<f64> {
    positive("velocity", v)?;
    positive("waist", w0)?;
    Ok(omega0 * w0 * PI.sqrt() / (2.0 * v))
}

/// `integral exp(-v^2 t^2 / w0^2) dt` over a window of `duration` centred on zero.
pub fn gaussian_window_integral(duration: f64, v: f64, w0: f64) -> f64 {
    let tau = w0 / v;
    tau * PI.sqrt() * erf(0.5 * duration / tau)
}

/// Peak coupling that accumulates `angle` over the envelope window.
pub fn omega0_for_angle(angle: f64, env: &Envelope) -> Result<f64> {
    env.validate()?;
    Ok(2.0 * angle / gaussian_window_integral(env.duration, env.velocity, env.waist))
}

/// Time-dependent Jaynes-Cummings drive `d psi/dt = (Omega(t)/2) K psi`
/// with `Omega(t) = (Omega0/2) exp(-(t - t_c)^2 / tau^2)` and an optional
/// diagonal decay term `-(1/2) R psi`.
#[derive(Clone, Debug)]
pub struct EnvelopeDrive {
    generator: LinearOperator,
    omega0: f64,
    env: Envelope,
}

impl EnvelopeDrive {
    pub fn new(atom: usize, cavity: usize, angle: f64, env: Envelope) -> Result<Self> {
        env.validate()?;
        Ok(EnvelopeDrive {
            generator: jc_coupling_operator(atom, cavity)?,
            omega0: omega0_for_angle(angle, &env)?,
            env,
        })
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn steps(&self) -> usize {
        self.env.steps.max(MIN_STEPS)
    }

    pub fn step_size(&self) -> f64 {
        self.env.duration / self.steps() as f64
    }

    pub fn duration(&self) -> f64 {
        self.env.duration
    }

    /// `Omega(t)` for `t` measured from the window start.
    pub fn rabi_frequency(&self, t: f64) -> f64 {
        let x = (t - 0.5 * self.env.duration) / self.env.transit_time();
        0.5 * self.omega0 * (-x * x).exp()
    }

    fn derivative(&self, t: f64, x: &[C64], rates: Option<&[f64]>, out: &mut [C64]) {
        self.generator.apply_into(x, out);
        let g = 0.5 * self.rabi_frequency(t);
        match rates {
            Some(r) => {
                for k in 0..DIM {
                    out[k] = out[k] * g - x[k] * (0.5 * r[k]);
                }
            }
            None => out.iter_mut().for_each(|v| *v *= g),
        }
    }

    /// One classical fourth-order Runge-Kutta step from `t` to `t + h`.
    pub fn step(&self, psi: &mut PureState, t: f64, h: f64, rates: Option<&[f64]>) {
        let x = psi.amplitudes().to_vec();
        let mut k1 = vec![ZERO; DIM];
        let mut k2 = vec![ZERO; DIM];
        let mut k3 = vec![ZERO; DIM];
        let mut k4 = vec![ZERO; DIM];
        let mut tmp = vec![ZERO; DIM];
        self.derivative(t, &x, rates, &mut k1);
        for k in 0..DIM {
            tmp[k] = x[k] + k1[k] * (0.5 * h);
        }
        self.derivative(t + 0.5 * h, &tmp, rates, &mut k2);
        for k in 0..DIM {
            tmp[k] = x[k] + k2[k] * (0.5 * h);
        }
        self.derivative(t + 0.5 * h, &tmp, rates, &mut k3);
        for k in 0..DIM {
            tmp[k] = x[k] + k3[k] * h;
        }
        self.derivative(t + h, &tmp, rates, &mut k4);
        let amps = psi.amplitudes_mut();
        for k in 0..DIM {
            amps[k] = x[k] + (k1[k] + k2[k] * 2.0 + k3[k] * 2.0 + k4[k]) * (h / 6.0);
        }
    }

    /// Integrates across the whole window.
    pub fn integrate(&self, psi: &mut PureState, rates: Option<&[f64]>) {
        let h = self.step_size();
        for n in 0..self.steps() {
            self.step(psi, n as f64 * h, h, rates);
        }
    }
}
