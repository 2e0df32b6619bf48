use std::f64::consts::PI;

use cqed_qecc::dynamics::{
    full_passage_angle, jc_apply, omega0_for_angle, rabi_angle_from_envelope, Envelope, GateMode,
    JcPulse,
};
use cqed_qecc::hilbert::{BasisLabel, Level, PureState, C64};

const V: f64 = 500.0;
const W0: f64 = 6e-3;

// Composite Simpson rule on [a, b] with n (even) panels.
fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + k as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn rabi_angle_matches_direct_quadrature() {
    let omega0 = 5.9e5;
    let tau = W0 / V;
    for t_int in [-2.0 * tau, -0.3 * tau, 0.0, 0.7 * tau, 3.0 * tau] {
        // the Gaussian is below 1e-40 before -10 tau
        let oracle = 0.5 * omega0 * simpson(|t| (-(V * t / W0).powi(2)).exp(), -10.0 * tau, t_int, 200_000);
        let got = rabi_angle_from_envelope(t_int, omega0, V, W0).unwrap();
        assert!((got - oracle).abs() <= 1e-10 * oracle, "t={t_int}: {got} vs {oracle}");
    }
}

#[test]
fn full_passage_and_half_passage() {
    let omega0 = 5.9e5;
    let full = full_passage_angle(omega0, V, W0).unwrap();
    assert!((full - omega0 * W0 * PI.sqrt() / (2.0 * V)).abs() < 1e-12 * full);
    let half = rabi_angle_from_envelope(0.0, omega0, V, W0).unwrap();
    assert!((half - 0.5 * full).abs() < 1e-12 * full);
    let far = rabi_angle_from_envelope(1.0, omega0, V, W0).unwrap();
    assert!((far - full).abs() < 1e-12 * full);
}

#[test]
fn two_pi_passage_needs_the_quoted_peak_coupling() {
    // invert the closed form: Omega0 = 4 pi v / (w0 sqrt(pi))
    let want = 4.0 * PI * V / (W0 * PI.sqrt());
    assert!((want - 5.908e5).abs() < 1e2);
    let long = Envelope::new(20.0 * W0 / V, V, W0);
    let got = omega0_for_angle(2.0 * PI, &long).unwrap();
    assert!((got - want).abs() < 1e-9 * want);
}

#[test]
fn full_passage_envelope_matches_instantaneous_pulse() {
    let env = Envelope::new(12.0 * W0 / V, V, W0);
    let mut psi = PureState::basis(BasisLabel::new([Level::E, Level::I, Level::G, Level::G], [0, 0]));
    psi.axpy(
        C64::new(0.3, -0.4),
        &PureState::basis(BasisLabel::new([Level::G, Level::I, Level::G, Level::G], [1, 0])),
    );
    psi.normalize();
    for angle in [PI / 3.0, PI, 2.0 * PI] {
        let sharp = jc_apply(&psi, &JcPulse::new(1, 1, angle)).unwrap();
        let smooth = jc_apply(
            &psi,
            &JcPulse::new(1, 1, angle).with_mode(GateMode::Envelope(env)),
        )
        .unwrap();
        let d = smooth.max_abs_diff(&sharp);
        assert!(d < 1e-8, "angle {angle}: {d}");
        assert!((smooth.norm() - 1.0).abs() < 1e-8, "norm {}", smooth.norm());
    }
}
