//! Closed-form single-qubit model of the correction step.
//!
//! One qubit is rotated by a random angle `phi`, uniform on `[0, phi_max]`.
//! Without feedback the fidelity is `|cos(phi/2)|`. With an ideal
//! measure-and-flip step it is `sqrt(cos^4(phi/2) + sin^4(phi/2))`. The
//! averaged curves take the square root of the mean success probability
//! rather than the mean of the fidelity.

use serde::{Deserialize, Serialize};

use crate::quad::integrate_with_breaks;

/// Below this `phi_max` the averaged curves use their Taylor expansion.
pub const SERIES_CUTOFF: f64 = 1e-6;

pub fn f_nofb(phi: f64) -> f64 {
    (0.5 * phi).cos().abs()
}

pub fn f_fb(phi: f64) -> f64 {
    let (s, c) = (0.5 * phi).sin_cos();
    (c.powi(4) + s.powi(4)).sqrt()
}

/// `sqrt(1/2 + sin(phi_max) / (2 phi_max))`
pub fn f_nofb_ave(phi_max: f64) -> f64 {
    let x = phi_max.abs();
    if x < SERIES_CUTOFF {
        return (1.0 - x * x / 12.0).sqrt();
    }
    (0.5 + x.sin() / (2.0 * x)).sqrt()
}

/// `sqrt(3/4 + sin(2 phi_max) / (8 phi_max))`
pub fn f_fb_ave(phi_max: f64) -> f64 {
    let x = phi_max.abs();
    if x < SERIES_CUTOFF {
        return (1.0 - x * x / 6.0).sqrt();
    }
    (0.75 + (2.0 * x).sin() / (8.0 * x)).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelPoint {
    pub phi_max: f64,
    pub f_nofb_ave: f64,
    pub f_fb_ave: f64,
}

impl ModelPoint {
    pub fn at(phi_max: f64) -> Self {
        ModelPoint {
            phi_max,
            f_nofb_ave: f_nofb_ave(phi_max),
            f_fb_ave: f_fb_ave(phi_max),
        }
    }
}

/// `count` evenly spaced points on `[0, phi_end]`.
pub fn model_grid(phi_end: f64, count: usize) -> Vec<ModelPoint> {
    match count {
        0 => Vec::new(),
        1 => vec![ModelPoint::at(0.0)],
        _ => (0..count)
            .map(|k| ModelPoint::at(phi_end * k as f64 / (count - 1) as f64))
            .collect(),
    }
}

/// The averaged model next to the actual mean fidelity over `[0, phi_max]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    pub phi_max: f64,
    pub model_nofb: f64,
    pub mean_nofb: f64,
    pub model_fb: f64,
    pub mean_fb: f64,
}

impl ConsistencyReport {
    /// `model - mean` without feedback; nonnegative since the square root
    /// is concave.
    pub fn gap_nofb(&self) -> f64 {
        self.model_nofb - self.mean_nofb
    }

    pub fn gap_fb(&self) -> f64 {
        self.model_fb - self.mean_fb
    }
}

/// Mean of `f` over `[0, phi_max]`, split at multiples of pi where
/// `|cos(phi/2)|` has its kinks.
fn uniform_mean<F: Fn(f64) -> f64>(f: F, phi_max: f64) -> f64 {
    if phi_max < SERIES_CUTOFF {
        return f(0.5 * phi_max);
    }
    let breaks: Vec<f64> = (1..)
        .map(|k| k as f64 * std::f64::consts::PI)
        .take_while(|&b| b < phi_max)
        .collect();
    integrate_with_breaks(f, 0.0, phi_max, &breaks, 1e-13) / phi_max
}

pub fn model_consistency_check(phi_max: f64) -> ConsistencyReport {
    ConsistencyReport {
        phi_max,
        model_nofb: f_nofb_ave(phi_max),
        mean_nofb: uniform_mean(f_nofb, phi_max),
        model_fb: f_fb_ave(phi_max),
        mean_fb: uniform_mean(f_fb, phi_max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn pointwise_values() {
        assert_eq!(f_nofb(0.0), 1.0);
        assert!(f_nofb(PI) < 1e-16);
        assert!((f_nofb(PI / 2.0) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(f_fb(0.0), 1.0);
        assert!((f_fb(PI) - 1.0).abs() < 1e-15);
        assert!((f_fb(PI / 2.0) - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn averaged_values() {
        assert_eq!(f_nofb_ave(0.0), 1.0);
        assert_eq!(f_fb_ave(0.0), 1.0);
        assert!((f_nofb_ave(PI) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((f_fb_ave(PI / 2.0) - 0.75f64.sqrt()).abs() < 1e-15);
        assert!((f_nofb_ave(1e9) - FRAC_1_SQRT_2).abs() < 1e-9);
        assert!((f_fb_ave(1e9) - 0.75f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn continuous_across_the_series_cutoff() {
        let below = SERIES_CUTOFF * (1.0 - 1e-9);
        let above = SERIES_CUTOFF * (1.0 + 1e-9);
        assert!((f_nofb_ave(below) - f_nofb_ave(above)).abs() < 1e-15);
        assert!((f_fb_ave(below) - f_fb_ave(above)).abs() < 1e-15);
    }

    #[test]
    fn concavity_puts_the_model_above_the_true_mean() {
        for k in 1..=40 {
            let r = model_consistency_check(k as f64 * 0.1 * PI);
            assert!(r.gap_nofb() >= -1e-12, "{r:?}");
            assert!(r.gap_fb() >= -1e-12, "{r:?}");
        }
        let r = model_consistency_check(0.0);
        assert!(r.gap_nofb().abs() < 1e-15 && r.gap_fb().abs() < 1e-15);
    }

    // Minimum of sin(x)/x, at the first positive root of tan x = x.
    const SINC_MIN: f64 = -0.21723362821122166;

    #[test]
    fn sinc_minimum_and_undershoot() {
        let (mut lo, mut hi) = (4.4f64, 4.6f64);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if mid.tan() < mid {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo.sin() / lo - SINC_MIN).abs() < 1e-15);
        // Both averaged curves undershoot their large-phi_max limits.
        assert!(f_nofb_ave(lo) < FRAC_1_SQRT_2 - 0.05);
        assert!(f_fb_ave(0.5 * lo) < 0.75f64.sqrt() - 0.02);
    }

    // Root of 1/4 + sin(2x)/(8x) - sin(x)/(2x), found by bisection below.
    const AVERAGE_CROSSOVER: f64 = 2.139182173773113;

    #[test]
    fn crossover_of_the_averaged_curves() {
        let g = |x: f64| f_fb_ave(x).powi(2) - f_nofb_ave(x).powi(2);
        let (mut lo, mut hi) = (1.0, 3.0);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if g(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo - AVERAGE_CROSSOVER).abs() < 1e-12);
    }

    #[test]
    fn grid_spans_the_range() {
        let g = model_grid(4.0 * PI, 9);
        assert_eq!(g.len(), 9);
        assert_eq!(g[0].phi_max, 0.0);
        assert_eq!(g[8].phi_max, 4.0 * PI);
        let past = g.iter().filter(|p| p.phi_max >= AVERAGE_CROSSOVER);
        assert!(past.clone().count() == 7 && past.into_iter().all(|p| p.f_fb_ave >= p.f_nofb_ave));
    }

    proptest! {
        // f_fb^2 - f_nofb^2 = (2c^2 - 1)(c^2 - 1) with c = cos(phi/2): the
        // feedback curve is lower on (0, pi/2) and higher on (pi/2, pi).
        #[test]
        fn pointwise_ordering_changes_at_quarter_turn(phi in 0.0..PI) {
            let c2 = (0.5 * phi).cos().powi(2);
            let diff = f_fb(phi).powi(2) - f_nofb(phi).powi(2);
            prop_assert!((diff - (2.0 * c2 - 1.0) * (c2 - 1.0)).abs() < 1e-14);
            if phi >= PI / 2.0 {
                prop_assert!(f_fb(phi) >= f_nofb(phi) - 1e-15);
            } else {
                prop_assert!(f_fb(phi) <= f_nofb(phi) + 1e-15);
            }
        }

        #[test]
        fn feedback_dominates_on_average_past_crossover(phi_max in AVERAGE_CROSSOVER..100.0f64) {
            prop_assert!(f_fb_ave(phi_max) >= f_nofb_ave(phi_max));
        }

        #[test]
        fn feedback_trails_on_average_before_crossover(phi_max in 1e-3..AVERAGE_CROSSOVER) {
            prop_assert!(f_fb_ave(phi_max) <= f_nofb_ave(phi_max));
        }

        // sin(x)/x bottoms out at SINC_MIN, so the curves dip below their
        // asymptotes: sqrt(1/2 + SINC_MIN/2) and sqrt(3/4 + SINC_MIN/4).
        #[test]
        fn averages_stay_in_range(phi_max in 0.0..1e3f64) {
            let nofb = f_nofb_ave(phi_max);
            let fb = f_fb_ave(phi_max);
            prop_assert!(nofb >= (0.5 + 0.5 * SINC_MIN).sqrt() - 1e-12 && nofb <= 1.0);
            prop_assert!(fb >= (0.75 + 0.25 * SINC_MIN).sqrt() - 1e-12 && fb <= 1.0);
        }
    }
}
