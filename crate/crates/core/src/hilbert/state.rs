use std::fmt::Write as _;

use super::basis::{BasisLabel, Subsystem, DIM};
use super::{C64, ZERO};
use crate::error::{Error, Result};

/// Amplitudes below this magnitude are left out of text dumps.
const DUMP_THRESHOLD: f64 = 1e-12;

/// Dense state vector over the 324-dimensional composite basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amps: Vec<C64>,
}

impl PureState {
    pub fn zero() -> Self {
        PureState {
            amps: vec![ZERO; DIM],
        }
    }

    pub fn basis(label: BasisLabel) -> Self {
        let mut s = Self::zero();
        s.amps[label.index()] = C64::new(1.0, 0.0);
        s
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        if amps.len() != DIM {
            return Err(Error::DimensionMismatch {
                expected: DIM,
                found: amps.len(),
            });
        }
        Ok(PureState { amps })
    }

    /// `sum_k c_k |label_k>`; repeated labels accumulate.
    pub fn superposition<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C64, BasisLabel)>,
    {
        let mut s = Self::zero();
        for (c, label) in terms {
            s.amps[label.index()] += c;
        }
        s
    }

    /// Tensor product of per-atom 3-vectors and per-cavity 2-vectors.
    pub fn product(atoms: &[[C64; 3]; 4], cavities: &[[C64; 2]; 2]) -> Self {
        let mut amps = vec![ZERO; DIM];
        for (idx, amp) in amps.iter_mut().enumerate() {
            let mut v = C64::new(1.0, 0.0);
            for (k, local) in atoms.iter().enumerate() {
                v *= local[Subsystem::ALL[k].digit_of(idx)];
            }
            v *= cavities[0][Subsystem::C1.digit_of(idx)];
            v *= cavities[1][Subsystem::C2.digit_of(idx)];
            *amp = v;
        }
        PureState { amps }
    }

    #[inline]
    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    #[inline]
    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn amplitude(&self, label: BasisLabel) -> C64 {
        self.amps[label.index()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Rescales to unit norm and returns the previous norm. A zero vector is
    /// left untouched.
    pub fn normalize(&mut self) -> f64 {
        let n = self.norm();
        if n > 0.0 {
            let inv = 1.0 / n;
            self.amps.iter_mut().for_each(|a| *a *= inv);
        }
        n
    }

    pub fn scale(&mut self, c: C64) {
        self.amps.iter_mut().for_each(|a| *a *= c);
    }

    pub fn scaled(mut self, c: C64) -> Self {
        self.scale(c);
        self
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: C64, other: &PureState) {
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a += c * b;
        }
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        inner(self, other)
    }

    /// Largest entrywise deviation from `other` after removing one global
    /// phase, fixed on the largest-magnitude amplitude of `other`.
    pub fn distance_up_to_phase(&self, other: &PureState) -> f64 {
        let (k, pivot) = other
            .amps
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
            .expect("nonempty state");
        let phase = if pivot.norm() > 0.0 && self.amps[k].norm() > 0.0 {
            let r = self.amps[k] / pivot;
            r / r.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - phase * b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &PureState) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Nonzero amplitudes in index order, one per line as
    /// `a1 a2 a3 a4 n1 n2 re im`.
    pub fn dump_text(&self) -> String {
        let mut out = String::new();
        for (idx, a) in self.amps.iter().enumerate() {
            if a.norm() < DUMP_THRESHOLD {
                continue;
            }
            let label = BasisLabel::from_index(idx).expect("index in range");
            let _ = writeln!(out, "{label} {} {}", a.re, a.im);
        }
        out
    }
}

/// `<psi|chi>`, conjugate-linear in the first argument.
pub fn inner(psi: &PureState, chi: &PureState) -> C64 {
    psi.amps
        .iter()
        .zip(&chi.amps)
        .map(|(a, b)| a.conj() * b)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::Level::*;
    use crate::hilbert::{re, ONE};

    fn l(a: [crate::hilbert::Level; 4], n: [u8; 2]) -> BasisLabel {
        BasisLabel::new(a, n)
    }

    #[test]
    fn inner_with_self_is_norm_squared() {
        let s = PureState::superposition([
            (C64::new(0.3, 0.4), l([E, I, I, G], [0, 0])),
            (C64::new(-0.1, 0.2), l([G, I, I, G], [1, 0])),
        ]);
        let ip = s.inner(&s);
        assert!((ip.re - s.norm_sqr()).abs() < 1e-15);
        assert_eq!(ip.im, 0.0);
    }

    #[test]
    fn distinct_basis_states_are_orthogonal() {
        let a = PureState::basis(l([E, I, I, G], [0, 0]));
        let b = PureState::basis(l([G, I, I, G], [1, 0]));
        assert_eq!(inner(&a, &b), ZERO);
    }

    #[test]
    fn swapped_qubit_overlap() {
        // alpha|e,0> + beta|g,1> against beta|e,0> + alpha|g,1>: 2 alpha beta
        let (a, b) = (0.7f64.sqrt(), 0.3f64.sqrt());
        let e0 = l([E, I, I, G], [0, 0]);
        let g1 = l([G, I, I, G], [1, 0]);
        let psi = PureState::superposition([(re(a), e0), (re(b), g1)]);
        let chi = PureState::superposition([(re(b), e0), (re(a), g1)]);
        let ip = inner(&psi, &chi);
        assert!((ip.re - 2.0 * 0.21f64.sqrt()).abs() < 1e-15);
        assert!((ip.re - 0.9165).abs() < 1e-4);
    }

    #[test]
    fn inner_is_conjugate_linear_in_first_argument() {
        let a = PureState::basis(l([E, I, I, G], [0, 0]));
        let c = C64::new(0.0, 2.0);
        assert_eq!(inner(&a.clone().scaled(c), &a), c.conj());
        assert_eq!(inner(&a, &a.clone().scaled(c)), c);
    }

    #[test]
    fn product_state_amplitudes_factorize() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = [re(h), re(h), ZERO];
        let e = [ZERO, ZERO, ONE];
        let g = [ZERO, ONE, ZERO];
        let vac = [ONE, ZERO];
        let s = PureState::product(&[e, plus, plus, g], &[vac, vac]);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
        assert!((s.amplitude(l([E, G, I, G], [0, 0])).re - 0.5).abs() < 1e-15);
        assert_eq!(s.amplitude(l([E, G, I, G], [1, 0])), ZERO);
    }

    #[test]
    fn phase_distance_ignores_global_phase() {
        let s = PureState::superposition([
            (re(0.6), l([E, I, I, G], [0, 0])),
            (re(0.8), l([G, I, I, G], [1, 0])),
        ]);
        let rotated = s.clone().scaled(C64::from_polar(1.0, 1.234));
        assert!(rotated.distance_up_to_phase(&s) < 1e-15);
        assert!(rotated.max_abs_diff(&s) > 0.1);
    }

    #[test]
    fn dump_lists_nonzero_amplitudes_in_index_order() {
        let s = PureState::superposition([
            (re(-0.5), l([G, I, I, G], [1, 0])),
            (re(0.25), l([E, I, I, G], [0, 0])),
            (re(1e-14), l([I, I, I, I], [0, 0])),
        ]);
        assert_eq!(s.dump_text(), "g i i g 1 0 -0.5 0\ne i i g 0 0 0.25 0\n");
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(PureState::from_amplitudes(vec![ZERO; 3]).is_err());
    }
}
