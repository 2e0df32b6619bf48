use super::basis::{Subsystem, DIM};
use super::state::PureState;
use super::{C64, ZERO};
use crate::error::{Error, Result};

/// Density matrix on a subset of factors, indexed mixed-radix in the order
/// the factors were requested.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    subsystems: Vec<Subsystem>,
    dim: usize,
    data: Vec<C64>,
}

impl DensityMatrix {
    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|k| self.get(k, k)).sum()
    }

    /// `Tr(rho^2)`
    pub fn purity(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum()
    }

    /// `<v|rho|v>` for a vector on the kept factors.
    pub fn expectation(&self, v: &[C64]) -> C64 {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        let mut acc = ZERO;
        for r in 0..self.dim {
            let mut row = ZERO;
            for c in 0..self.dim {
                row += self.get(r, c) * v[c];
            }
            acc += v[r].conj() * row;
        }
        acc
    }

    /// Row-major copy of the matrix entries.
    pub fn to_rows(&self) -> Vec<Vec<C64>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn max_abs_diff_from_projector(&self, v: &[C64]) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                worst = worst.max((self.get(r, c) - v[r] * v[c].conj()).norm());
            }
        }
        worst
    }
}

/// Traces out every factor not listed in `keep`.
pub fn reduced_density(psi: &PureState, keep: &[Subsystem]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    for (k, s) in keep.iter().enumerate() {
        if keep[..k].contains(s) {
            return Err(Error::DuplicateSubsystem(s.name()));
        }
    }
    let env: Vec<Subsystem> = Subsystem::ALL
        .iter()
        .copied()
        .filter(|s| !keep.contains(s))
        .collect();
    let dim: usize = keep.iter().map(|s| s.dim()).product();
    let env_dim = DIM / dim;

    // Amplitudes reshaped as [env][kept].
    let mut m = vec![ZERO; DIM];
    for (idx, a) in psi.amplitudes().iter().enumerate() {
        let k = keep.iter().fold(0, |acc, s| acc * s.dim() + s.digit_of(idx));
        let e = env.iter().fold(0, |acc, s| acc * s.dim() + s.digit_of(idx));
        m[e * dim + k] = *a;
    }
    let mut data = vec![ZERO; dim * dim];
    for e in 0..env_dim {
        let row = &m[e * dim..(e + 1) * dim];
        for r in 0..dim {
            if row[r] == ZERO {
                continue;
            }
            for c in 0..dim {
                data[r * dim + c] += row[r] * row[c].conj();
            }
        }
    }
    Ok(DensityMatrix {
        subsystems: keep.to_vec(),
        dim,
        data,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::Level::*;
    use crate::hilbert::{re, BasisLabel, ONE};
    use proptest::prelude::*;

    #[test]
    fn empty_keep_set_is_rejected() {
        let psi = PureState::basis(BasisLabel::new([I, I, I, I], [0, 0]));
        assert!(matches!(
            reduced_density(&psi, &[]),
            Err(Error::EmptyKeepSet)
        ));
        assert!(reduced_density(&psi, &[Subsystem::A1, Subsystem::A1]).is_err());
    }

    #[test]
    fn product_state_reduces_to_projector() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let a1 = [re(0.6), ZERO, C64::new(0.0, 0.8)];
        let c2 = [re(h), re(-h)];
        let psi = PureState::product(
            &[a1, [ONE, ZERO, ZERO], [ZERO, ONE, ZERO], [ZERO, ONE, ZERO]],
            &[[ONE, ZERO], c2],
        );
        let rho = reduced_density(&psi, &[Subsystem::C2, Subsystem::A1]).unwrap();
        assert_eq!(rho.dim(), 6);
        let v: Vec<C64> = c2
            .iter()
            .flat_map(|x| a1.iter().map(move |y| x * y))
            .collect();
        assert!(rho.max_abs_diff_from_projector(&v) < 1e-15);
        assert!((rho.purity() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn keep_order_sets_index_order() {
        let psi = PureState::basis(BasisLabel::new([I, I, I, E], [1, 0]));
        let rho = reduced_density(&psi, &[Subsystem::C1, Subsystem::A4]).unwrap();
        // C1 = 1, A4 = e -> 1*3 + 2
        assert_eq!(rho.get(5, 5), ONE);
        let rho = reduced_density(&psi, &[Subsystem::A4, Subsystem::C1]).unwrap();
        // A4 = e, C1 = 1 -> 2*2 + 1
        assert_eq!(rho.get(5, 5), ONE);
    }

    fn cplx() -> impl Strategy<Value = C64> {
        (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(r, i)| C64::new(r, i))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn trace_equals_norm_squared(
            amps in proptest::collection::vec(cplx(), DIM),
            mask in 1usize..64,
        ) {
            let psi = PureState::from_amplitudes(amps).unwrap();
            let keep: Vec<Subsystem> = Subsystem::ALL
                .iter()
                .copied()
                .filter(|s| mask & (1 << s.position()) != 0)
                .collect();
            let rho = reduced_density(&psi, &keep).unwrap();
            let tr = rho.trace();
            prop_assert!((tr.re - psi.norm_sqr()).abs() < 1e-10 * psi.norm_sqr().max(1.0));
            prop_assert!(tr.im.abs() < 1e-10);
        }
    }
}
