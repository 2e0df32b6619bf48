use super::schedule::Sign;
use crate::error::Result;
use crate::hilbert::{PureState, Subsystem, DIM, ZERO};

/// Probability of `|+> = (|i> + |g>)/sqrt 2` for `atom`, relative to the
/// current norm.
pub fn plus_probability(psi: &PureState, atom: usize) -> Result<f64> {
    let sub = Subsystem::atom(atom)?;
    let stride = sub.stride();
    let amps = psi.amplitudes();
    let p: f64 = (0..DIM)
        .filter(|&i| sub.digit_of(i) == 0)
        .map(|i| 0.5 * (amps[i] + amps[i + stride]).norm_sqr())
        .sum();
    Ok(p / psi.norm_sqr())
}

/// Applies the projector for `sign` without renormalizing. `Minus` is the
/// complement of `|+><+|`, so it keeps the `|e>` component too.
pub fn project_sign(psi: &mut PureState, atom: usize, sign: Sign) -> Result<()> {
    let sub = Subsystem::atom(atom)?;
    let stride = sub.stride();
    let amps = psi.amplitudes_mut();
    for idx in 0..DIM {
        match sub.digit_of(idx) {
            0 => {
                let (a, b) = (amps[idx], amps[idx + stride]);
                let mean = (a + b) * 0.5;
                match sign {
                    Sign::Plus => {
                        amps[idx] = mean;
                        amps[idx + stride] = mean;
                    }
                    Sign::Minus => {
                        amps[idx] = a - mean;
                        amps[idx + stride] = b - mean;
                    }
                }
            }
            2 if sign == Sign::Plus => amps[idx] = ZERO,
            _ => {}
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::Level::*;
    use crate::hilbert::{re, BasisLabel, C64};

    fn ket(a2: crate::hilbert::Level) -> PureState {
        PureState::basis(BasisLabel::new([G, a2, I, G], [0, 0]))
    }

    #[test]
    fn projectors_are_complementary() {
        let mut psi = ket(I);
        psi.axpy(re(0.3), &ket(G));
        psi.axpy(C64::new(0.1, 0.4), &ket(E));
        psi.normalize();
        let p = plus_probability(&psi, 2).unwrap();
        let mut plus = psi.clone();
        project_sign(&mut plus, 2, Sign::Plus).unwrap();
        let mut minus = psi.clone();
        project_sign(&mut minus, 2, Sign::Minus).unwrap();
        assert!((plus.norm_sqr() - p).abs() < 1e-14);
        assert!((plus.norm_sqr() + minus.norm_sqr() - 1.0).abs() < 1e-14);
        let mut sum = plus.clone();
        sum.axpy(re(1.0), &minus);
        assert!(sum.max_abs_diff(&psi) < 1e-15);
        let mut again = plus.clone();
        project_sign(&mut again, 2, Sign::Plus).unwrap();
        assert!(again.max_abs_diff(&plus) < 1e-15);
    }
}
