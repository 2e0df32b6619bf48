use super::basis::{Subsystem, DIM};
use super::state::PureState;
use super::{C64, ZERO};
use crate::error::Result;

const FLAG_TOL: f64 = 1e-12;

/// Sparse 324x324 complex matrix in compressed-row form.
///
/// The `hermitian` and `unitary` flags are established numerically when the
/// operator is built and carried through embedding and products where they
/// are preserved.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearOperator {
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
    hermitian: bool,
    unitary: bool,
}

impl LinearOperator {
    pub fn identity() -> Self {
        LinearOperator {
            row_ptr: (0..=DIM).collect(),
            cols: (0..DIM).collect(),
            vals: vec![C64::new(1.0, 0.0); DIM],
            hermitian: true,
            unitary: true,
        }
    }

    /// Builds from `(row, col, value)` entries; duplicates are summed and
    /// exact zeros dropped. Flags are computed from the result.
    pub fn from_triplets(mut entries: Vec<(usize, usize, C64)>) -> Self {
        entries.sort_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, C64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            assert!(r < DIM && c < DIM, "entry ({r}, {c}) out of range");
            match merged.last_mut() {
                Some(last) if (last.0, last.1) == (r, c) => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2 != ZERO);
        let mut op = Self::from_sorted(merged);
        op.refresh_flags();
        op
    }

    /// `entries` must be sorted by `(row, col)` without duplicates.
    fn from_sorted(entries: Vec<(usize, usize, C64)>) -> Self {
        let mut row_ptr = vec![0usize; DIM + 1];
        for &(r, _, _) in &entries {
            row_ptr[r + 1] += 1;
        }
        for i in 0..DIM {
            row_ptr[i + 1] += row_ptr[i];
        }
        LinearOperator {
            row_ptr,
            cols: entries.iter().map(|e| e.1).collect(),
            vals: entries.iter().map(|e| e.2).collect(),
            hermitian: false,
            unitary: false,
        }
    }

    fn refresh_flags(&mut self) {
        self.hermitian = self.max_abs_diff(&self.adjoint_raw()) <= FLAG_TOL;
        self.unitary = self
            .adjoint_raw()
            .mul_raw(self)
            .max_abs_diff(&LinearOperator::identity())
            <= FLAG_TOL;
    }

    #[inline]
    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    #[inline]
    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Iterates stored entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..DIM).flat_map(move |r| {
            (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (r, self.cols[k], self.vals[k]))
        })
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        let span = self.row_ptr[row]..self.row_ptr[row + 1];
        match self.cols[span.clone()].binary_search(&col) {
            Ok(k) => self.vals[span.start + k],
            Err(_) => ZERO,
        }
    }

    /// `y = A x` on raw amplitude slices.
    pub fn apply_into(&self, x: &[C64], y: &mut [C64]) {
        debug_assert_eq!(x.len(), DIM);
        debug_assert_eq!(y.len(), DIM);
        for (r, out) in y.iter_mut().enumerate() {
            let mut acc = ZERO;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *out = acc;
        }
    }

    pub fn apply(&self, psi: &PureState) -> PureState {
        let mut out = PureState::zero();
        self.apply_into(psi.amplitudes(), out.amplitudes_mut());
        out
    }

    /// `<psi|A|psi>`
    pub fn expectation(&self, psi: &PureState) -> C64 {
        let x = psi.amplitudes();
        let mut acc = ZERO;
        for r in 0..DIM {
            let mut row = ZERO;
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                row += self.vals[k] * x[self.cols[k]];
            }
            acc += x[r].conj() * row;
        }
        acc
    }

    fn adjoint_raw(&self) -> LinearOperator {
        let mut entries: Vec<_> = self.entries().map(|(r, c, v)| (c, r, v.conj())).collect();
        entries.sort_by_key(|&(r, c, _)| (r, c));
        LinearOperator {
            hermitian: self.hermitian,
            unitary: self.unitary,
            ..Self::from_sorted(entries)
        }
    }

    pub fn adjoint(&self) -> LinearOperator {
        self.adjoint_raw()
    }

    fn mul_raw(&self, rhs: &LinearOperator) -> LinearOperator {
        let mut row_ptr = Vec::with_capacity(DIM + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        let mut acc = vec![ZERO; DIM];
        let mut touched = vec![false; DIM];
        let mut pattern = Vec::new();
        row_ptr.push(0);
        for r in 0..DIM {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                let (mid, a) = (self.cols[k], self.vals[k]);
                for j in rhs.row_ptr[mid]..rhs.row_ptr[mid + 1] {
                    let c = rhs.cols[j];
                    if !touched[c] {
                        touched[c] = true;
                        pattern.push(c);
                    }
                    acc[c] += a * rhs.vals[j];
                }
            }
            pattern.sort_unstable();
            for &c in &pattern {
                if acc[c] != ZERO {
                    cols.push(c);
                    vals.push(acc[c]);
                }
                acc[c] = ZERO;
                touched[c] = false;
            }
            pattern.clear();
            row_ptr.push(cols.len());
        }
        LinearOperator {
            row_ptr,
            cols,
            vals,
            hermitian: false,
            unitary: false,
        }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &LinearOperator) -> LinearOperator {
        let mut p = self.mul_raw(rhs);
        p.refresh_flags();
        p
    }

    pub fn scale(&self, c: C64) -> LinearOperator {
        LinearOperator::from_triplets(self.entries().map(|(r, col, v)| (r, col, v * c)).collect())
    }

    pub fn add(&self, rhs: &LinearOperator) -> LinearOperator {
        LinearOperator::from_triplets(self.entries().chain(rhs.entries()).collect())
    }

    pub fn max_abs_diff(&self, other: &LinearOperator) -> f64 {
        let mut worst = 0.0f64;
        for (r, c, v) in self.entries() {
            worst = worst.max((v - other.get(r, c)).norm());
        }
        for (r, c, v) in other.entries() {
            worst = worst.max((v - self.get(r, c)).norm());
        }
        worst
    }

    /// Diagonal entries when the operator has no off-diagonal entries.
    pub fn diagonal(&self) -> Option<Vec<C64>> {
        let mut d = vec![ZERO; DIM];
        for (r, c, v) in self.entries() {
            if r != c {
                return None;
            }
            d[r] = v;
        }
        Some(d)
    }
}

fn embed(sub: Subsystem, local: &[C64], d: usize) -> LinearOperator {
    let stride = sub.stride();
    let mut entries = Vec::with_capacity(DIM * d);
    for col in 0..DIM {
        let from = sub.digit_of(col);
        for to in 0..d {
            let v = local[to * d + from];
            if v != ZERO {
                let row = col + to * stride - from * stride;
                entries.push((row, col, v));
            }
        }
    }
    LinearOperator::from_triplets(entries)
}

/// Lifts a 3x3 single-atom matrix (indexed `[to][from]` in `i, g, e` order)
/// onto the composite space; identity on every other factor.
pub fn embed_atom_op(atom: usize, local: &[[C64; 3]; 3]) -> Result<LinearOperator> {
    let sub = Subsystem::atom(atom)?;
    let flat: Vec<C64> = local.iter().flatten().copied().collect();
    Ok(embed(sub, &flat, 3))
}

/// Lifts a 2x2 single-cavity matrix (indexed `[to][from]` in photon-number
/// order) onto the composite space.
pub fn embed_cavity_op(cavity: usize, local: &[[C64; 2]; 2]) -> Result<LinearOperator> {
    let sub = Subsystem::cavity(cavity)?;
    let flat: Vec<C64> = local.iter().flatten().copied().collect();
    Ok(embed(sub, &flat, 2))
}
