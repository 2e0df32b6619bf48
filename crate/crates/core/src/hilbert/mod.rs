//! Composite Hilbert space of four three-level atoms and two cavity modes.
//!
//! Subsystem order is fixed as `(A1, A2, A3, A4, C1, C2)`, atomic levels are
//! ordered `i < g < e` and cavities hold zero or one photon, giving
//! `index = (((a1*3 + a2)*3 + a3)*3 + a4)*4 + n1*2 + n2`.

mod basis;
mod density;
mod operator;
mod state;

pub use basis::{BasisLabel, Level, Subsystem, ATOMS, CAVITIES, DIM};
pub use density::{reduced_density, DensityMatrix};
pub use operator::{embed_atom_op, embed_cavity_op, LinearOperator};
pub use state::{inner, PureState};

pub use num_complex::Complex64 as C64;

/// Complex zero.
pub const ZERO: C64 = C64::new(0.0, 0.0);
/// Complex one.
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Shorthand for a real complex number.
#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Single-atom matrix unit `|to><from|`.
pub fn atom_ket_bra(to: Level, from: Level) -> [[C64; 3]; 3] {
    let mut m = [[ZERO; 3]; 3];
    m[to.digit()][from.digit()] = ONE;
    m
}

/// Cavity annihilation operator on the `{0, 1}` Fock space.
pub fn annihilation() -> [[C64; 2]; 2] {
    [[ZERO, ONE], [ZERO, ZERO]]
}

/// Cavity creation operator on the `{0, 1}` Fock space.
pub fn creation() -> [[C64; 2]; 2] {
    [[ZERO, ZERO], [ONE, ZERO]]
}

/// Photon-number operator on the `{0, 1}` Fock space.
pub fn number() -> [[C64; 2]; 2] {
    [[ZERO, ZERO], [ZERO, ONE]]
}
