use std::fmt;

use crate::error::{Error, Result};

pub const ATOMS: usize = 4;
pub const CAVITIES: usize = 2;
/// `3^4 * 2^2`
pub const DIM: usize = 324;

/// Circular Rydberg level, in increasing energy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    I,
    G,
    E,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::I, Level::G, Level::E];

    #[inline]
    pub fn digit(self) -> usize {
        self as usize
    }

    pub fn from_digit(d: usize) -> Option<Level> {
        Level::ALL.get(d).copied()
    }

    pub fn symbol(self) -> char {
        match self {
            Level::I => 'i',
            Level::G => 'g',
            Level::E => 'e',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subsystem {
    A1,
    A2,
    A3,
    A4,
    C1,
    C2,
}

impl Subsystem {
    pub const ALL: [Subsystem; 6] = [
        Subsystem::A1,
        Subsystem::A2,
        Subsystem::A3,
        Subsystem::A4,
        Subsystem::C1,
        Subsystem::C2,
    ];

    /// Atom by 1-based index.
    pub fn atom(k: usize) -> Result<Subsystem> {
        match k {
            1 => Ok(Subsystem::A1),
            2 => Ok(Subsystem::A2),
            3 => Ok(Subsystem::A3),
            4 => Ok(Subsystem::A4),
            _ => Err(Error::InvalidAtom(k)),
        }
    }

    /// Cavity by 1-based index.
    pub fn cavity(k: usize) -> Result<Subsystem> {
        match k {
            1 => Ok(Subsystem::C1),
            2 => Ok(Subsystem::C2),
            _ => Err(Error::InvalidCavity(k)),
        }
    }

    /// Position in the fixed subsystem order.
    #[inline]
    pub fn position(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn is_atom(self) -> bool {
        self.position() < ATOMS
    }

    #[inline]
    pub fn dim(self) -> usize {
        if self.is_atom() {
            3
        } else {
            2
        }
    }

    /// Mixed-radix weight of this factor in the flat index.
    #[inline]
    pub fn stride(self) -> usize {
        match self {
            Subsystem::A1 => 108,
            Subsystem::A2 => 36,
            Subsystem::A3 => 12,
            Subsystem::A4 => 4,
            Subsystem::C1 => 2,
            Subsystem::C2 => 1,
        }
    }

    /// Local digit of `index` on this factor.
    #[inline]
    pub fn digit_of(self, index: usize) -> usize {
        (index / self.stride()) % self.dim()
    }

    pub fn name(self) -> &'static str {
        match self {
            Subsystem::A1 => "A1",
            Subsystem::A2 => "A2",
            Subsystem::A3 => "A3",
            Subsystem::A4 => "A4",
            Subsystem::C1 => "C1",
            Subsystem::C2 => "C2",
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A product basis state `|a1, a2, a3, a4, n1, n2>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    atoms: [Level; ATOMS],
    photons: [u8; CAVITIES],
}

impl BasisLabel {
    /// Panics if a photon number exceeds one.
    pub fn new(atoms: [Level; ATOMS], photons: [u8; CAVITIES]) -> Self {
        assert!(
            photons.iter().all(|&n| n <= 1),
            "cavity Fock space is truncated to {{0, 1}}, got {photons:?}"
        );
        BasisLabel { atoms, photons }
    }

    pub fn atoms(&self) -> [Level; ATOMS] {
        self.atoms
    }

    pub fn photons(&self) -> [u8; CAVITIES] {
        self.photons
    }

    pub fn level(&self, atom: usize) -> Level {
        self.atoms[atom - 1]
    }

    pub fn photon(&self, cavity: usize) -> u8 {
        self.photons[cavity - 1]
    }

    pub fn index(&self) -> usize {
        let a = self
            .atoms
            .iter()
            .fold(0usize, |acc, l| acc * 3 + l.digit());
        a * 4 + self.photons[0] as usize * 2 + self.photons[1] as usize
    }

    pub fn from_index(index: usize) -> Option<Self> {
        if index >= DIM {
            return None;
        }
        let mut atoms = [Level::I; ATOMS];
        for (k, slot) in atoms.iter_mut().enumerate() {
            *slot = Level::from_digit(Subsystem::ALL[k].digit_of(index))?;
        }
        let photons = [
            Subsystem::C1.digit_of(index) as u8,
            Subsystem::C2.digit_of(index) as u8,
        ];
        Some(BasisLabel { atoms, photons })
    }

    /// All 324 labels in index order.
    pub fn all() -> impl Iterator<Item = BasisLabel> {
        (0..DIM).map(|i| BasisLabel::from_index(i).expect("index in range"))
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.atoms {
            write!(f, "{} ", l.symbol())?;
        }
        write!(f, "{} {}", self.photons[0], self.photons[1])
    }
}
