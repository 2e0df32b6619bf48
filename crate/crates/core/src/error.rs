use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("atom index {0} out of range (expected 1..=4)")]
    InvalidAtom(usize),

    #[error("cavity index {0} out of range (expected 1..=2)")]
    InvalidCavity(usize),

    #[error("reduced density matrix needs at least one kept subsystem")]
    EmptyKeepSet,

    #[error("subsystem {0} listed twice in keep set")]
    DuplicateSubsystem(&'static str),

    #[error("state has {found} amplitudes, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("only resonant pulses are supported, got detuning {0}")]
    UnsupportedDetuning(f64),

    #[error("envelope pulse duration must be positive, got {0}")]
    NonPositiveDuration(f64),

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("principal quantum number {0} not supported (expected 49, 50 or 51)")]
    UnsupportedPrincipalNumber(u32),

    #[error("lifetime {name} must be positive or infinite, got {value}")]
    InvalidLifetime { name: &'static str, value: f64 },

    #[error("qubit amplitudes not normalized: |alpha|^2 + |beta|^2 = {0}")]
    NotNormalized(f64),

    #[error("malformed schedule: {0}")]
    MalformedSchedule(String),

    #[error("ensemble needs at least one trajectory")]
    EmptyEnsemble,

    #[error("decay generator is not diagonal in the product basis")]
    NonDiagonalDecay,

    #[error("config: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
