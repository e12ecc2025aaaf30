use thiserror::Error;

/// Errors produced by state constructors, measurements, oracles and
/// estimators.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("need at least one mode")]
    NoModes,
    #[error("mode index {mode} out of range for {modes} modes")]
    ModeOutOfRange { mode: usize, modes: usize },
    #[error("mode indices must be distinct (got {0} twice)")]
    DuplicateMode(usize),
    #[error("parameter `{name}` must be finite (got {value})")]
    NonFinite { name: &'static str, value: f64 },
    #[error("measurement resolution sigma^2 must be positive (got {0})")]
    InvalidResolution(f64),
    #[error("covariance matrix is not symmetric (max asymmetry {0:.3e})")]
    AsymmetricCovariance(f64),
    #[error("state violates the uncertainty bound: min symplectic eigenvalue {0} < 1/2")]
    InvalidState(f64),
    #[error("matrix is not symplectic (max |S Omega S^T - Omega| = {0:.3e})")]
    NotSymplectic(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operation requires a two-mode state (state has {0} modes)")]
    NotTwoMode(usize),
    #[error("Fock cutoff {got} too small (need at least {need})")]
    CutoffTooSmall { got: usize, need: usize },
    #[error("operator is not hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),
    #[error("Fock state tail mass {mass:.3e} exceeds tolerance {tol:.3e}")]
    ExcessiveTailMass { mass: f64, tol: f64 },
    #[error("transfer matrix is not sub-unitary (singular value {0})")]
    NotSubUnitary(f64),
    #[error("instance too large: {0}")]
    SizeLimit(String),
    #[error("column {column}: got {got} conditioned samples, need {need}")]
    InsufficientSamples {
        column: usize,
        got: usize,
        need: usize,
    },
    #[error("column {column} ill-conditioned: relative eigenvalue gap {gap:.3e}")]
    IllConditionedColumn { column: usize, gap: f64 },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
