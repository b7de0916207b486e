use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m - m^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("temperature must be positive and finite, got {0}")]
    InvalidTemperature(f64),

    #[error("{name} = {value} is outside [0, 1]")]
    GammaOutOfRange { name: &'static str, value: f64 },

    #[error("time must be non-negative and finite, got {0}")]
    NegativeTime(f64),

    #[error("decay rate {name} must be non-negative and finite, got {value}")]
    NegativeRate { name: &'static str, value: f64 },

    #[error("Kraus set is not complete (max |sum K^dagger K - I| = {deviation:e})")]
    IncompleteKrausSet { deviation: f64 },

    #[error("coherence at ({row}, {col}) breaks the axial sparsity pattern (|entry| = {magnitude:e})")]
    SparsityViolation { row: usize, col: usize, magnitude: f64 },

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("qubit marginal is pure (Bloch z = {bloch_z}); purification tensor is singular")]
    PureReducedState { bloch_z: f64 },

    #[error("purification correlation tensor is numerically singular (det = {det:e})")]
    SingularR { det: f64 },

    #[error("parameter {name} is not finite")]
    NonFiniteParameter { name: &'static str },
}
