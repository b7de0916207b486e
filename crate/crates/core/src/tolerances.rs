//! Numerical thresholds shared across the crate.
//!
//! Everything that compares floating-point results against a threshold
//! reads it from here so the whole pipeline can be audited in one place.

/// Maximum entrywise |m - m^dagger| accepted as Hermitian.
pub const HERMITICITY: f64 = 1e-10;

/// Smallest eigenvalue still accepted as positive semidefinite.
pub const PSD_FLOOR: f64 = -1e-10;

/// |Tr rho - 1| accepted for a density matrix.
pub const TRACE: f64 = 1e-10;

/// Agreement required between a closed form and its oracle.
pub const ORACLE: f64 = 1e-9;

/// Default per-entry tolerance of [`crate::linalg::ComplexMatrix::approx_eq`].
pub const MATRIX_EQ: f64 = 1e-12;

/// Jacobi stops once the off-diagonal Frobenius norm falls below this
/// (scaled by max(1, ||m||_F)).
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-13;

/// Hard cap on Jacobi sweeps before reporting `NoConvergence`.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Below this gap `sinh(r / 2T) / r` is replaced by its limit `1 / 2T`.
pub const DEGENERATE_GAP: f64 = 1e-12;

/// Eigenvalues below this contribute nothing to the von Neumann entropy.
pub const ENTROPY_CUTOFF: f64 = 1e-15;

/// Coherences smaller than this are treated as structurally zero.
pub const SPARSITY: f64 = 1e-12;

/// Negativity values in (-NEGATIVITY_CLAMP, 0) are clamped to zero.
pub const NEGATIVITY_CLAMP: f64 = 1e-10;

/// `1 - a^2` below this marks a pure qubit marginal.
pub const PURE_MARGINAL: f64 = 1e-12;

/// Kraus completeness tolerance.
pub const KRAUS_COMPLETENESS: f64 = 1e-12;

/// Smallest temperature accepted on a sweep grid.
pub const MIN_SWEEP_TEMPERATURE: f64 = 0.01;
