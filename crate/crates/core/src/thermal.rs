//! Gibbs states of the axially symmetric Hamiltonian.
//!
//! [`gibbs_closed_form`] is the production path: it assembles the eight
//! nonzero matrix elements directly from the closed-form symbols.
//! [`gibbs_oracle`] exponentiates the Hamiltonian numerically and is the
//! reference the closed form is tested against.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, hermitian_exp, ComplexMatrix, JOINT_DIM};
use crate::model::{build_hamiltonian, closed_form_symbols, ModelParams};
use crate::tolerances;

/// Zero-based positions of the two coherences allowed by the axial symmetry.
pub const COHERENCE_24: (usize, usize) = (1, 3);
pub const COHERENCE_35: (usize, usize) = (2, 4);

/// Temperature in energy units (k_B = 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(t: f64) -> Result<Self> {
        if t.is_finite() && t > 0.0 {
            Ok(Self(t))
        } else {
            Err(Error::InvalidTemperature(t))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A 6x6 density matrix on qubit ⊗ qutrit.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix6(ComplexMatrix);

impl DensityMatrix6 {
    /// Validates dimension, Hermiticity, unit trace and positivity.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let rho = Self::from_matrix_unchecked(m)?;
        rho.validate()?;
        Ok(rho)
    }

    /// Only the dimension is checked; used on paths whose construction
    /// guarantees the remaining invariants.
    pub(crate) fn from_matrix_unchecked(m: ComplexMatrix) -> Result<Self> {
        if m.rows() != JOINT_DIM || m.cols() != JOINT_DIM {
            return Err(Error::DimensionMismatch {
                expected: "6x6".into(),
                found: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        Ok(Self(m))
    }

    pub fn validate(&self) -> Result<()> {
        let deviation = self.0.hermiticity_deviation();
        if deviation > tolerances::HERMITICITY {
            return Err(Error::NotDensityMatrix(format!("not Hermitian (deviation {deviation:e})")));
        }
        let trace = self.0.trace();
        if (trace.re - 1.0).abs() > tolerances::TRACE || trace.im.abs() > tolerances::TRACE {
            return Err(Error::NotDensityMatrix(format!("trace {trace} != 1")));
        }
        let min = hermitian_eigenvalues(&self.0)?.min();
        if min < tolerances::PSD_FLOOR {
            return Err(Error::NotDensityMatrix(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }

    /// Diagonal state with the given populations; they must sum to one.
    pub fn diagonal(populations: [f64; 6]) -> Result<Self> {
        Self::new(ComplexMatrix::from_diagonal(&populations))
    }

    /// Axially sparse state from its populations and the two coherences
    /// rho_24 and rho_35 (one-based labels).
    pub fn axial(populations: [f64; 6], rho24: Complex64, rho35: Complex64) -> Result<Self> {
        let mut m = ComplexMatrix::from_diagonal(&populations);
        set_coherence(&mut m, COHERENCE_24, rho24);
        set_coherence(&mut m, COHERENCE_35, rho35);
        Self::new(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn population(&self, i: usize) -> f64 {
        self.0[(i, i)].re
    }

    pub fn populations(&self) -> [f64; 6] {
        std::array::from_fn(|i| self.population(i))
    }

    pub fn rho24(&self) -> Complex64 {
        self.0[COHERENCE_24]
    }

    pub fn rho35(&self) -> Complex64 {
        self.0[COHERENCE_35]
    }

    /// Tr(rho^2).
    pub fn purity(&self) -> f64 {
        (&self.0 * &self.0).trace().re
    }

    /// Fails on the first off-diagonal entry outside (2,4), (3,5) and
    /// their conjugates whose modulus exceeds `tolerances::SPARSITY`.
    pub fn check_axial_sparsity(&self) -> Result<()> {
        for i in 0..JOINT_DIM {
            for j in 0..JOINT_DIM {
                if i == j || is_axial_coherence(i, j) {
                    continue;
                }
                let magnitude = self.0[(i, j)].norm();
                if magnitude > tolerances::SPARSITY {
                    return Err(Error::SparsityViolation { row: i, col: j, magnitude });
                }
            }
        }
        Ok(())
    }

    pub fn is_axially_sparse(&self) -> bool {
        self.check_axial_sparsity().is_ok()
    }
}

pub(crate) fn is_axial_coherence(i: usize, j: usize) -> bool {
    let pair = (i.min(j), i.max(j));
    pair == COHERENCE_24 || pair == COHERENCE_35
}

pub(crate) fn set_coherence(m: &mut ComplexMatrix, (i, j): (usize, usize), value: Complex64) {
    m[(i, j)] = value;
    m[(j, i)] = value.conj();
}

/// Boltzmann weights of one coupled pair, all relative to `e_min`.
struct PairWeights {
    /// cosh(r / 2T) e^{-(c - e_min)/T}
    cosh: f64,
    /// sinh(r / 2T) / r · e^{-(c - e_min)/T}, with the r -> 0 limit 1/(2T).
    sinh_over_r: f64,
}

fn pair_weights(centre: f64, gap: f64, e_min: f64, t: f64) -> PairWeights {
    let lower = (-(centre - 0.5 * gap - e_min) / t).exp();
    let upper = (-(centre + 0.5 * gap - e_min) / t).exp();
    let mid = (-(centre - e_min) / t).exp();
    let x = gap / (2.0 * t);
    let sinh_over_r = if gap < tolerances::DEGENERATE_GAP {
        mid / (2.0 * t)
    } else if x < 1.0 {
        x.sinh() / gap * mid
    } else {
        0.5 * (lower - upper) / gap
    };
    PairWeights {
        cosh: 0.5 * (lower + upper),
        sinh_over_r,
    }
}

/// Gibbs state assembled from the closed-form matrix elements.
pub fn gibbs_closed_form(p: &ModelParams, t: Temperature) -> Result<DensityMatrix6> {
    p.validate()?;
    let t = t.value();
    let s = closed_form_symbols(p);
    let c1 = 0.5 * (s.h1 + s.h3);
    let c2 = 0.5 * (s.h2 + s.h4);
    let e_min = [s.e1, s.e6, c1 - 0.5 * s.r1, c2 - 0.5 * s.r2]
        .into_iter()
        .fold(f64::INFINITY, f64::min);

    let w1 = (-(s.e1 - e_min) / t).exp();
    let w6 = (-(s.e6 - e_min) / t).exp();
    let pair1 = pair_weights(c1, s.r1, e_min, t);
    let pair2 = pair_weights(c2, s.r2, e_min, t);
    let z = w1 + w6 + 2.0 * pair1.cosh + 2.0 * pair2.cosh;

    let rho11 = w1 / z;
    let rho66 = w6 / z;
    let rho22 = (pair1.cosh + (s.h3 - s.h1) * pair1.sinh_over_r) / z;
    let rho44 = (pair1.cosh + (s.h1 - s.h3) * pair1.sinh_over_r) / z;
    let rho33 = (pair2.cosh + (s.h4 - s.h2) * pair2.sinh_over_r) / z;
    let rho55 = (pair2.cosh + (s.h2 - s.h4) * pair2.sinh_over_r) / z;
    let rho24 = -2.0 * s.g1 * pair1.sinh_over_r / z;
    let rho35 = -2.0 * s.g2 * pair2.sinh_over_r / z;

    let mut m = ComplexMatrix::from_diagonal(&[rho11, rho22, rho33, rho44, rho55, rho66]);
    set_coherence(&mut m, COHERENCE_24, rho24);
    set_coherence(&mut m, COHERENCE_35, rho35);
    DensityMatrix6::from_matrix_unchecked(m)
}

/// Gibbs state by numerical exponentiation of the Hamiltonian.
pub fn gibbs_oracle(p: &ModelParams, t: Temperature) -> Result<DensityMatrix6> {
    let h = build_hamiltonian(p)?;
    // Shift by the ground energy so exp(-H/T) cannot overflow.
    let ground = hermitian_eigenvalues(&h)?.min();
    let shifted = &h - &ComplexMatrix::identity(JOINT_DIM).scale_real(ground);
    let unnormalized = hermitian_exp(&shifted, -1.0 / t.value())?;
    let z = unnormalized.trace().re;
    DensityMatrix6::from_matrix_unchecked(unnormalized.scale_real(1.0 / z))
}
