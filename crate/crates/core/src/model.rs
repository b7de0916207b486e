//! The ten-coupling axially symmetric spin-1/2 ⊗ spin-1 Hamiltonian.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, JOINT_DIM, QUBIT_DIM, QUTRIT_DIM};
use crate::tolerances;

/// Couplings of the Hamiltonian, all in the same energy unit as the
/// temperature (k_B = 1).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    /// Field on the qubit.
    pub b1: f64,
    /// Field on the qutrit.
    pub b2: f64,
    /// Transverse exchange.
    pub j: f64,
    /// Longitudinal exchange.
    pub jz: f64,
    /// Uniaxial single-ion anisotropy.
    pub k: f64,
    /// Planar single-ion anisotropy.
    pub k1: f64,
    /// Two-ion uniaxial anisotropy.
    pub k2: f64,
    /// z-component of the Dzyaloshinsky-Moriya vector.
    pub dz: f64,
    /// Symmetric higher-order coupling.
    pub gamma: f64,
    /// Antisymmetric higher-order coupling.
    pub lambda: f64,
}

impl ModelParams {
    /// Reference couplings used by the bundled figure specs.
    pub const REFERENCE: ModelParams = ModelParams {
        b1: 0.3,
        b2: -0.7,
        j: 0.0,
        jz: 1.0,
        k: 0.2,
        k1: -0.1,
        k2: 0.22,
        dz: 0.32,
        gamma: -0.87,
        lambda: 0.31,
    };

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("b1", self.b1),
            ("b2", self.b2),
            ("j", self.j),
            ("jz", self.jz),
            ("k", self.k),
            ("k1", self.k1),
            ("k2", self.k2),
            ("dz", self.dz),
            ("gamma", self.gamma),
            ("lambda", self.lambda),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::NonFiniteParameter { name });
            }
        }
        Ok(())
    }
}

/// Spin-1/2 operators `s_i = sigma_i / 2` and spin-1 operators `S_i`,
/// both in the S_z eigenbasis ordered from the highest projection down.
#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub sx: ComplexMatrix,
    pub sy: ComplexMatrix,
    pub sz: ComplexMatrix,
    pub big_sx: ComplexMatrix,
    pub big_sy: ComplexMatrix,
    pub big_sz: ComplexMatrix,
}

pub fn build_spin_operators() -> SpinOperators {
    let c = Complex64::new;
    let z = c(0.0, 0.0);
    let half = 0.5;
    let sx = ComplexMatrix::from_rows(&[vec![z, c(half, 0.0)], vec![c(half, 0.0), z]]).unwrap();
    let sy = ComplexMatrix::from_rows(&[vec![z, c(0.0, -half)], vec![c(0.0, half), z]]).unwrap();
    let sz = ComplexMatrix::from_diagonal(&[half, -half]);

    let a = 1.0 / SQRT_2;
    let big_sx = ComplexMatrix::from_rows(&[
        vec![z, c(a, 0.0), z],
        vec![c(a, 0.0), z, c(a, 0.0)],
        vec![z, c(a, 0.0), z],
    ])
    .unwrap();
    let big_sy = ComplexMatrix::from_rows(&[
        vec![z, c(0.0, -a), z],
        vec![c(0.0, a), z, c(0.0, -a)],
        vec![z, c(0.0, a), z],
    ])
    .unwrap();
    let big_sz = ComplexMatrix::from_diagonal(&[1.0, 0.0, -1.0]);

    SpinOperators {
        sx,
        sy,
        sz,
        big_sx,
        big_sy,
        big_sz,
    }
}

/// Total `s_z ⊗ I + I ⊗ S_z`, the generator of the axial symmetry.
pub fn total_sz() -> ComplexMatrix {
    let ops = build_spin_operators();
    let i2 = ComplexMatrix::identity(QUBIT_DIM);
    let i3 = ComplexMatrix::identity(QUTRIT_DIM);
    &ops.sz.kron(&i3) + &i2.kron(&ops.big_sz)
}

/// Assembles the Hamiltonian term by term from the spin operators.
pub fn build_hamiltonian(p: &ModelParams) -> Result<ComplexMatrix> {
    p.validate()?;
    let ops = build_spin_operators();
    let i2 = ComplexMatrix::identity(QUBIT_DIM);
    let i3 = ComplexMatrix::identity(QUTRIT_DIM);
    let (sx, sy, sz) = (&ops.sx, &ops.sy, &ops.sz);
    let (bx, by, bz) = (&ops.big_sx, &ops.big_sy, &ops.big_sz);

    let bx2 = bx * bx;
    let by2 = by * by;
    let bz2 = bz * bz;
    let yz = by.anticommutator(bz);
    let xz = bx.anticommutator(bz);

    let terms: [(f64, ComplexMatrix); 12] = [
        (p.b1, sz.kron(&i3)),
        (p.b2, i2.kron(bz)),
        (p.j, &sx.kron(bx) + &sy.kron(by)),
        (p.jz, sz.kron(bz)),
        (p.k, i2.kron(&bz2)),
        (p.k1, i2.kron(&(&bx2 + &by2))),
        (p.k2, sz.kron(&bz2)),
        (p.gamma, sy.kron(&yz)),
        (p.dz, &sx.kron(by) - &sy.kron(bx)),
        (p.gamma, sx.kron(&xz)),
        (p.lambda, sx.kron(&yz)),
        (-p.lambda, sy.kron(&xz)),
    ];

    let mut h = ComplexMatrix::zeros(JOINT_DIM, JOINT_DIM);
    for (coefficient, operator) in &terms {
        h = &h + &operator.scale_real(*coefficient);
    }

    let deviation = h.hermiticity_deviation();
    if deviation > tolerances::HERMITICITY {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(h)
}

/// Auxiliary quantities that diagonalize the Hamiltonian in closed form.
///
/// The two coupled pairs are (|+1/2, 0>, |-1/2, +1>) with diagonal
/// energies (h1, h3) and coupling g1, and (|+1/2, -1>, |-1/2, 0>) with
/// (h2, h4) and g2. `h2` carries the upper signs of the joint
/// `±B1/2 ∓ B2 - Jz/2 + K + K1 ± K2/2` expression and sits on
/// |+1/2, -1>; `h3` carries the lower signs and sits on |-1/2, +1>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormSymbols {
    pub e1: f64,
    pub e6: f64,
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub h4: f64,
    pub g1: Complex64,
    pub g2: Complex64,
    pub r1: f64,
    pub r2: f64,
}

impl ClosedFormSymbols {
    /// Six eigenvalues of the Hamiltonian, ascending.
    pub fn energies(&self) -> [f64; 6] {
        let c1 = 0.5 * (self.h1 + self.h3);
        let c2 = 0.5 * (self.h2 + self.h4);
        let mut e = [
            self.e1,
            self.e6,
            c1 - 0.5 * self.r1,
            c1 + 0.5 * self.r1,
            c2 - 0.5 * self.r2,
            c2 + 0.5 * self.r2,
        ];
        e.sort_by(f64::total_cmp);
        e
    }
}

pub fn closed_form_symbols(p: &ModelParams) -> ClosedFormSymbols {
    let base = 0.5 * p.jz + p.k + p.k1;
    let zeeman = 0.5 * p.b1 + p.b2 + 0.5 * p.k2;
    let e1 = base + zeeman;
    let e6 = base - zeeman;

    let h1 = 0.5 * p.b1 + 2.0 * p.k1;
    let h4 = -0.5 * p.b1 + 2.0 * p.k1;
    let shared = -0.5 * p.jz + p.k + p.k1;
    let split = 0.5 * p.b1 - p.b2 + 0.5 * p.k2;
    let h2 = shared + split;
    let h3 = shared - split;

    let g1 = Complex64::new(p.j + p.gamma, p.dz + p.lambda) / SQRT_2;
    let g2 = Complex64::new(p.j - p.gamma, p.dz - p.lambda) / SQRT_2;

    let r1 = ((h1 - h3).powi(2) + 4.0 * g1.norm_sqr()).sqrt();
    let r2 = ((h2 - h4).powi(2) + 4.0 * g2.norm_sqr()).sqrt();

    ClosedFormSymbols {
        e1,
        e6,
        h1,
        h2,
        h3,
        h4,
        g1,
        g2,
        r1,
        r2,
    }
}
