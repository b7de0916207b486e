//! Entanglement and discord measures for qubit ⊗ qutrit states.
//!
//! Negativity is computed from the spectrum of the qutrit partial
//! transpose, with a closed form for axially sparse states. Discord uses
//! the linear-entropy classical correlation
//!
//! ```text
//! J2 = (d^2 / 4) * lambda_max(M^T M) * S2(rho_A),   d = 3,
//! M  = (2 / d) * r^{-1} * R,
//! ```
//!
//! where `R` is the Fano-Bloch tensor of the state and `r` that of the
//! symmetric two-qubit purification of the qubit marginal.
//!
//! For the axially symmetric family `M^T M` has at most three nonzero
//! eigenvalues: a doubly degenerate transverse mode fed by the two
//! coherences and a longitudinal mode fed by the populations (see
//! [`correlation_modes`]).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigenvalues, partial_trace, partial_transpose_qutrit, trace_norm, ComplexMatrix, RealMatrix,
    Subsystem, QUBIT_DIM, QUTRIT_DIM,
};
use crate::thermal::DensityMatrix6;
use crate::tolerances;

/// Number of Pauli basis elements including the identity.
pub const PAULI_COUNT: usize = 4;
/// Number of Gell-Mann basis elements including the identity.
pub const GELL_MANN_COUNT: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogBase {
    #[default]
    Natural,
    Two,
}

impl LogBase {
    fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Two => x.log2(),
        }
    }
}

/// `sigma^alpha` for alpha in 0..4, with `sigma^0 = I`.
pub fn pauli(alpha: usize) -> ComplexMatrix {
    let c = Complex64::new;
    let z = c(0.0, 0.0);
    match alpha {
        0 => ComplexMatrix::identity(2),
        1 => ComplexMatrix::from_rows(&[vec![z, c(1.0, 0.0)], vec![c(1.0, 0.0), z]]).unwrap(),
        2 => ComplexMatrix::from_rows(&[vec![z, c(0.0, -1.0)], vec![c(0.0, 1.0), z]]).unwrap(),
        3 => ComplexMatrix::from_diagonal(&[1.0, -1.0]),
        _ => panic!("Pauli index {alpha} out of range"),
    }
}

/// Standard Gell-Mann matrix `gamma^beta` for beta in 0..9 with
/// `gamma^0 = I` and `Tr(gamma^a gamma^b) = 2 delta_ab` for a, b >= 1.
pub fn gell_mann(beta: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(3, 3);
    let mut pair = |i: usize, j: usize, antisymmetric: bool| {
        if antisymmetric {
            m[(i, j)] = Complex64::new(0.0, -1.0);
            m[(j, i)] = Complex64::new(0.0, 1.0);
        } else {
            m[(i, j)] = Complex64::new(1.0, 0.0);
            m[(j, i)] = Complex64::new(1.0, 0.0);
        }
    };
    match beta {
        0 => return ComplexMatrix::identity(3),
        1 => pair(0, 1, false),
        2 => pair(0, 1, true),
        4 => pair(0, 2, false),
        5 => pair(0, 2, true),
        6 => pair(1, 2, false),
        7 => pair(1, 2, true),
        3 => return ComplexMatrix::from_diagonal(&[1.0, -1.0, 0.0]),
        8 => {
            let s = 1.0 / 3f64.sqrt();
            return ComplexMatrix::from_diagonal(&[s, s, -2.0 * s]);
        }
        _ => panic!("Gell-Mann index {beta} out of range"),
    }
    m
}

/// `||rho^{T_B}||_1 - 1`, i.e. twice the magnitude of the negative part
/// of the partial-transpose spectrum.
pub fn negativity_spectral(rho: &DensityMatrix6) -> Result<f64> {
    let pt = partial_transpose_qutrit(rho.matrix())?;
    let n = trace_norm(&pt)? - 1.0;
    if n < 0.0 && n > -tolerances::NEGATIVITY_CLAMP {
        return Ok(0.0);
    }
    Ok(n)
}

/// Negativity of an axially sparse state from the two 2x2 blocks of its
/// partial transpose: (rho_11, rho_55; rho_24) and (rho_22, rho_66; rho_35).
pub fn negativity_closed_form(rho: &DensityMatrix6) -> Result<f64> {
    rho.check_axial_sparsity()?;
    let p = rho.populations();
    let lower_root = |a: f64, b: f64, c: Complex64| 0.5 * (a + b - ((a - b).powi(2) + 4.0 * c.norm_sqr()).sqrt());
    let lambda2 = lower_root(p[0], p[4], rho.rho24());
    let lambda4 = lower_root(p[1], p[5], rho.rho35());
    let negative_part = (-lambda2).max(0.0) + (-lambda4).max(0.0);
    Ok(2.0 * negative_part)
}

fn check_density(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let trace = m.trace();
    if (trace.re - 1.0).abs() > tolerances::TRACE || trace.im.abs() > tolerances::TRACE {
        return Err(Error::NotDensityMatrix(format!("trace {trace} != 1")));
    }
    let spectrum = hermitian_eigenvalues(m).map_err(|e| match e {
        Error::NotHermitian { deviation } => Error::NotDensityMatrix(format!("not Hermitian (deviation {deviation:e})")),
        other => other,
    })?;
    if spectrum.min() < tolerances::PSD_FLOOR {
        return Err(Error::NotDensityMatrix(format!("negative eigenvalue {:e}", spectrum.min())));
    }
    Ok(spectrum.eigenvalues)
}

/// `-sum lambda log lambda` over the spectrum of a density matrix.
pub fn von_neumann_entropy(rho: &ComplexMatrix, base: LogBase) -> Result<f64> {
    let eigenvalues = check_density(rho)?;
    let entropy = eigenvalues
        .into_iter()
        .filter(|&l| l > tolerances::ENTROPY_CUTOFF)
        .map(|l| -l * base.log(l))
        .sum::<f64>();
    Ok(entropy.max(0.0))
}

/// `S(rho_A) + S(rho_B) - S(rho_AB)`.
pub fn mutual_information(rho: &DensityMatrix6, base: LogBase) -> Result<f64> {
    let m = rho.matrix();
    let a = partial_trace(m, Subsystem::Qubit)?;
    let b = partial_trace(m, Subsystem::Qutrit)?;
    Ok(von_neumann_entropy(&a, base)? + von_neumann_entropy(&b, base)? - von_neumann_entropy(m, base)?)
}

/// `S2 = 2 (1 - Tr rho^2)` for a qubit state; equals `1 - |a|^2` for
/// Bloch vector `a`.
pub fn linear_entropy_qubit(rho_a: &ComplexMatrix) -> Result<f64> {
    if rho_a.rows() != QUBIT_DIM || rho_a.cols() != QUBIT_DIM {
        return Err(Error::DimensionMismatch {
            expected: "2x2".into(),
            found: format!("{}x{}", rho_a.rows(), rho_a.cols()),
        });
    }
    check_density(rho_a)?;
    let purity = (rho_a * rho_a).trace().re;
    Ok((2.0 * (1.0 - purity)).clamp(0.0, 1.0))
}

/// Fano-Bloch coefficients `R[alpha][beta] = Tr(rho sigma^alpha ⊗ gamma^beta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationTensor {
    r: RealMatrix,
}

impl CorrelationTensor {
    pub fn get(&self, alpha: usize, beta: usize) -> f64 {
        self.r[(alpha, beta)]
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.r
    }

    /// Qubit Bloch z-component `R_30`.
    pub fn bloch_z(&self) -> f64 {
        self.r[(3, 0)]
    }

    /// Inverts the expansion. With `Tr(gamma^b gamma^b) = 2` for b >= 1 the
    /// weight of each term is `1 / (2 Tr(gamma^b gamma^b))`: 1/6 on the
    /// identity column, 1/4 elsewhere.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut rho = ComplexMatrix::zeros(6, 6);
        for alpha in 0..PAULI_COUNT {
            let sigma = pauli(alpha);
            for beta in 0..GELL_MANN_COUNT {
                let coefficient = self.r[(alpha, beta)];
                if coefficient == 0.0 {
                    continue;
                }
                let weight = if beta == 0 { 1.0 / 6.0 } else { 0.25 };
                rho = &rho + &sigma.kron(&gell_mann(beta)).scale_real(weight * coefficient);
            }
        }
        rho
    }

    /// `rho_A = (I + sum R_a0 sigma^a) / 2`.
    pub fn qubit_marginal(&self) -> ComplexMatrix {
        (1..PAULI_COUNT).fold(ComplexMatrix::identity(2).scale_real(0.5), |acc, alpha| {
            &acc + &pauli(alpha).scale_real(0.5 * self.r[(alpha, 0)])
        })
    }

    /// `rho_B = I / 3 + sum R_0b gamma^b / 2`.
    pub fn qutrit_marginal(&self) -> ComplexMatrix {
        (1..GELL_MANN_COUNT).fold(ComplexMatrix::identity(3).scale_real(1.0 / 3.0), |acc, beta| {
            &acc + &gell_mann(beta).scale_real(0.5 * self.r[(0, beta)])
        })
    }
}

pub fn fano_bloch(rho: &DensityMatrix6) -> CorrelationTensor {
    let m = rho.matrix();
    let mut r = RealMatrix::zeros(PAULI_COUNT, GELL_MANN_COUNT);
    for alpha in 0..PAULI_COUNT {
        let sigma = pauli(alpha);
        for beta in 0..GELL_MANN_COUNT {
            let basis = sigma.kron(&gell_mann(beta));
            r[(alpha, beta)] = (m * &basis).trace().re;
        }
    }
    CorrelationTensor { r }
}

/// Symmetric purification of a diagonal qubit state,
/// `|v> = sqrt((1+a)/2) |00> + sqrt((1-a)/2) |11>` on A' ⊗ A.
#[derive(Debug, Clone)]
pub struct PurificationData {
    /// `a = Tr(rho_A sigma_3)`.
    pub bloch_z: f64,
    /// `r[alpha][beta] = Tr(state4 sigma^alpha ⊗ sigma^beta)`.
    pub r: RealMatrix,
    /// `|v><v|`.
    pub state4: ComplexMatrix,
}

pub fn purify(rho_a: &ComplexMatrix) -> Result<PurificationData> {
    if rho_a.rows() != QUBIT_DIM || rho_a.cols() != QUBIT_DIM {
        return Err(Error::DimensionMismatch {
            expected: "2x2".into(),
            found: format!("{}x{}", rho_a.rows(), rho_a.cols()),
        });
    }
    let off_diagonal = rho_a[(0, 1)].norm();
    if off_diagonal > tolerances::SPARSITY {
        return Err(Error::NotDensityMatrix(format!(
            "qubit marginal must be diagonal (|rho_01| = {off_diagonal:e})"
        )));
    }
    let a = rho_a[(0, 0)].re - rho_a[(1, 1)].re;
    if 1.0 - a * a < tolerances::PURE_MARGINAL {
        return Err(Error::PureReducedState { bloch_z: a });
    }

    let mut v = [Complex64::new(0.0, 0.0); 4];
    v[0] = Complex64::new((0.5 * (1.0 + a)).sqrt(), 0.0);
    v[3] = Complex64::new((0.5 * (1.0 - a)).sqrt(), 0.0);
    let mut state4 = ComplexMatrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            state4[(i, j)] = v[i] * v[j].conj();
        }
    }

    let mut r = RealMatrix::zeros(PAULI_COUNT, PAULI_COUNT);
    for alpha in 0..PAULI_COUNT {
        for beta in 0..PAULI_COUNT {
            r[(alpha, beta)] = (&state4 * &pauli(alpha).kron(&pauli(beta))).trace().re;
        }
    }
    Ok(PurificationData { bloch_z: a, r, state4 })
}

/// Gauss-Jordan inverse with partial pivoting.
fn invert(m: &RealMatrix) -> Result<RealMatrix> {
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = RealMatrix::zeros(n, n);
    for i in 0..n {
        inv[(i, i)] = 1.0;
    }
    let mut det = 1.0;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&x, &y| a[(x, col)].abs().total_cmp(&a[(y, col)].abs()))
            .unwrap_or(col);
        let pivot = a[(pivot_row, col)];
        det *= pivot;
        if pivot.abs() < 1e-12 {
            return Err(Error::SingularR { det });
        }
        if pivot_row != col {
            det = -det;
            for j in 0..n {
                let (x, y) = (a[(col, j)], a[(pivot_row, j)]);
                a[(col, j)] = y;
                a[(pivot_row, j)] = x;
                let (x, y) = (inv[(col, j)], inv[(pivot_row, j)]);
                inv[(col, j)] = y;
                inv[(pivot_row, j)] = x;
            }
        }
        for j in 0..n {
            a[(col, j)] /= pivot;
            inv[(col, j)] /= pivot;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = a[(row, col)];
            if factor == 0.0 {
                continue;
            }
            for j in 0..n {
                a[(row, j)] -= factor * a[(col, j)];
                inv[(row, j)] -= factor * inv[(col, j)];
            }
        }
    }
    Ok(inv)
}

/// `M = (2/3) r^{-1} R` and its 3x8 block without the identity row/column.
#[derive(Debug, Clone)]
pub struct ChannelMatrix {
    pub full: RealMatrix,
    pub physical: RealMatrix,
}

impl ChannelMatrix {
    /// Eigenvalues of `M^T M` over the physical block, ascending.
    pub fn gram_spectrum(&self) -> Result<Vec<f64>> {
        let gram = &self.physical.transpose() * &self.physical;
        Ok(hermitian_eigenvalues(&gram.to_complex())?.eigenvalues)
    }
}

pub fn channel_matrix(rho: &DensityMatrix6) -> Result<ChannelMatrix> {
    let rho_a = partial_trace(rho.matrix(), Subsystem::Qubit)?;
    let purification = purify(&rho_a)?;
    let tensor = fano_bloch(rho);
    let r_inv = invert(&purification.r)?;
    let mut full = &r_inv * tensor.matrix();
    for alpha in 0..PAULI_COUNT {
        for beta in 0..GELL_MANN_COUNT {
            full[(alpha, beta)] *= 2.0 / QUTRIT_DIM as f64;
        }
    }
    let physical = full.trailing_block(1, 1);
    Ok(ChannelMatrix { full, physical })
}

/// Quantum discord and its ingredients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordBreakdown {
    pub mutual_information: f64,
    pub classical_j2: f64,
    /// Always exactly `mutual_information - classical_j2`.
    pub discord: f64,
    pub lambda_max: f64,
    /// `S2(rho_A)`.
    pub linear_entropy: f64,
}

pub fn discord(rho: &DensityMatrix6, base: LogBase) -> Result<DiscordBreakdown> {
    let mutual_information = mutual_information(rho, base)?;
    let rho_a = partial_trace(rho.matrix(), Subsystem::Qubit)?;
    let linear_entropy = linear_entropy_qubit(&rho_a)?;

    let m = match channel_matrix(rho) {
        Ok(m) => m,
        // A pure qubit marginal forces a product state: no quantum correlations.
        Err(Error::PureReducedState { .. }) => {
            return Ok(DiscordBreakdown {
                mutual_information,
                classical_j2: mutual_information,
                discord: 0.0,
                lambda_max: 0.0,
                linear_entropy,
            })
        }
        Err(e) => return Err(e),
    };
    let lambda_max = m.gram_spectrum()?.last().copied().unwrap_or(0.0).max(0.0);
    let d = QUTRIT_DIM as f64;
    let classical_j2 = 0.25 * d * d * lambda_max * linear_entropy;
    Ok(DiscordBreakdown {
        mutual_information,
        classical_j2,
        discord: mutual_information - classical_j2,
        lambda_max,
        linear_entropy,
    })
}

/// Closed-form nonzero eigenvalues of `M^T M` for an axially sparse state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationModes {
    /// Doubly degenerate mode from the sigma_1 / sigma_2 rows of `M`:
    /// `(4/9) sum_b R_1b^2 / (1 - a^2)`.
    pub transverse: f64,
    /// Single mode from the sigma_3 row of `M`:
    /// `(4/9) sum_b (R_3b - a R_0b)^2 / (1 - a^2)^2`.
    pub longitudinal: f64,
}

impl CorrelationModes {
    pub fn lambda_max(&self) -> f64 {
        self.transverse.max(self.longitudinal)
    }

    /// Nonzero spectrum of `M^T M` in ascending order (five more zeros).
    pub fn spectrum(&self) -> [f64; 3] {
        let mut s = [self.transverse, self.transverse, self.longitudinal];
        s.sort_by(f64::total_cmp);
        s
    }
}

pub fn correlation_modes(tensor: &CorrelationTensor) -> Result<CorrelationModes> {
    let a = tensor.bloch_z();
    let mixedness = 1.0 - a * a;
    if mixedness < tolerances::PURE_MARGINAL {
        return Err(Error::PureReducedState { bloch_z: a });
    }
    let transverse_sum: f64 = (1..GELL_MANN_COUNT).map(|b| tensor.get(1, b).powi(2)).sum();
    let longitudinal_sum: f64 = (1..GELL_MANN_COUNT)
        .map(|b| (tensor.get(3, b) - a * tensor.get(0, b)).powi(2))
        .sum();
    Ok(CorrelationModes {
        transverse: 4.0 / 9.0 * transverse_sum / mixedness,
        longitudinal: 4.0 / 9.0 * longitudinal_sum / (mixedness * mixedness),
    })
}

/// Largest eigenvalue under the assumption that only the sigma_3 row of
/// `M` is populated, i.e. the longitudinal mode alone. It equals
/// `lambda_max` only when the longitudinal mode dominates.
pub fn single_row_lambda(tensor: &CorrelationTensor) -> Result<f64> {
    Ok(correlation_modes(tensor)?.longitudinal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{apply_channel, kraus_set, ChannelConfig, ChannelKind};
    use crate::model::ModelParams;
    use crate::thermal::{gibbs_closed_form, Temperature};
    use std::f64::consts::{LN_2, PI};

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bell_like() -> DensityMatrix6 {
        DensityMatrix6::axial([0.0, 0.5, 0.0, 0.5, 0.0, 0.0], c(0.5, 0.0), c(0.0, 0.0)).unwrap()
    }

    fn reference_thermal(t: f64) -> DensityMatrix6 {
        gibbs_closed_form(&ModelParams::REFERENCE, Temperature::new(t).unwrap()).unwrap()
    }

    fn random_axial(rng: &mut ChaCha8Rng) -> DensityMatrix6 {
        let mut p: [f64; 6] = std::array::from_fn(|_| rng.gen_range(0.0..1.0));
        let total: f64 = p.iter().sum();
        p.iter_mut().for_each(|x| *x /= total);
        let mut coherence = |a: f64, b: f64| {
            Complex64::from_polar((a * b).sqrt() * rng.gen_range(0.0..1.0), rng.gen_range(0.0..2.0 * PI))
        };
        let r24 = coherence(p[1], p[3]);
        let r35 = coherence(p[2], p[4]);
        DensityMatrix6::axial(p, r24, r35).unwrap()
    }

    fn random_density(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let mut g = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let m = &g * &g.dagger();
        m.scale_real(1.0 / m.trace().re)
    }

    fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        let h = random_density(rng, n);
        let decomposition = crate::linalg::hermitian_eigen(&h).unwrap();
        decomposition.vectors
    }

    /// Linear-entropy classical correlation by direct optimization over
    /// projective qubit measurements along the Bloch direction n.
    fn brute_force_j2(rho: &DensityMatrix6) -> f64 {
        let m = rho.matrix();
        let s2 = |x: &ComplexMatrix| 2.0 * (1.0 - (x * x).trace().re);
        let rho_b = partial_trace(m, Subsystem::Qutrit).unwrap();
        let gain = |theta: f64, phi: f64| {
            let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
            let mut total = s2(&rho_b);
            for sign in [1.0, -1.0] {
                let mut projector = ComplexMatrix::identity(2).scale_real(0.5);
                for (k, nk) in n.iter().enumerate() {
                    projector = &projector + &pauli(k + 1).scale_real(0.5 * sign * nk);
                }
                let branch = partial_trace(&(&projector.kron(&ComplexMatrix::identity(3)) * m), Subsystem::Qutrit).unwrap();
                let p = branch.trace().re;
                if p > 1e-14 {
                    total -= p * s2(&branch.scale_real(1.0 / p));
                }
            }
            total
        };
        let (mut best, mut best_theta, mut best_phi) = (f64::NEG_INFINITY, 0.0, 0.0);
        for i in 0..=36 {
            for j in 0..72 {
                let (theta, phi) = (PI * i as f64 / 36.0, 2.0 * PI * j as f64 / 72.0);
                let g = gain(theta, phi);
                if g > best {
                    (best, best_theta, best_phi) = (g, theta, phi);
                }
            }
        }
        let mut step = PI / 36.0;
        while step > 1e-9 {
            let mut improved = false;
            for (dt, dp) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
                let g = gain(best_theta + dt, best_phi + dp);
                if g > best {
                    (best, best_theta, best_phi) = (g, best_theta + dt, best_phi + dp);
                    improved = true;
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        best
    }

    #[test]
    fn basis_normalization() {
        for a in 0..9 {
            for b in 0..9 {
                let t = (&gell_mann(a) * &gell_mann(b)).trace();
                let expected = match (a, b) {
                    (0, 0) => 3.0,
                    (x, y) if x == y => 2.0,
                    _ => 0.0,
                };
                assert!((t - c(expected, 0.0)).norm() < 1e-15, "({a}, {b})");
            }
            assert!(gell_mann(a).is_hermitian(0.0));
        }
        for a in 0..4 {
            for b in 0..4 {
                let t = (&pauli(a) * &pauli(b)).trace();
                assert!((t - c(if a == b { 2.0 } else { 0.0 }, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn negativity_of_bell_like_state() {
        let rho = bell_like();
        assert!((negativity_spectral(&rho).unwrap() - 1.0).abs() < 1e-12);
        assert!((negativity_closed_form(&rho).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn negativity_of_product_states_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let a = random_density(&mut rng, 2);
            let b = random_density(&mut rng, 3);
            let rho = DensityMatrix6::new(a.kron(&b)).unwrap();
            assert!(negativity_spectral(&rho).unwrap() < 1e-10);
        }
        let diagonal = DensityMatrix6::diagonal([0.1, 0.2, 0.3, 0.1, 0.2, 0.1]).unwrap();
        assert_eq!(negativity_closed_form(&diagonal).unwrap(), 0.0);
        assert_eq!(negativity_spectral(&diagonal).unwrap(), 0.0);
    }

    #[test]
    fn negativity_closed_form_matches_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..500 {
            let rho = random_axial(&mut rng);
            let spectral = negativity_spectral(&rho).unwrap();
            let closed = negativity_closed_form(&rho).unwrap();
            assert!((spectral - closed).abs() <= 1e-10, "{spectral} vs {closed}");
        }
    }

    #[test]
    fn negativity_closed_form_rejects_dense_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let rho = DensityMatrix6::new(random_density(&mut rng, 6)).unwrap();
        assert!(matches!(negativity_closed_form(&rho), Err(Error::SparsityViolation { .. })));
    }

    #[test]
    fn reference_negativity_at_low_temperature() {
        let n = negativity_spectral(&reference_thermal(0.05)).unwrap();
        assert!((n - 0.75).abs() < 0.05, "N = {n}");
    }

    #[test]
    fn entropy_examples() {
        let mut pure = ComplexMatrix::zeros(6, 6);
        pure[(2, 2)] = c(1.0, 0.0);
        assert_eq!(von_neumann_entropy(&pure, LogBase::Natural).unwrap(), 0.0);
        let mixed = ComplexMatrix::identity(6).scale_real(1.0 / 6.0);
        assert!((von_neumann_entropy(&mixed, LogBase::Natural).unwrap() - 6f64.ln()).abs() < 1e-12);
        assert!((von_neumann_entropy(&mixed, LogBase::Two).unwrap() - 6f64.log2()).abs() < 1e-12);
        let q = ComplexMatrix::from_diagonal(&[0.25, 0.75]);
        let expected = -0.25 * 0.25f64.ln() - 0.75 * 0.75f64.ln();
        assert!((von_neumann_entropy(&q, LogBase::Natural).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn entropy_rejects_non_states() {
        let bad_trace = ComplexMatrix::identity(2);
        assert!(matches!(von_neumann_entropy(&bad_trace, LogBase::Natural), Err(Error::NotDensityMatrix(_))));
        let negative = ComplexMatrix::from_diagonal(&[1.2, -0.2]);
        assert!(matches!(von_neumann_entropy(&negative, LogBase::Natural), Err(Error::NotDensityMatrix(_))));
        let mut skew = ComplexMatrix::from_diagonal(&[0.5, 0.5]);
        skew[(0, 1)] = c(0.1, 0.0);
        assert!(matches!(von_neumann_entropy(&skew, LogBase::Natural), Err(Error::NotDensityMatrix(_))));
    }

    #[test]
    fn entropy_is_unitarily_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..50 {
            let rho = random_density(&mut rng, 6);
            let u = random_unitary(&mut rng, 6);
            let rotated = &(&u * &rho) * &u.dagger();
            let s1 = von_neumann_entropy(&rho, LogBase::Natural).unwrap();
            let s2 = von_neumann_entropy(&rotated, LogBase::Natural).unwrap();
            assert!((s1 - s2).abs() < 1e-10);
        }
    }

    #[test]
    fn mutual_information_examples() {
        let product = DensityMatrix6::new(ComplexMatrix::from_diagonal(&[0.3, 0.7]).kron(&ComplexMatrix::from_diagonal(&[0.2, 0.5, 0.3]))).unwrap();
        assert!(mutual_information(&product, LogBase::Natural).unwrap().abs() < 1e-12);
        let mixed = DensityMatrix6::new(ComplexMatrix::identity(6).scale_real(1.0 / 6.0)).unwrap();
        assert!(mutual_information(&mixed, LogBase::Natural).unwrap().abs() < 1e-12);
        let bell = mutual_information(&bell_like(), LogBase::Natural).unwrap();
        assert!((bell - 2.0 * LN_2).abs() < 1e-12);
        let bell_bits = mutual_information(&bell_like(), LogBase::Two).unwrap();
        assert!((bell_bits - 2.0).abs() < 1e-12);
    }

    #[test]
    fn subadditivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..200 {
            let rho = DensityMatrix6::new(random_density(&mut rng, 6)).unwrap();
            assert!(mutual_information(&rho, LogBase::Natural).unwrap() >= -1e-10);
        }
    }

    #[test]
    fn linear_entropy_examples() {
        let pure = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        assert_eq!(linear_entropy_qubit(&pure).unwrap(), 0.0);
        let mixed = ComplexMatrix::identity(2).scale_real(0.5);
        assert!((linear_entropy_qubit(&mixed).unwrap() - 1.0).abs() < 1e-15);
        let q = ComplexMatrix::from_diagonal(&[0.25, 0.75]);
        assert!((linear_entropy_qubit(&q).unwrap() - 0.75).abs() < 1e-15);
        assert!(linear_entropy_qubit(&ComplexMatrix::identity(2)).is_err());
        assert!(linear_entropy_qubit(&ComplexMatrix::identity(3).scale_real(1.0 / 3.0)).is_err());
    }

    #[test]
    fn linear_entropy_is_one_minus_bloch_length_squared() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..100 {
            let q = random_density(&mut rng, 2);
            let bloch: f64 = (1..4).map(|k| (&q * &pauli(k)).trace().re.powi(2)).sum();
            assert!((linear_entropy_qubit(&q).unwrap() - (1.0 - bloch)).abs() < 1e-12);
        }
    }

    #[test]
    fn fano_bloch_of_maximally_mixed() {
        let rho = DensityMatrix6::new(ComplexMatrix::identity(6).scale_real(1.0 / 6.0)).unwrap();
        let t = fano_bloch(&rho);
        for a in 0..4 {
            for b in 0..9 {
                let expected = if (a, b) == (0, 0) { 1.0 } else { 0.0 };
                assert!((t.get(a, b) - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn fano_bloch_of_bell_like_state() {
        let t = fano_bloch(&bell_like());
        // sigma_3 ⊗ I weights: rho_22 (qubit up) - rho_44 (qubit down).
        assert!(t.get(3, 0).abs() < 1e-15);
        // I ⊗ gamma_3 weights: -rho_22 (m_S = 0) + rho_44 (m_S = +1).
        assert!(t.get(0, 3).abs() < 1e-15);
        // sigma_3 ⊗ gamma_3: -rho_22 - rho_44 = -1.
        assert!((t.get(3, 3) + 1.0).abs() < 1e-15);
        // sigma_1 ⊗ gamma_1 and sigma_2 ⊗ gamma_2: 2 Re rho_24 = 1.
        assert!((t.get(1, 1) - 1.0).abs() < 1e-15);
        assert!((t.get(2, 2) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fano_bloch_round_trip_and_marginals() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..100 {
            let rho = DensityMatrix6::new(random_density(&mut rng, 6)).unwrap();
            let t = fano_bloch(&rho);
            assert!((t.get(0, 0) - 1.0).abs() < 1e-12);
            assert!(t.reconstruct().approx_eq(rho.matrix(), 1e-12));
            let a = partial_trace(rho.matrix(), Subsystem::Qubit).unwrap();
            let b = partial_trace(rho.matrix(), Subsystem::Qutrit).unwrap();
            assert!(t.qubit_marginal().approx_eq(&a, 1e-12));
            assert!(t.qutrit_marginal().approx_eq(&b, 1e-12));
        }
    }

    #[test]
    fn axial_support_of_the_tensor() {
        let support = [
            (0, 0),
            (3, 0),
            (0, 3),
            (0, 8),
            (3, 3),
            (3, 8),
            (1, 1),
            (1, 2),
            (2, 1),
            (2, 2),
            (1, 6),
            (1, 7),
            (2, 6),
            (2, 7),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..100 {
            let t = fano_bloch(&random_axial(&mut rng));
            for a in 0..4 {
                for b in 0..9 {
                    if !support.contains(&(a, b)) {
                        assert!(t.get(a, b).abs() < 1e-15, "R[{a}][{b}] = {}", t.get(a, b));
                    }
                }
            }
        }
    }

    #[test]
    fn purification_of_maximally_mixed_qubit() {
        let data = purify(&ComplexMatrix::identity(2).scale_real(0.5)).unwrap();
        assert_eq!(data.bloch_z, 0.0);
        let expected = [1.0, 1.0, -1.0, 1.0];
        for (a, &diagonal) in expected.iter().enumerate() {
            for b in 0..4 {
                let e = if a == b { diagonal } else { 0.0 };
                assert!((data.r[(a, b)] - e).abs() < 1e-15);
            }
        }
        let s = 0.5f64.sqrt();
        assert!((data.state4[(0, 3)] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((data.state4[(0, 0)] - c(s * s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn purification_of_biased_qubit() {
        let rho_a = ComplexMatrix::from_diagonal(&[0.75, 0.25]);
        let data = purify(&rho_a).unwrap();
        let root = 0.75f64.sqrt();
        assert!((data.r[(0, 0)] - 1.0).abs() < 1e-15);
        assert!((data.r[(3, 0)] - 0.5).abs() < 1e-15);
        assert!((data.r[(0, 3)] - 0.5).abs() < 1e-15);
        assert!((data.r[(3, 3)] - 1.0).abs() < 1e-15);
        assert!((data.r[(1, 1)] - root).abs() < 1e-15);
        assert!((data.r[(2, 2)] + root).abs() < 1e-15);
        // Pure, and its A' trace reproduces rho_A.
        assert!(((&data.state4 * &data.state4).trace().re - 1.0).abs() < 1e-12);
        let mut traced = ComplexMatrix::zeros(2, 2);
        for i in 0..2 {
            for j in 0..2 {
                traced[(i, j)] = data.state4[(i, j)] + data.state4[(2 + i, 2 + j)];
            }
        }
        assert!(traced.approx_eq(&rho_a, 1e-12));
    }

    #[test]
    fn purification_rejects_pure_marginal() {
        let err = purify(&ComplexMatrix::from_diagonal(&[1.0, 0.0])).unwrap_err();
        assert_eq!(err, Error::PureReducedState { bloch_z: 1.0 });
        let mut coherent = ComplexMatrix::identity(2).scale_real(0.5);
        coherent[(0, 1)] = c(0.1, 0.0);
        coherent[(1, 0)] = c(0.1, 0.0);
        assert!(purify(&coherent).is_err());
    }

    #[test]
    fn inverse_of_purification_tensor() {
        for a in [-0.9, -0.3, 0.0, 0.5, 0.99] {
            let rho_a = ComplexMatrix::from_diagonal(&[0.5 * (1.0 + a), 0.5 * (1.0 - a)]);
            let r = purify(&rho_a).unwrap().r;
            let product = &r * &invert(&r).unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let e = if i == j { 1.0 } else { 0.0 };
                    assert!((product[(i, j)] - e).abs() < 1e-12);
                }
            }
        }
        assert!(matches!(invert(&RealMatrix::zeros(4, 4)), Err(Error::SingularR { .. })));
    }

    #[test]
    fn channel_matrix_of_product_state_vanishes() {
        let rho = DensityMatrix6::new(ComplexMatrix::from_diagonal(&[0.8, 0.2]).kron(&ComplexMatrix::identity(3).scale_real(1.0 / 3.0))).unwrap();
        let m = channel_matrix(&rho).unwrap();
        assert!(m.physical.max_abs_diff(&RealMatrix::zeros(3, 8)) < 1e-15);
    }

    #[test]
    fn channel_matrix_of_bell_like_state() {
        let m = channel_matrix(&bell_like()).unwrap();
        let spectrum = m.gram_spectrum().unwrap();
        assert!(*spectrum.last().unwrap() > 0.0);
    }

    #[test]
    fn thermal_channel_matrix_structure() {
        // sigma_1 / sigma_2 rows live on gamma_{1,2,6,7}; the sigma_3 row on gamma_{3,8}.
        let m = channel_matrix(&reference_thermal(1.0)).unwrap();
        let transverse_cols = [0, 1, 5, 6];
        let longitudinal_cols = [2, 7];
        for row in 0..3 {
            for col in 0..8 {
                let allowed = if row < 2 { transverse_cols.contains(&col) } else { longitudinal_cols.contains(&col) };
                if !allowed {
                    assert!(m.physical[(row, col)].abs() < 1e-10, "M[{row}][{col}]");
                }
            }
        }
        let rows = [m.physical.row(0), m.physical.row(1), m.physical.row(2)];
        let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
        assert!(dot(rows[0], rows[1]).abs() < 1e-12);
        assert!((dot(rows[0], rows[0]) - dot(rows[1], rows[1])).abs() < 1e-12);
    }

    #[test]
    fn mode_closed_form_matches_numeric_gram_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..200 {
            let rho = random_axial(&mut rng);
            let numeric = channel_matrix(&rho).unwrap().gram_spectrum().unwrap();
            let modes = correlation_modes(&fano_bloch(&rho)).unwrap();
            let analytic = modes.spectrum();
            for (x, y) in numeric[5..].iter().zip(analytic) {
                assert!((x - y).abs() < 1e-8, "{numeric:?} vs {analytic:?}");
            }
            assert!(numeric[..5].iter().all(|x| x.abs() < 1e-10));
        }
    }

    #[test]
    fn classical_correlation_matches_measurement_optimization() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let mut states: Vec<DensityMatrix6> = (0..8).map(|_| random_axial(&mut rng)).collect();
        states.push(reference_thermal(1.0));
        states.push(reference_thermal(0.3));
        for rho in &states {
            let j2 = discord(rho, LogBase::Natural).unwrap().classical_j2;
            let oracle = brute_force_j2(rho);
            assert!((j2 - oracle).abs() < 1e-8, "{j2} vs {oracle}");
        }
    }

    #[test]
    fn discord_of_product_state() {
        let rho = DensityMatrix6::new(ComplexMatrix::from_diagonal(&[0.35, 0.65]).kron(&ComplexMatrix::from_diagonal(&[0.5, 0.3, 0.2]))).unwrap();
        let d = discord(&rho, LogBase::Natural).unwrap();
        assert!(d.mutual_information.abs() < 1e-12);
        assert!(d.classical_j2.abs() < 1e-12);
        assert!(d.discord.abs() < 1e-10);
    }

    #[test]
    fn discord_with_pure_marginal_is_zero() {
        let rho = DensityMatrix6::new(ComplexMatrix::from_diagonal(&[1.0, 0.0]).kron(&ComplexMatrix::from_diagonal(&[0.5, 0.3, 0.2]))).unwrap();
        let d = discord(&rho, LogBase::Natural).unwrap();
        assert_eq!(d.discord, 0.0);
        assert_eq!(d.discord, d.mutual_information - d.classical_j2);
    }

    #[test]
    fn discord_identity_holds_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..50 {
            let d = discord(&random_axial(&mut rng), LogBase::Two).unwrap();
            assert_eq!(d.discord, d.mutual_information - d.classical_j2);
        }
    }

    #[test]
    fn thermal_discord_is_nonnegative() {
        for i in 0..60 {
            let rho = reference_thermal(0.05 + 0.05 * i as f64);
            let d = discord(&rho, LogBase::Natural).unwrap();
            assert!(d.discord >= -1e-8, "Q = {} at step {i}", d.discord);
            assert!(d.mutual_information >= d.classical_j2 - 1e-8);
        }
    }

    #[test]
    fn negativity_is_nonincreasing_in_noise() {
        let rho = reference_thermal(0.4);
        for kind in [ChannelKind::Dephasing, ChannelKind::PhaseFlip] {
            let mut last = f64::INFINITY;
            for i in 0..=20 {
                let cfg = ChannelConfig::new(kind, i as f64 / 20.0, 0.3).unwrap();
                let n = negativity_spectral(&apply_channel(&rho, &kraus_set(&cfg)).unwrap()).unwrap();
                assert!(n <= last + 1e-12);
                last = n;
            }
        }
    }
}
