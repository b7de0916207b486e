//! Local dephasing and phase-flip noise on the qubit and the qutrit.
//!
//! Each channel is the product of a two-operator qubit Kraus set and a
//! three-operator qutrit Kraus set, giving six 6x6 operators `F_j E_i`.
//! All of them are diagonal, so they commute and the order in which the
//! two local channels act is immaterial.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, JOINT_DIM, QUBIT_DIM, QUTRIT_DIM};
use crate::thermal::{set_coherence, DensityMatrix6, COHERENCE_24, COHERENCE_35};
use crate::tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    Dephasing,
    PhaseFlip,
}

impl ChannelKind {
    pub fn label(self) -> &'static str {
        match self {
            ChannelKind::Dephasing => "dephasing",
            ChannelKind::PhaseFlip => "phase_flip",
        }
    }
}

/// Channel kind plus the noise strengths on the qubit (`gamma_a`) and
/// the qutrit (`gamma_b`), both in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    kind: ChannelKind,
    gamma_a: f64,
    gamma_b: f64,
}

impl ChannelConfig {
    pub fn new(kind: ChannelKind, gamma_a: f64, gamma_b: f64) -> Result<Self> {
        check_gamma("gamma_a", gamma_a)?;
        check_gamma("gamma_b", gamma_b)?;
        Ok(Self { kind, gamma_a, gamma_b })
    }

    /// Same strength on both subsystems.
    pub fn symmetric(kind: ChannelKind, gamma: f64) -> Result<Self> {
        Self::new(kind, gamma, gamma)
    }

    /// Noise on the qubit only.
    pub fn qubit_only(kind: ChannelKind, gamma_a: f64) -> Result<Self> {
        Self::new(kind, gamma_a, 0.0)
    }

    pub fn noiseless(kind: ChannelKind) -> Self {
        Self {
            kind,
            gamma_a: 0.0,
            gamma_b: 0.0,
        }
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn gamma_a(&self) -> f64 {
        self.gamma_a
    }

    pub fn gamma_b(&self) -> f64 {
        self.gamma_b
    }

    /// Factors multiplying rho_24 and rho_35 under this channel.
    pub fn coherence_factors(&self) -> (f64, f64) {
        let qubit = 1.0 - self.gamma_a;
        let qutrit = 1.0 - self.gamma_b;
        match self.kind {
            ChannelKind::Dephasing => ((qubit * qutrit).sqrt(), qutrit * qubit.sqrt()),
            ChannelKind::PhaseFlip => {
                let k2 = qubit * qutrit;
                (k2, k2)
            }
        }
    }
}

fn check_gamma(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::GammaOutOfRange { name, value })
    }
}

/// Exponential decay `gamma(t) = 1 - exp(-rate * t)` on each subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayLaw {
    pub rate_a: f64,
    pub rate_b: f64,
    pub time: f64,
}

pub fn decay(law: &DecayLaw) -> Result<(f64, f64)> {
    if !(law.time.is_finite() && law.time >= 0.0) {
        return Err(Error::NegativeTime(law.time));
    }
    for (name, value) in [("rate_a", law.rate_a), ("rate_b", law.rate_b)] {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::NegativeRate { name, value });
        }
    }
    let gamma = |rate: f64| -(-rate * law.time).exp_m1();
    Ok((gamma(law.rate_a), gamma(law.rate_b)))
}

impl DecayLaw {
    pub fn channel(&self, kind: ChannelKind) -> Result<ChannelConfig> {
        let (gamma_a, gamma_b) = decay(self)?;
        ChannelConfig::new(kind, gamma_a, gamma_b)
    }
}

/// A list of Kraus operators satisfying `sum K^dagger K = I`.
#[derive(Debug, Clone)]
pub struct KrausSet {
    operators: Vec<ComplexMatrix>,
}

impl KrausSet {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let set = Self { operators };
        let deviation = set.completeness_deviation();
        if deviation.is_nan() || deviation > tolerances::KRAUS_COMPLETENESS {
            return Err(Error::IncompleteKrausSet { deviation });
        }
        Ok(set)
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// max |sum K^dagger K - I|.
    pub fn completeness_deviation(&self) -> f64 {
        let Some(first) = self.operators.first() else {
            return f64::INFINITY;
        };
        let n = first.cols();
        if self.operators.iter().any(|k| k.rows() != n || k.cols() != n) {
            return f64::INFINITY;
        }
        let sum = self
            .operators
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, k| &acc + &(&k.dagger() * k));
        sum.max_abs_diff(&ComplexMatrix::identity(n))
    }
}

fn products(qubit: &[ComplexMatrix], qutrit: &[ComplexMatrix]) -> Vec<ComplexMatrix> {
    let i2 = ComplexMatrix::identity(QUBIT_DIM);
    let i3 = ComplexMatrix::identity(QUTRIT_DIM);
    let mut out = Vec::with_capacity(qubit.len() * qutrit.len());
    for e in qubit {
        let e_full = e.kron(&i3);
        for f in qutrit {
            out.push(&i2.kron(f) * &e_full);
        }
    }
    out
}

pub fn dephasing_kraus(cfg: &ChannelConfig) -> KrausSet {
    let (ga, gb) = (cfg.gamma_a, cfg.gamma_b);
    let qubit = [
        ComplexMatrix::from_diagonal(&[1.0, (1.0 - ga).sqrt()]),
        ComplexMatrix::from_diagonal(&[0.0, ga.sqrt()]),
    ];
    let keep = (1.0 - gb).sqrt();
    let qutrit = [
        ComplexMatrix::from_diagonal(&[1.0, keep, keep]),
        ComplexMatrix::from_diagonal(&[0.0, gb.sqrt(), 0.0]),
        ComplexMatrix::from_diagonal(&[0.0, 0.0, gb.sqrt()]),
    ];
    KrausSet {
        operators: products(&qubit, &qutrit),
    }
}

pub fn phase_flip_kraus(cfg: &ChannelConfig) -> KrausSet {
    let (ga, gb) = (cfg.gamma_a, cfg.gamma_b);
    let qubit = [
        ComplexMatrix::from_diagonal(&[1.0, 1.0]).scale_real((1.0 - 0.5 * ga).sqrt()),
        ComplexMatrix::from_diagonal(&[1.0, -1.0]).scale_real((0.5 * ga).sqrt()),
    ];
    let omega = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    let one = Complex64::new(1.0, 0.0);
    let weight = (gb / 3.0).sqrt();
    let qutrit = [
        ComplexMatrix::identity(QUTRIT_DIM).scale_real((1.0 - 2.0 * gb / 3.0).sqrt()),
        ComplexMatrix::from_complex_diagonal(&[one, omega.conj(), omega]).scale_real(weight),
        ComplexMatrix::from_complex_diagonal(&[one, omega, omega.conj()]).scale_real(weight),
    ];
    KrausSet {
        operators: products(&qubit, &qutrit),
    }
}

pub fn kraus_set(cfg: &ChannelConfig) -> KrausSet {
    match cfg.kind {
        ChannelKind::Dephasing => dephasing_kraus(cfg),
        ChannelKind::PhaseFlip => phase_flip_kraus(cfg),
    }
}

/// `sum K rho K^dagger`.
pub fn apply_channel(rho: &DensityMatrix6, ks: &KrausSet) -> Result<DensityMatrix6> {
    let deviation = ks.completeness_deviation();
    if deviation.is_nan() || deviation > tolerances::KRAUS_COMPLETENESS || ks.operators[0].rows() != JOINT_DIM {
        return Err(Error::IncompleteKrausSet { deviation });
    }
    let m = rho.matrix();
    let out = ks
        .operators
        .iter()
        .fold(ComplexMatrix::zeros(JOINT_DIM, JOINT_DIM), |acc, k| {
            &acc + &(&(k * m) * &k.dagger())
        });
    DensityMatrix6::from_matrix_unchecked(out)
}

/// Evolved state of an axially sparse input: populations untouched,
/// coherences rescaled by [`ChannelConfig::coherence_factors`].
pub fn evolved_closed_form(rho: &DensityMatrix6, cfg: &ChannelConfig) -> Result<DensityMatrix6> {
    rho.check_axial_sparsity()?;
    let (k24, k35) = cfg.coherence_factors();
    let mut m = rho.matrix().clone();
    set_coherence(&mut m, COHERENCE_24, rho.rho24() * k24);
    set_coherence(&mut m, COHERENCE_35, rho.rho35() * k35);
    DensityMatrix6::from_matrix_unchecked(m)
}
