//! Seeded cross-checks of every closed form against its numerical oracle.
//!
//! Each suite draws its own random stream from `seed` and the suite name,
//! so running one suite alone reproduces the numbers of a full run.

use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channels::{apply_channel, evolved_closed_form, kraus_set, ChannelConfig, ChannelKind};
use crate::correlations::{channel_matrix, correlation_modes, fano_bloch, negativity_closed_form, negativity_spectral};
use crate::error::Result;
use crate::linalg::{hermitian_eigenvalues, ComplexMatrix};
use crate::model::{build_hamiltonian, total_sz, ModelParams};
use crate::thermal::{gibbs_closed_form, gibbs_oracle, is_axial_coherence, set_coherence, DensityMatrix6, Temperature, COHERENCE_35};
use crate::tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Gibbs,
    Channels,
    Negativity,
    Discord,
    Cptp,
    Symmetry,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Gibbs,
        Suite::Channels,
        Suite::Negativity,
        Suite::Discord,
        Suite::Cptp,
        Suite::Symmetry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gibbs => "gibbs",
            Suite::Channels => "channels",
            Suite::Negativity => "negativity",
            Suite::Discord => "discord",
            Suite::Cptp => "cptp",
            Suite::Symmetry => "symmetry",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    fn stream(self, seed: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(self as u64 + 1);
        rng
    }
}

/// Deliberate defects used to confirm that a suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Negates the qutrit-side dephasing factor `l` of the closed form.
    FlipDephasingL,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    pub samples: usize,
    pub mutation: Option<Mutation>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { seed: 20_240_607, samples: 500, mutation: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    /// First error raised by the code under test, if any.
    pub error: Option<String>,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self { name, max_deviation: 0.0, tolerance, error: None }
    }

    fn record(&mut self, deviation: Result<f64>) {
        match deviation {
            Ok(d) if d.is_nan() || d > self.max_deviation => self.max_deviation = d,
            Ok(_) => {}
            Err(e) => {
                self.max_deviation = f64::INFINITY;
                self.error.get_or_insert_with(|| e.to_string());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.max_deviation <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub samples: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{status} {} ({} samples)", self.suite.name(), self.samples)?;
        for c in &self.checks {
            let mark = if c.passed() { "ok  " } else { "FAIL" };
            write!(f, "  {mark} {:<28} max deviation {:.3e} (tolerance {:.0e})", c.name, c.max_deviation, c.tolerance)?;
            if let Some(e) = &c.error {
                write!(f, ": {e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            write!(f, "{s}")?;
        }
        let failed = self.suites.iter().filter(|s| !s.passed()).count();
        write!(f, "{} suites, {failed} failed", self.suites.len())
    }
}

pub fn random_params(rng: &mut impl Rng) -> ModelParams {
    let mut draw = || rng.gen_range(-2.0..2.0);
    ModelParams {
        b1: draw(),
        b2: draw(),
        j: draw(),
        jz: draw(),
        k: draw(),
        k1: draw(),
        k2: draw(),
        dz: draw(),
        gamma: draw(),
        lambda: draw(),
    }
}

pub fn random_temperature(rng: &mut impl Rng) -> Temperature {
    Temperature::new(rng.gen_range(0.05..10.0)).expect("positive range")
}

/// Random axially sparse density matrix; coherences respect the 2x2
/// positivity bound |rho_ij|^2 <= rho_ii rho_jj.
pub fn random_axial_state(rng: &mut impl Rng) -> DensityMatrix6 {
    let mut p: [f64; 6] = std::array::from_fn(|_| rng.gen_range(0.0..1.0));
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= total);
    let mut coherence = |a: f64, b: f64| {
        Complex64::from_polar((a * b).sqrt() * rng.gen_range(0.0..1.0), rng.gen_range(0.0..std::f64::consts::TAU))
    };
    let r24 = coherence(p[1], p[3]);
    let r35 = coherence(p[2], p[4]);
    DensityMatrix6::axial(p, r24, r35).expect("positive by construction")
}

pub fn random_channel(rng: &mut impl Rng, kind: ChannelKind) -> ChannelConfig {
    ChannelConfig::new(kind, rng.gen_range(0.0..=1.0), rng.gen_range(0.0..=1.0)).expect("in range")
}

fn closed_form_evolution(rho: &DensityMatrix6, cfg: &ChannelConfig, mutation: Option<Mutation>) -> Result<DensityMatrix6> {
    let out = evolved_closed_form(rho, cfg)?;
    match (mutation, cfg.kind()) {
        (Some(Mutation::FlipDephasingL), ChannelKind::Dephasing) => {
            let mut m = out.into_matrix();
            let flipped = -m[COHERENCE_35];
            set_coherence(&mut m, COHERENCE_35, flipped);
            DensityMatrix6::from_matrix_unchecked(m)
        }
        _ => Ok(out),
    }
}

fn gibbs_suite(rng: &mut ChaCha8Rng, n: usize) -> Vec<Check> {
    let mut check = Check::new("closed form vs exp(-H/T)/Z", tolerances::ORACLE);
    for _ in 0..n {
        let p = random_params(rng);
        let t = random_temperature(rng);
        check.record((|| Ok(gibbs_closed_form(&p, t)?.matrix().max_abs_diff(gibbs_oracle(&p, t)?.matrix())))());
    }
    vec![check]
}

fn channels_suite(rng: &mut ChaCha8Rng, n: usize, mutation: Option<Mutation>) -> Vec<Check> {
    let mut checks = vec![
        Check::new("dephasing closed form vs Kraus", tolerances::MATRIX_EQ),
        Check::new("phase flip closed form vs Kraus", tolerances::MATRIX_EQ),
    ];
    for (check, kind) in checks.iter_mut().zip([ChannelKind::Dephasing, ChannelKind::PhaseFlip]) {
        for _ in 0..n {
            let rho = random_axial_state(rng);
            let cfg = random_channel(rng, kind);
            check.record((|| {
                let closed = closed_form_evolution(&rho, &cfg, mutation)?;
                let kraus = apply_channel(&rho, &kraus_set(&cfg))?;
                Ok(closed.matrix().max_abs_diff(kraus.matrix()))
            })());
        }
    }
    checks
}

fn negativity_suite(rng: &mut ChaCha8Rng, n: usize) -> Vec<Check> {
    let mut random = Check::new("closed form vs spectral", 1e-10);
    let mut thermal = Check::new("evolved thermal states", 1e-10);
    for _ in 0..n {
        let rho = random_axial_state(rng);
        random.record((|| Ok((negativity_closed_form(&rho)? - negativity_spectral(&rho)?).abs()))());

        let p = random_params(rng);
        let t = random_temperature(rng);
        let kind = if rng.gen_bool(0.5) { ChannelKind::Dephasing } else { ChannelKind::PhaseFlip };
        let cfg = random_channel(rng, kind);
        thermal.record((|| {
            let rho = evolved_closed_form(&gibbs_closed_form(&p, t)?, &cfg)?;
            Ok((negativity_closed_form(&rho)? - negativity_spectral(&rho)?).abs())
        })());
    }
    vec![random, thermal]
}

fn discord_suite(rng: &mut ChaCha8Rng, n: usize) -> Vec<Check> {
    let mut lambda = Check::new("mode closed form vs lambda_max", 1e-8);
    let mut spectrum = Check::new("mode closed form vs spectrum", 1e-8);
    for _ in 0..n {
        let rho = random_axial_state(rng);
        let outcome = (|| {
            let numeric = channel_matrix(&rho)?.gram_spectrum()?;
            let modes = correlation_modes(&fano_bloch(&rho))?;
            let mut analytic = vec![0.0; numeric.len() - 3];
            analytic.extend(modes.spectrum());
            let worst = numeric.iter().zip(&analytic).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            Ok(((numeric[numeric.len() - 1] - modes.lambda_max()).abs(), worst))
        })();
        lambda.record(outcome.clone().map(|o| o.0));
        spectrum.record(outcome.map(|o| o.1));
    }
    vec![lambda, spectrum]
}

fn cptp_suite(rng: &mut ChaCha8Rng, n: usize) -> Vec<Check> {
    let mut completeness = Check::new("Kraus completeness", tolerances::KRAUS_COMPLETENESS);
    let mut hermitian = Check::new("output Hermiticity", tolerances::HERMITICITY);
    let mut trace = Check::new("output trace", tolerances::TRACE);
    let mut floor = Check::new("output eigenvalue floor", -tolerances::PSD_FLOOR);
    for _ in 0..n {
        let kind = if rng.gen_bool(0.5) { ChannelKind::Dephasing } else { ChannelKind::PhaseFlip };
        let ks = kraus_set(&random_channel(rng, kind));
        completeness.record(Ok(ks.completeness_deviation()));
        let rho = random_axial_state(rng);
        match apply_channel(&rho, &ks) {
            Ok(out) => {
                let m = out.matrix();
                hermitian.record(Ok(m.hermiticity_deviation()));
                trace.record(Ok((m.trace() - Complex64::new(1.0, 0.0)).norm()));
                floor.record(hermitian_eigenvalues(m).map(|s| (-s.min()).max(0.0)));
            }
            Err(e) => hermitian.record(Err(e)),
        }
    }
    vec![completeness, hermitian, trace, floor]
}

fn symmetry_suite(rng: &mut ChaCha8Rng, n: usize) -> Vec<Check> {
    let sz = total_sz();
    let mut commutator = Check::new("[H, Sz_total]", tolerances::MATRIX_EQ);
    let mut sparsity = Check::new("thermal axial sparsity", tolerances::SPARSITY);
    for _ in 0..n {
        let p = random_params(rng);
        commutator.record(build_hamiltonian(&p).map(|h| h.commutator(&sz).max_abs()));
        let t = random_temperature(rng);
        sparsity.record(gibbs_oracle(&p, t).map(|rho| forbidden_magnitude(rho.matrix())));
    }
    vec![commutator, sparsity]
}

fn forbidden_magnitude(m: &ComplexMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j && !is_axial_coherence(i, j) {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

pub fn run_suite(suite: Suite, options: &VerifyOptions) -> SuiteReport {
    let mut rng = suite.stream(options.seed);
    let n = options.samples;
    let checks = match suite {
        Suite::Gibbs => gibbs_suite(&mut rng, n),
        Suite::Channels => channels_suite(&mut rng, n, options.mutation),
        Suite::Negativity => negativity_suite(&mut rng, n),
        Suite::Discord => discord_suite(&mut rng, n),
        Suite::Cptp => cptp_suite(&mut rng, n),
        Suite::Symmetry => symmetry_suite(&mut rng, n),
    };
    SuiteReport { suite, samples: n, checks }
}

pub fn verify(suites: &[Suite], options: &VerifyOptions) -> VerifyReport {
    VerifyReport { suites: suites.iter().map(|&s| run_suite(s, options)).collect() }
}
