use std::path::PathBuf;
use std::process::ExitCode;

use axial_core::config::{load_config, load_state_config};
use axial_core::sweep::run_sweep;
use axial_core::verify::{verify, Mutation, Suite, VerifyOptions};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "axial", version, about = "Thermal qubit-qutrit correlations under local phase noise")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a temperature or time sweep and write CSV.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-check closed forms against numerical oracles.
    Verify {
        #[arg(long, value_enum)]
        suite: Option<SuiteArg>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = VerifyOptions::default().samples)]
        samples: usize,
        /// Inject a known defect to confirm the suites can fail.
        #[arg(long, value_enum, hide = true)]
        mutate: Option<MutationArg>,
    },
    /// Print the thermal (or evolved) 6x6 density matrix.
    State {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Gibbs,
    Channels,
    Negativity,
    Discord,
    Cptp,
    Symmetry,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Gibbs => Suite::Gibbs,
            SuiteArg::Channels => Suite::Channels,
            SuiteArg::Negativity => Suite::Negativity,
            SuiteArg::Discord => Suite::Discord,
            SuiteArg::Cptp => Suite::Cptp,
            SuiteArg::Symmetry => Suite::Symmetry,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    FlipL,
}

const USAGE_ERROR: u8 = 1;
const VERIFICATION_FAILURE: u8 = 2;

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(USAGE_ERROR)
}

/// `+1.2345678901e-03`: fixed width, unlike `{:e}` whose exponent has no padding.
fn scientific(x: f64) -> String {
    let formatted = format!("{x:+.10e}");
    let (mantissa, exponent) = formatted.split_once('e').expect("exponent present");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    format!("{mantissa}e{exponent:+03}")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(USAGE_ERROR) } else { ExitCode::SUCCESS };
        }
    };

    match cli.command {
        Command::Sweep { config, out } => {
            let spec = match load_config(&config) {
                Ok(spec) => spec,
                Err(e) => return fail(format!("{}: {e}", config.display())),
            };
            let result = match run_sweep(&spec) {
                Ok(r) => r,
                Err(e) => return fail(e),
            };
            if let Err(e) = result.write_csv(&out) {
                return fail(format!("cannot write {}: {e}", out.display()));
            }
            eprintln!("wrote {} rows x {} columns to {}", result.rows.len(), result.header.len(), out.display());
            ExitCode::SUCCESS
        }
        Command::Verify { suite, seed, samples, mutate } => {
            let defaults = VerifyOptions::default();
            let options = VerifyOptions {
                seed: seed.unwrap_or(defaults.seed),
                samples,
                mutation: mutate.map(|MutationArg::FlipL| Mutation::FlipDephasingL),
            };
            let suites = match suite {
                Some(s) => vec![Suite::from(s)],
                None => Suite::ALL.to_vec(),
            };
            let report = verify(&suites, &options);
            println!("seed {}", options.seed);
            println!("{report}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(VERIFICATION_FAILURE)
            }
        }
        Command::State { config } => {
            let spec = match load_state_config(&config) {
                Ok(spec) => spec,
                Err(e) => return fail(format!("{}: {e}", config.display())),
            };
            let rho = match spec.build() {
                Ok(rho) => rho,
                Err(e) => return fail(e),
            };
            let m = rho.matrix();
            for i in 0..m.rows() {
                let cells: Vec<String> =
                    (0..m.cols()).map(|j| format!("{} {}i", scientific(m[(i, j)].re), scientific(m[(i, j)].im))).collect();
                println!("{}", cells.join("   "));
            }
            ExitCode::SUCCESS
        }
    }
}
