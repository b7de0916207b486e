//! Thermal states of an axially symmetric qubit-qutrit Hamiltonian, local
//! phase noise channels, and entanglement/discord measures.

pub mod channels;
pub mod config;
pub mod correlations;
pub mod error;
pub mod linalg;
pub mod model;
pub mod sweep;
pub mod thermal;
pub mod tolerances;
pub mod verify;

pub use channels::{apply_channel, evolved_closed_form, kraus_set, ChannelConfig, ChannelKind, DecayLaw, KrausSet};
pub use correlations::{discord, mutual_information, negativity_closed_form, negativity_spectral, DiscordBreakdown, LogBase};
pub use error::{Error, Result};
pub use linalg::ComplexMatrix;
pub use model::{build_hamiltonian, ModelParams};
pub use sweep::{run_sweep, SweepResult, SweepSpec};
pub use thermal::{gibbs_closed_form, gibbs_oracle, DensityMatrix6, Temperature};
