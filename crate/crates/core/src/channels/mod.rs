//! Single-qubit CPTP channels, the stabilizer-channel dictionary, and the
//! minimal-negativity quasiprobability decomposition.

mod decompose;
mod dictionary;
mod family;
mod infidelity;
mod kraus;
mod ptm;
mod simplex;

pub use decompose::{decompose, StabilizerDecomposition};
pub use dictionary::{dictionary, dictionary_ptms, Dictionary, StabilizerChannelId};
pub use family::ChannelFamily;
pub use infidelity::{worst_case_infidelity, worst_case_infidelity_of_ptm, ChannelReport};
pub use kraus::{KrausChannel, Mat2};
pub use ptm::{kraus_to_ptm, PauliTransferMatrix};

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum ChannelError {
    #[error("channel is not trace preserving (deviation {0:.3e})")]
    NotTracePreserving(f64),
    #[error("matrix is not positive semidefinite")]
    NotPositive,
    #[error("could not draw a positive residual after bounded retries")]
    PositivityRetriesExhausted,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("unknown dictionary entry index {0}")]
    UnknownDictionaryEntry(usize),
    #[error("decomposition solver failed: {0}")]
    SolverFailed(String),
    #[error("decomposition does not reconstruct the input (deviation {0:.3e})")]
    ReconstructionFailed(f64),
    #[error("strength calibration failed: {0}")]
    CalibrationFailed(String),
}
