//! Estimation of expectation values of noisy Clifford circuits under general
//! single-qubit CPTP noise, within the stabilizer formalism.
//!
//! Noise channels are decomposed into quasiprobability mixtures of stabilizer
//! channels; expectation values (typically logical fidelities of
//! error-correction protocols) are then estimated by stratified,
//! self-normalized importance sampling over fault configurations, with
//! rejection resampling to reuse sample pools across noise strengths.

pub mod channels;
pub mod pauli;
pub mod scalar;
pub mod tableau;

pub use pauli::{Axis, PauliString, Sign};
pub use scalar::Scalar;
pub use tableau::{CliffordOp, StabilizerEchelon, Tableau, TableauError};
