//! Adaptive and non-adaptive state preparation under a worst-case error model.
//!
//! The crate is organised bottom-up:
//!
//! - [`circuit`]: the circuit IR (gates, mid-circuit measurement, classical
//!   feedforward), validation, the line-oriented text format, decomposition of
//!   controlled rotations and ASAP layering into homogeneous layers.
//! - [`protocols`]: builders for the GHZ variants, the non-adaptive W cascade,
//!   the measurement-based fanout and parity gates, the μ-state and
//!   OR-reduction subcircuits and the probabilistic approximate W circuit.
//! - [`noise`]: the seven success terms, integer exponent vectors, the
//!   layer-counting oracle and calibration ingestion.
//! - [`analytics`]: closed-form exponents for every protocol, crossover
//!   thresholds, the first-order reduction used by the theorem checks and
//!   runtime estimates.
//! - [`sim`]: sparse statevector simulation with feedforward, Haar-random error
//!   injection, histograms and fidelities.

pub mod analytics;
pub mod circuit;
mod error;
pub mod linalg;
pub mod noise;
pub mod protocols;
pub mod sim;

pub use error::{Error, Result};
