use thiserror::Error;

use crate::circuit::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid circuit: {0}")]
    Invalid(ValidationReport),

    #[error("op {op}: controlled rotations must be decomposed before scheduling")]
    Undecomposed { op: usize },

    #[error("{0}")]
    Domain(String),

    #[error("circuit leaves {live} unmeasured qubits, above the statevector cap of {cap}")]
    QubitCap { live: usize, cap: usize },

    #[error("more than {limit} qubits are simultaneously live in the sparse engine")]
    SlotLimit { limit: usize },

    #[error("state support grew beyond {limit} basis states")]
    SupportLimit { limit: usize },

    #[error("measurement branching exceeds {limit} branches")]
    BranchLimit { limit: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("calibration: {0}")]
    Calibration(String),

    #[error("histogram: {0}")]
    Histogram(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
