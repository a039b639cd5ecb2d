//! Circuit builders.
//!
//! Every builder returns circuits that pass [`Circuit::validate`]. Data qubits
//! always come first; auxiliary qubits are appended after them and are
//! measured and consumed before the circuit ends.
//!
//! [`Circuit::validate`]: crate::circuit::Circuit::validate

mod fanout;
mod ghz;
mod or_reduction;
mod w;

pub use fanout::{append_fanout, append_parity, build_fanout, build_parity};
pub use ghz::{build_ghz, GhzVariant};
pub use or_reduction::{build_mu_state, build_or_reduction, mu_state, or_width, MuCircuit, OrReductionCircuit};
pub use w::{build_w_approx_postselect, build_w_nonadaptive, w_angle, w_approx_angle, WApproxCircuit};
