//! Statevector simulation with mid-circuit measurement and feedforward, and
//! worst-case-model Monte Carlo with Haar-random error injection.

mod engine;
mod haar;
mod histogram;
mod ideal;
mod noisy;
mod program;
mod state;

pub use haar::{haar_random_unitary, haar_unitary};
pub use histogram::{hamming_from_csv, ShotHistogram};
pub use ideal::{
    all_branches, exact_state, exact_state_forced, postselect_parity, sample_ideal, simulate_ideal, Branch,
    IdealMode, IdealOutcome, PostselectResult,
};
pub use noisy::{simulate_noisy, NoisyOptions, NoisyRunReport, ShotRecord};
pub use program::ErrorEvent;
pub use state::{fidelity, StateVector};

use crate::circuit::Circuit;
use crate::{Error, Result};

/// Resource limits shared by all simulation entry points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimOptions {
    /// Maximum number of unconsumed qubits in a returned state or bitstring.
    pub qubit_cap: usize,
    /// Maximum number of measurement branches in enumeration mode.
    pub branch_limit: usize,
    /// Maximum number of nonzero amplitudes held by the sparse engine.
    pub support_limit: usize,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions { qubit_cap: 24, branch_limit: 1 << 12, support_limit: 1 << 22 }
    }
}

fn output_qubits(circuit: &Circuit, opts: &SimOptions) -> Result<Vec<usize>> {
    let live = circuit.unconsumed_qubits();
    if live.len() > opts.qubit_cap {
        return Err(Error::QubitCap { live: live.len(), cap: opts.qubit_cap });
    }
    Ok(live)
}

fn shot_rng(seed: u64, shot: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}
