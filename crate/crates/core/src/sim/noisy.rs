use rayon::prelude::*;
use serde::Serialize;

use super::program::{ErrorEvent, Outcomes, Program};
use super::{output_qubits, shot_rng, ShotHistogram, SimOptions};
use crate::circuit::{decompose_controlled_1q, Circuit};
use crate::noise::SuccessTerms;
use crate::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NoisyOptions {
    pub sim: SimOptions,
    /// Keep every shot's bitstring and error events in the report.
    pub log_events: bool,
    /// Only shots whose recorded `(clbit, value)` matches enter the histogram.
    pub postselect: Option<(usize, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShotRecord {
    pub shot: u64,
    pub bits: String,
    pub clbits: Vec<bool>,
    pub events: Vec<ErrorEvent>,
}

impl ShotRecord {
    pub fn is_clean(&self) -> bool {
        self.events.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoisyRunReport {
    pub histogram: ShotHistogram,
    pub shots: u64,
    pub clean_shots: u64,
    pub clean_fraction: f64,
    /// Shots passing the postselection filter (all shots without one).
    pub accepted: u64,
    pub error_event_log: Option<Vec<ShotRecord>>,
}

pub(crate) fn run_shots(
    program: &Program<'_>,
    qubits: &[usize],
    shots: u64,
    seed: u64,
) -> Result<Vec<ShotRecord>> {
    (0..shots)
        .into_par_iter()
        .map(|shot| {
            let mut rng = shot_rng(seed, shot);
            let r = program.run(&mut rng, Outcomes::Sample)?;
            let bits = r.machine.sample(qubits, &mut rng);
            Ok(ShotRecord { shot, bits, clbits: r.machine.clbits, events: r.events })
        })
        .collect()
}

/// Worst-case-model Monte Carlo.
///
/// Controlled rotations are decomposed first. Error sites are those of the
/// circuit's schedule, so the clean-shot probability equals the counted
/// success probability.
pub fn simulate_noisy(
    circuit: &Circuit,
    terms: &SuccessTerms,
    shots: u64,
    seed: u64,
    opts: &NoisyOptions,
) -> Result<NoisyRunReport> {
    if shots == 0 {
        return Err(Error::domain("shots must be at least 1"));
    }
    let circuit = decompose_controlled_1q(circuit);
    let qubits = output_qubits(&circuit, &opts.sim)?;
    if let Some((c, _)) = opts.postselect {
        if c >= circuit.num_clbits {
            return Err(Error::domain(format!("postselection clbit {c} out of range")));
        }
    }
    let program = Program::noisy(&circuit, *terms, opts.sim.support_limit)?;
    let records = run_shots(&program, &qubits, shots, seed)?;
    let mut histogram = ShotHistogram::new();
    let mut clean_shots = 0;
    let mut accepted = 0;
    for r in &records {
        if r.is_clean() {
            clean_shots += 1;
        }
        if opts.postselect.is_none_or(|(c, v)| r.clbits[c] == v) {
            accepted += 1;
            histogram.record(r.bits.clone());
        }
    }
    Ok(NoisyRunReport {
        histogram,
        shots,
        clean_shots,
        clean_fraction: clean_shots as f64 / shots as f64,
        accepted,
        error_event_log: opts.log_events.then_some(records),
    })
}
