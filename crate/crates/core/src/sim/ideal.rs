use std::collections::BTreeMap;

use super::engine::Machine;
use super::noisy::run_shots;
use super::program::{finish_measure, Outcomes, Program};
use super::{output_qubits, shot_rng, ShotHistogram, SimOptions, StateVector};
use crate::circuit::GateOp;
use crate::protocols::WApproxCircuit;
use crate::{Error, Result};

const CERTAIN: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealMode {
    /// Post-circuit state with measurement branches drawn from `seed`.
    Exact { seed: u64 },
    /// Every measurement branch with its probability.
    Branches,
    /// Final Z-basis measurement histogram.
    Sampled { shots: u64, seed: u64 },
}

#[derive(Debug, Clone)]
pub enum IdealOutcome {
    State(StateVector),
    Branches(Vec<Branch>),
    Histogram(ShotHistogram),
}

/// One measurement branch: recorded clbit values and the resulting state.
#[derive(Debug, Clone)]
pub struct Branch {
    pub probability: f64,
    pub outcomes: BTreeMap<usize, bool>,
    pub state: StateVector,
}

pub fn simulate_ideal(circuit: &crate::circuit::Circuit, mode: IdealMode, opts: &SimOptions) -> Result<IdealOutcome> {
    Ok(match mode {
        IdealMode::Exact { seed } => IdealOutcome::State(exact_state(circuit, seed, opts)?),
        IdealMode::Branches => IdealOutcome::Branches(all_branches(circuit, opts)?),
        IdealMode::Sampled { shots, seed } => IdealOutcome::Histogram(sample_ideal(circuit, shots, seed, opts)?),
    })
}

pub fn exact_state(circuit: &crate::circuit::Circuit, seed: u64, opts: &SimOptions) -> Result<StateVector> {
    exact_state_forced(circuit, &BTreeMap::new(), seed, opts).map(|(s, _)| s)
}

/// Exact state with the measurements writing the given clbits forced to the
/// given outcomes; also returns the product of the forced outcome
/// probabilities.
pub fn exact_state_forced(
    circuit: &crate::circuit::Circuit,
    forced: &BTreeMap<usize, bool>,
    seed: u64,
    opts: &SimOptions,
) -> Result<(StateVector, f64)> {
    let qubits = output_qubits(circuit, opts)?;
    let program = Program::ideal(circuit, opts.support_limit)?;
    let shot = program.run(&mut shot_rng(seed, 0), Outcomes::Force(forced))?;
    Ok((shot.machine.to_dense(&qubits), shot.forced_probability))
}

pub fn all_branches(circuit: &crate::circuit::Circuit, opts: &SimOptions) -> Result<Vec<Branch>> {
    let qubits = output_qubits(circuit, opts)?;
    let program = Program::ideal(circuit, opts.support_limit)?;
    let mut out = Vec::new();
    explore(&program, program.fresh(), 0, 1.0, BTreeMap::new(), &qubits, opts.branch_limit, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn explore(
    program: &Program<'_>,
    mut machine: Machine,
    mut pos: usize,
    probability: f64,
    mut outcomes: BTreeMap<usize, bool>,
    qubits: &[usize],
    limit: usize,
    out: &mut Vec<Branch>,
) -> Result<()> {
    let mut rng = shot_rng(0, 0);
    while pos < program.len() {
        let (j, op) = program.op_at(pos);
        pos += 1;
        let GateOp::Measure { qubit, clbit, consume } = *op else {
            program.exec(&mut machine, j, false, &mut rng)?;
            continue;
        };
        let p1 = machine.prob_one(qubit);
        if p1 > CERTAIN && p1 < 1.0 - CERTAIN {
            for (outcome, p) in [(false, 1.0 - p1), (true, p1)] {
                let mut m = machine.clone();
                finish_measure(&mut m, qubit, clbit, consume, outcome, p1, false)?;
                let mut o = outcomes.clone();
                o.insert(clbit, outcome);
                explore(program, m, pos, probability * p, o, qubits, limit, out)?;
            }
            return Ok(());
        }
        let outcome = p1 >= 1.0 - CERTAIN;
        finish_measure(&mut machine, qubit, clbit, consume, outcome, p1, false)?;
        outcomes.insert(clbit, outcome);
    }
    if out.len() >= limit {
        return Err(Error::BranchLimit { limit });
    }
    out.push(Branch { probability, outcomes, state: machine.to_dense(qubits) });
    Ok(())
}

pub fn sample_ideal(circuit: &crate::circuit::Circuit, shots: u64, seed: u64, opts: &SimOptions) -> Result<ShotHistogram> {
    let qubits = output_qubits(circuit, opts)?;
    let program = Program::ideal(circuit, opts.support_limit)?;
    let records = run_shots(&program, &qubits, shots, seed)?;
    let mut hist = ShotHistogram::new();
    for r in records {
        hist.record(r.bits);
    }
    Ok(hist)
}

#[derive(Debug, Clone)]
pub struct PostselectResult {
    pub acceptance_rate: f64,
    pub fidelity: f64,
    pub state: StateVector,
}

/// Exact acceptance rate of the odd-parity outcome and the fidelity of the
/// accepted data state with `W_n`.
pub fn postselect_parity(w: &WApproxCircuit, opts: &SimOptions) -> Result<PostselectResult> {
    let forced = BTreeMap::from([(w.parity_clbit, true)]);
    let (state, acceptance_rate) = exact_state_forced(&w.circuit, &forced, 0, opts)?;
    if state.qubit_map != w.data {
        return Err(Error::DimensionMismatch("postselected state is not confined to the data register".into()));
    }
    let fidelity = super::fidelity(&state, &StateVector::w(w.data.len()))?;
    Ok(PostselectResult { acceptance_rate, fidelity, state })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;
    use crate::sim::fidelity;

    #[test]
    fn bell_branches() {
        let mut c = Circuit::new(3, 1);
        c.h(0).cnot(0, 1).cnot(1, 2).measure(1, 0, true);
        let b = all_branches(&c, &SimOptions::default()).unwrap();
        assert_eq!(b.len(), 2);
        for br in &b {
            assert!((br.probability - 0.5).abs() < 1e-12);
            let bits = if br.outcomes[&0] { "11" } else { "00" };
            assert!((fidelity(&br.state, &StateVector::basis(2, bits).unwrap()).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn branch_limit() {
        let mut c = Circuit::new(3, 3);
        for q in 0..3 {
            c.h(q).measure(q, q, false);
        }
        let opts = SimOptions { branch_limit: 4, ..SimOptions::default() };
        assert!(matches!(all_branches(&c, &opts), Err(Error::BranchLimit { limit: 4 })));
        assert_eq!(all_branches(&c, &SimOptions::default()).unwrap().len(), 8);
    }

    #[test]
    fn qubit_cap() {
        let c = Circuit::new(5, 0);
        let opts = SimOptions { qubit_cap: 4, ..SimOptions::default() };
        assert!(matches!(exact_state(&c, 0, &opts), Err(Error::QubitCap { live: 5, cap: 4 })));
    }

    #[test]
    fn forced_probability() {
        let mut c = Circuit::new(1, 1);
        c.ry(1.0, 0).measure(0, 0, false);
        let forced = BTreeMap::from([(0, true)]);
        let (s, p) = exact_state_forced(&c, &forced, 3, &SimOptions::default()).unwrap();
        assert!((p - (0.5f64).sin().powi(2)).abs() < 1e-12);
        assert!((s.amplitudes[1].norm() - 1.0).abs() < 1e-12);
    }
}
