use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use super::engine::Machine;
use super::haar::haar_unitary;
use crate::circuit::{controlled_matrix, dependencies, schedule, Circuit, Gate1, GateOp, LayerClass};
use crate::noise::{SuccessTerms, Term};
use crate::{Error, Result};

/// One injected error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorEvent {
    pub layer: usize,
    pub term: &'static str,
    pub op: Option<usize>,
    pub qubits: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
struct IdleSite {
    layer: usize,
    qubit: usize,
    term: Term,
}

#[derive(Debug, Clone)]
struct NoiseSites {
    terms: SuccessTerms,
    before: Vec<Vec<IdleSite>>,
    op_site: Vec<Option<(usize, Term)>>,
    trailing: Vec<IdleSite>,
}

pub(crate) enum Outcomes<'b> {
    Sample,
    Force(&'b BTreeMap<usize, bool>),
}

pub(crate) struct ShotResult {
    pub machine: Machine,
    pub events: Vec<ErrorEvent>,
    pub forced_probability: f64,
}

/// A circuit with its execution order and, for noisy runs, its error sites.
pub(crate) struct Program<'a> {
    pub circuit: &'a Circuit,
    order: Vec<usize>,
    noise: Option<NoiseSites>,
    support_limit: usize,
}

/// Dependency-respecting order that reaches each measurement as early as
/// possible, keeping few qubits live at once.
fn execution_order(circuit: &Circuit) -> Vec<usize> {
    let preds = dependencies(circuit);
    let n = circuit.ops.len();
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let measures = (0..n).filter(|&i| matches!(circuit.ops[i], GateOp::Measure { .. }));
    for root in measures.chain(0..n) {
        if done[root] {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (op, next) = *top;
            if let Some(&p) = preds[op].get(next) {
                top.1 += 1;
                if !done[p] {
                    done[p] = true;
                    stack.push((p, 0));
                }
            } else {
                stack.pop();
                done[op] = true;
                order.push(op);
            }
        }
    }
    order
}

fn noise_sites(circuit: &Circuit, terms: SuccessTerms) -> Result<NoiseSites> {
    let sched = schedule(circuit, None)?;
    let n_ops = circuit.ops.len();
    let mut op_layer = vec![0; n_ops];
    let mut op_site = vec![None; n_ops];
    for (l, layer) in sched.layers.iter().enumerate() {
        let half = layer.conditional.div_ceil(2);
        let mut seen_cond = 0;
        for &j in &layer.ops {
            op_layer[j] = l;
            op_site[j] = match (&circuit.ops[j], layer.class) {
                (GateOp::Conditional { .. }, _) => {
                    seen_cond += 1;
                    Some((l, if seen_cond <= half { Term::S } else { Term::Is }))
                }
                (_, LayerClass::Single) => Some((l, Term::S)),
                (_, LayerClass::Double) => Some((l, Term::D)),
                (_, LayerClass::Measure) => Some((l, Term::M)),
                (_, LayerClass::Classical) => None,
            };
        }
    }
    let mut per_qubit: Vec<Vec<(usize, usize)>> = vec![Vec::new(); circuit.num_qubits];
    for (j, op) in circuit.ops.iter().enumerate() {
        for q in op.qubits() {
            per_qubit[q].push((op_layer[j], j));
        }
    }
    let mut before = vec![Vec::new(); n_ops];
    let mut trailing = Vec::new();
    for (l, layer) in sched.layers.iter().enumerate() {
        let term = match layer.class {
            LayerClass::Single => Term::Is,
            LayerClass::Double => Term::Id,
            LayerClass::Measure => Term::Im,
            LayerClass::Classical => Term::Ic,
        };
        for &q in &layer.idle {
            let site = IdleSite { layer: l, qubit: q, term };
            let list = &per_qubit[q];
            let at = list.partition_point(|&(ol, _)| ol <= l);
            match list.get(at) {
                Some(&(_, j)) => before[j].push(site),
                None => trailing.push(site),
            }
        }
    }
    Ok(NoiseSites { terms, before, op_site, trailing })
}

fn fails<R: Rng + ?Sized>(rng: &mut R, p: f64) -> bool {
    p < 1.0 && rng.random::<f64>() >= p
}

fn parity(clbits: &[bool], sources: &[usize]) -> bool {
    sources.iter().fold(false, |acc, &c| acc ^ clbits[c])
}

fn apply_gate(m: &mut Machine, gate: &Gate1, q: usize) -> Result<()> {
    match gate {
        Gate1::X => m.x(q),
        Gate1::Z => m.z(q),
        g => m.apply1(q, &g.matrix()),
    }
}

impl<'a> Program<'a> {
    pub fn ideal(circuit: &'a Circuit, support_limit: usize) -> Result<Self> {
        circuit.validate().map_err(Error::Invalid)?;
        Ok(Program { circuit, order: execution_order(circuit), noise: None, support_limit })
    }

    /// Requires a decomposed circuit; error sites come from its schedule.
    pub fn noisy(circuit: &'a Circuit, terms: SuccessTerms, support_limit: usize) -> Result<Self> {
        terms.check()?;
        let noise = noise_sites(circuit, terms)?;
        Ok(Program { circuit, order: execution_order(circuit), noise: Some(noise), support_limit })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn fresh(&self) -> Machine {
        Machine::new(self.circuit.num_qubits, self.circuit.num_clbits, self.support_limit)
    }

    pub fn op_at(&self, pos: usize) -> (usize, &GateOp) {
        let j = self.order[pos];
        (j, &self.circuit.ops[j])
    }

    pub fn run<R: Rng + ?Sized>(&self, rng: &mut R, outcomes: Outcomes<'_>) -> Result<ShotResult> {
        let mut machine = self.fresh();
        let mut events = Vec::new();
        let mut forced_probability = 1.0;
        for pos in 0..self.order.len() {
            let j = self.order[pos];
            let mut failed = false;
            if let Some(noise) = &self.noise {
                for site in &noise.before[j] {
                    self.idle_error(&mut machine, site, noise, rng, &mut events)?;
                }
                if let Some((layer, term)) = noise.op_site[j] {
                    if fails(rng, noise.terms.get(term)) {
                        failed = true;
                        let qubits = self.circuit.ops[j].qubits();
                        events.push(ErrorEvent { layer, term: term.symbol(), op: Some(j), qubits });
                    }
                }
            }
            if let GateOp::Measure { qubit, clbit, consume } = self.circuit.ops[j] {
                let p1 = machine.prob_one(qubit);
                let outcome = match &outcomes {
                    Outcomes::Force(map) if map.contains_key(&clbit) => {
                        let o = map[&clbit];
                        forced_probability *= if o { p1 } else { 1.0 - p1 };
                        o
                    }
                    _ => rng.random::<f64>() < p1,
                };
                finish_measure(&mut machine, qubit, clbit, consume, outcome, p1, failed)?;
            } else {
                self.exec(&mut machine, j, failed, rng)?;
            }
        }
        if let Some(noise) = &self.noise {
            for site in &noise.trailing {
                self.idle_error(&mut machine, site, noise, rng, &mut events)?;
            }
        }
        Ok(ShotResult { machine, events, forced_probability })
    }

    fn idle_error<R: Rng + ?Sized>(
        &self,
        machine: &mut Machine,
        site: &IdleSite,
        noise: &NoiseSites,
        rng: &mut R,
        events: &mut Vec<ErrorEvent>,
    ) -> Result<()> {
        if fails(rng, noise.terms.get(site.term)) {
            machine.apply1(site.qubit, &haar_unitary::<2, R>(rng))?;
            events.push(ErrorEvent { layer: site.layer, term: site.term.symbol(), op: None, qubits: vec![site.qubit] });
        }
        Ok(())
    }

    /// Executes a non-measurement op.
    pub fn exec<R: Rng + ?Sized>(&self, m: &mut Machine, j: usize, failed: bool, rng: &mut R) -> Result<()> {
        match &self.circuit.ops[j] {
            GateOp::Single { qubit, .. } | GateOp::Conditional { qubit, .. } if failed => {
                m.apply1(*qubit, &haar_unitary::<2, R>(rng))
            }
            GateOp::Single { gate, qubit } => apply_gate(m, gate, *qubit),
            GateOp::Conditional { condition, gate, qubit } => {
                if parity(&m.clbits, condition) {
                    apply_gate(m, gate, *qubit)
                } else {
                    Ok(())
                }
            }
            GateOp::Cnot { control, target } if failed => m.apply2(*control, *target, &haar_unitary::<4, R>(rng)),
            GateOp::Cnot { control, target } => m.cnot(*control, *target),
            GateOp::ControlledRotation { axis, angle, control, target } => {
                m.apply2(*control, *target, &controlled_matrix(&axis.rotation(*angle).matrix()))
            }
            GateOp::Classical { outputs } => {
                for o in outputs {
                    let v = parity(&m.clbits, &o.sources);
                    m.clbits[o.clbit] = v;
                }
                Ok(())
            }
            GateOp::Measure { .. } => unreachable!("measurements are resolved by the caller"),
        }
    }
}

/// Collapses onto `outcome`, records it (flipped when `failed`), and frees a
/// consumed qubit.
pub(crate) fn finish_measure(
    m: &mut Machine,
    qubit: usize,
    clbit: usize,
    consume: bool,
    outcome: bool,
    p1: f64,
    failed: bool,
) -> Result<()> {
    m.collapse(qubit, outcome, if outcome { p1 } else { 1.0 - p1 })?;
    m.clbits[clbit] = outcome ^ failed;
    if consume {
        m.release(qubit, outcome);
    }
    Ok(())
}
