use std::fmt::Write as _;

use super::{Circuit, GateOp};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LayerClass {
    Single,
    Double,
    Measure,
    Classical,
}

impl LayerClass {
    pub const ORDER: [LayerClass; 4] = [LayerClass::Single, LayerClass::Double, LayerClass::Measure, LayerClass::Classical];

    pub fn name(self) -> &'static str {
        match self {
            LayerClass::Single => "SINGLE",
            LayerClass::Double => "DOUBLE",
            LayerClass::Measure => "MEASURE",
            LayerClass::Classical => "CLASSICAL",
        }
    }
}

/// One homogeneous time step.
///
/// `active` holds the qubits touched by the layer's ops, `idle` the remaining
/// live qubits. `conditional` counts the conditional ops of a single-qubit
/// layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub class: LayerClass,
    pub ops: Vec<usize>,
    pub active: Vec<usize>,
    pub idle: Vec<usize>,
    pub conditional: usize,
}

impl Layer {
    pub fn live(&self) -> usize {
        self.active.len() + self.idle.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Schedule {
    pub layers: Vec<Layer>,
}

impl Schedule {
    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Op indices in execution order.
    pub fn replay(&self) -> Vec<usize> {
        self.layers.iter().flat_map(|l| l.ops.iter().copied()).collect()
    }

    /// Human-readable per-layer listing.
    pub fn trace(&self, circuit: &Circuit) -> String {
        let mut out = String::new();
        for (t, layer) in self.layers.iter().enumerate() {
            let ops: Vec<String> = layer.ops.iter().map(|&i| super::text::op_to_text(&circuit.ops[i])).collect();
            let _ = writeln!(
                out,
                "t={} {} active={} idle={} cond={} | {}",
                t + 1,
                layer.class.name(),
                layer.active.len(),
                layer.idle.len(),
                layer.conditional,
                ops.join("; ")
            );
        }
        out
    }
}

fn class_of(op: &GateOp, index: usize) -> Result<LayerClass> {
    Ok(match op {
        GateOp::Single { .. } | GateOp::Conditional { .. } => LayerClass::Single,
        GateOp::Cnot { .. } => LayerClass::Double,
        GateOp::Measure { .. } => LayerClass::Measure,
        GateOp::Classical { .. } => LayerClass::Classical,
        GateOp::ControlledRotation { .. } => return Err(Error::Undecomposed { op: index }),
    })
}

/// Predecessor lists: shared qubits and read-after-write on clbits.
pub(crate) fn dependencies(circuit: &Circuit) -> Vec<Vec<usize>> {
    let mut last_on_qubit: Vec<Option<usize>> = vec![None; circuit.num_qubits];
    let mut writer: Vec<Option<usize>> = vec![None; circuit.num_clbits];
    let mut preds = Vec::with_capacity(circuit.ops.len());
    for (i, op) in circuit.ops.iter().enumerate() {
        let mut p = Vec::new();
        for q in op.qubits() {
            if let Some(j) = last_on_qubit[q] {
                p.push(j);
            }
            last_on_qubit[q] = Some(i);
        }
        for c in op.reads() {
            if let Some(j) = writer[c] {
                p.push(j);
            }
        }
        for c in op.writes() {
            writer[c] = Some(i);
        }
        p.sort_unstable();
        p.dedup();
        preds.push(p);
    }
    preds
}

/// ASAP layering into homogeneous layers.
///
/// Every round takes the set of ops whose predecessors have all completed and
/// emits one layer per class present, in the order single, double, measure,
/// classical. With `max_parallel_2q = Some(m)` a double layer holds at most
/// `m` CNOTs and the surplus forms further double layers of the same round.
pub fn schedule(circuit: &Circuit, max_parallel_2q: Option<usize>) -> Result<Schedule> {
    circuit.validate().map_err(Error::Invalid)?;
    if max_parallel_2q == Some(0) {
        return Err(Error::domain("max_parallel_2q must be at least 1"));
    }
    let classes = circuit
        .ops
        .iter()
        .enumerate()
        .map(|(i, op)| class_of(op, i))
        .collect::<Result<Vec<_>>>()?;

    let preds = dependencies(circuit);
    let mut succs = vec![Vec::new(); circuit.ops.len()];
    let mut pending: Vec<usize> = preds.iter().map(Vec::len).collect();
    for (i, p) in preds.iter().enumerate() {
        for &j in p {
            succs[j].push(i);
        }
    }

    let mut live = vec![true; circuit.num_qubits];
    let mut ready: Vec<usize> = (0..circuit.ops.len()).filter(|&i| pending[i] == 0).collect();
    let mut layers = Vec::new();

    while !ready.is_empty() {
        for class in LayerClass::ORDER {
            let members: Vec<usize> = ready.iter().copied().filter(|&i| classes[i] == class).collect();
            if members.is_empty() {
                continue;
            }
            let chunk = match (class, max_parallel_2q) {
                (LayerClass::Double, Some(m)) => m,
                _ => members.len(),
            };
            for ops in members.chunks(chunk) {
                layers.push(make_layer(circuit, class, ops, &live));
            }
            if class == LayerClass::Measure {
                for &i in &members {
                    if let GateOp::Measure { qubit, consume: true, .. } = circuit.ops[i] {
                        live[qubit] = false;
                    }
                }
            }
        }
        let mut next = Vec::new();
        for &i in &ready {
            for &s in &succs[i] {
                pending[s] -= 1;
                if pending[s] == 0 {
                    next.push(s);
                }
            }
        }
        next.sort_unstable();
        ready = next;
    }
    Ok(Schedule { layers })
}

fn make_layer(circuit: &Circuit, class: LayerClass, ops: &[usize], live: &[bool]) -> Layer {
    let mut touched = vec![false; circuit.num_qubits];
    let mut conditional = 0;
    for &i in ops {
        for q in circuit.ops[i].qubits() {
            touched[q] = true;
        }
        if matches!(circuit.ops[i], GateOp::Conditional { .. }) {
            conditional += 1;
        }
    }
    let active = (0..circuit.num_qubits).filter(|&q| touched[q]).collect();
    let idle = (0..circuit.num_qubits).filter(|&q| live[q] && !touched[q]).collect();
    Layer { class, ops: ops.to_vec(), active, idle, conditional }
}
