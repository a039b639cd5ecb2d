//! Circuit intermediate representation.
//!
//! A [`Circuit`] is an ordered program over qubits and classical bits. Besides
//! unitary gates it supports mid-circuit measurement (optionally consuming the
//! measured qubit), pure XOR-linear classical computation, and single-qubit
//! gates conditioned on the parity of a set of classical bits.

mod decompose;
mod schedule;
mod text;

use std::fmt;

pub use decompose::decompose_controlled_1q;
pub use schedule::{schedule, Layer, LayerClass, Schedule};
pub(crate) use schedule::dependencies;
pub use text::{from_text, to_text};

use crate::linalg::{self, Mat2, Mat4, ONE, ZERO};

/// Single-qubit gate kinds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate1 {
    H,
    X,
    Z,
    Ry(f64),
    Rz(f64),
    Generic(Mat2),
}

impl Gate1 {
    pub fn matrix(&self) -> Mat2 {
        match *self {
            Gate1::H => linalg::hadamard(),
            Gate1::X => linalg::pauli_x(),
            Gate1::Z => linalg::pauli_z(),
            Gate1::Ry(t) => linalg::ry(t),
            Gate1::Rz(t) => linalg::rz(t),
            Gate1::Generic(m) => m,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate1::H => "H",
            Gate1::X => "X",
            Gate1::Z => "Z",
            Gate1::Ry(_) => "RY",
            Gate1::Rz(_) => "RZ",
            Gate1::Generic(_) => "U",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Y,
    Z,
}

impl Axis {
    pub fn rotation(self, angle: f64) -> Gate1 {
        match self {
            Axis::Y => Gate1::Ry(angle),
            Axis::Z => Gate1::Rz(angle),
        }
    }
}

/// One output bit of a classical computation: the XOR of `sources`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XorOutput {
    pub clbit: usize,
    pub sources: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateOp {
    Single { gate: Gate1, qubit: usize },
    Cnot { control: usize, target: usize },
    /// Controlled rotation; must be decomposed before scheduling.
    ControlledRotation { axis: Axis, angle: f64, control: usize, target: usize },
    Measure { qubit: usize, clbit: usize, consume: bool },
    /// XOR-linear map from measured bits to fresh bits. Never fails.
    Classical { outputs: Vec<XorOutput> },
    /// Applies `gate` iff the XOR of `condition` is 1.
    Conditional { condition: Vec<usize>, gate: Gate1, qubit: usize },
}

impl GateOp {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            GateOp::Single { qubit, .. } | GateOp::Conditional { qubit, .. } => vec![*qubit],
            GateOp::Measure { qubit, .. } => vec![*qubit],
            GateOp::Cnot { control, target } | GateOp::ControlledRotation { control, target, .. } => {
                vec![*control, *target]
            }
            GateOp::Classical { .. } => Vec::new(),
        }
    }

    /// Classical bits read by the op.
    pub fn reads(&self) -> Vec<usize> {
        match self {
            GateOp::Classical { outputs } => {
                let mut v: Vec<usize> = outputs.iter().flat_map(|o| o.sources.iter().copied()).collect();
                v.sort_unstable();
                v.dedup();
                v
            }
            GateOp::Conditional { condition, .. } => condition.clone(),
            _ => Vec::new(),
        }
    }

    /// Classical bits written by the op.
    pub fn writes(&self) -> Vec<usize> {
        match self {
            GateOp::Measure { clbit, .. } => vec![*clbit],
            GateOp::Classical { outputs } => outputs.iter().map(|o| o.clbit).collect(),
            _ => Vec::new(),
        }
    }
}

/// Unitary of a controlled rotation, basis index `2·control + target`.
pub fn controlled_matrix(u: &Mat2) -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    m[0][0] = ONE;
    m[1][1] = ONE;
    for i in 0..2 {
        for j in 0..2 {
            m[2 + i][2 + j] = u[i][j];
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    pub num_qubits: usize,
    pub num_clbits: usize,
    pub ops: Vec<GateOp>,
}

impl Circuit {
    pub fn new(num_qubits: usize, num_clbits: usize) -> Self {
        Circuit { num_qubits, num_clbits, ops: Vec::new() }
    }

    pub fn alloc_qubit(&mut self) -> usize {
        self.num_qubits += 1;
        self.num_qubits - 1
    }

    pub fn alloc_qubits(&mut self, n: usize) -> Vec<usize> {
        (0..n).map(|_| self.alloc_qubit()).collect()
    }

    pub fn alloc_clbit(&mut self) -> usize {
        self.num_clbits += 1;
        self.num_clbits - 1
    }

    pub fn push(&mut self, op: GateOp) -> &mut Self {
        self.ops.push(op);
        self
    }

    pub fn gate(&mut self, gate: Gate1, qubit: usize) -> &mut Self {
        self.push(GateOp::Single { gate, qubit })
    }

    pub fn h(&mut self, q: usize) -> &mut Self {
        self.gate(Gate1::H, q)
    }

    pub fn x(&mut self, q: usize) -> &mut Self {
        self.gate(Gate1::X, q)
    }

    pub fn z(&mut self, q: usize) -> &mut Self {
        self.gate(Gate1::Z, q)
    }

    pub fn ry(&mut self, theta: f64, q: usize) -> &mut Self {
        self.gate(Gate1::Ry(theta), q)
    }

    pub fn rz(&mut self, theta: f64, q: usize) -> &mut Self {
        self.gate(Gate1::Rz(theta), q)
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> &mut Self {
        self.push(GateOp::Cnot { control, target })
    }

    pub fn cry(&mut self, angle: f64, control: usize, target: usize) -> &mut Self {
        self.push(GateOp::ControlledRotation { axis: Axis::Y, angle, control, target })
    }

    pub fn crz(&mut self, angle: f64, control: usize, target: usize) -> &mut Self {
        self.push(GateOp::ControlledRotation { axis: Axis::Z, angle, control, target })
    }

    pub fn measure(&mut self, qubit: usize, clbit: usize, consume: bool) -> &mut Self {
        self.push(GateOp::Measure { qubit, clbit, consume })
    }

    pub fn classical(&mut self, outputs: Vec<XorOutput>) -> &mut Self {
        self.push(GateOp::Classical { outputs })
    }

    pub fn cond(&mut self, condition: Vec<usize>, gate: Gate1, qubit: usize) -> &mut Self {
        self.push(GateOp::Conditional { condition, gate, qubit })
    }

    /// Copy of the circuit with X gates prepended on the given qubits.
    pub fn with_basis_input(&self, ones: &[usize]) -> Circuit {
        let mut ops: Vec<GateOp> = ones.iter().map(|&q| GateOp::Single { gate: Gate1::X, qubit: q }).collect();
        ops.extend(self.ops.iter().cloned());
        Circuit { num_qubits: self.num_qubits, num_clbits: self.num_clbits, ops }
    }

    /// Qubits that are never consumed by a measurement, ascending.
    pub fn unconsumed_qubits(&self) -> Vec<usize> {
        let mut consumed = vec![false; self.num_qubits];
        for op in &self.ops {
            if let GateOp::Measure { qubit, consume: true, .. } = op {
                if *qubit < self.num_qubits {
                    consumed[*qubit] = true;
                }
            }
        }
        (0..self.num_qubits).filter(|&q| !consumed[q]).collect()
    }

    pub fn counts(&self) -> OpCounts {
        let mut c = OpCounts::default();
        for op in &self.ops {
            match op {
                GateOp::Single { gate, .. } => match gate {
                    Gate1::H => c.h += 1,
                    Gate1::X => c.x += 1,
                    Gate1::Z => c.z += 1,
                    Gate1::Ry(_) => c.ry += 1,
                    Gate1::Rz(_) => c.rz += 1,
                    Gate1::Generic(_) => c.generic += 1,
                },
                GateOp::Cnot { .. } => c.cnot += 1,
                GateOp::ControlledRotation { .. } => c.controlled_rotation += 1,
                GateOp::Measure { .. } => c.measure += 1,
                GateOp::Classical { .. } => c.classical += 1,
                GateOp::Conditional { .. } => c.conditional += 1,
            }
        }
        c
    }

    pub fn validate(&self) -> Result<(), ValidationReport> {
        let mut violations = Vec::new();
        let mut consumed = vec![false; self.num_qubits];
        let mut written = vec![false; self.num_clbits];
        let mut flag = |op: usize, message: String| violations.push(Violation { op, message });

        for (i, op) in self.ops.iter().enumerate() {
            let qubits = op.qubits();
            let mut in_range = true;
            for &q in &qubits {
                if q >= self.num_qubits {
                    flag(i, format!("qubit {q} out of range at op {i}"));
                    in_range = false;
                }
            }
            for &c in op.reads().iter().chain(op.writes().iter()) {
                if c >= self.num_clbits {
                    flag(i, format!("clbit {c} out of range at op {i}"));
                    in_range = false;
                }
            }
            if let GateOp::Cnot { control, target } | GateOp::ControlledRotation { control, target, .. } = op {
                if control == target {
                    flag(i, format!("control equals target at op {i}"));
                }
            }
            if !in_range {
                continue;
            }
            for &q in &qubits {
                if consumed[q] {
                    flag(i, format!("use after measurement of qubit {q} at op {i}"));
                }
            }
            for c in op.reads() {
                if !written[c] {
                    flag(i, format!("clbit {c} read before it is written at op {i}"));
                }
            }
            match op {
                GateOp::Conditional { condition, .. } if condition.is_empty() => {
                    flag(i, format!("empty condition at op {i}"));
                }
                GateOp::Classical { outputs } => {
                    if outputs.is_empty() {
                        flag(i, format!("classical compute without outputs at op {i}"));
                    }
                    for o in outputs {
                        if o.sources.contains(&o.clbit) {
                            flag(i, format!("clbit {} depends on itself at op {i}", o.clbit));
                        }
                    }
                }
                _ => {}
            }
            let mut seen = Vec::new();
            for c in op.writes() {
                if written[c] || seen.contains(&c) {
                    flag(i, format!("clbit {c} written twice at op {i}"));
                }
                seen.push(c);
            }
            for c in seen {
                written[c] = true;
            }
            if let GateOp::Measure { qubit, consume: true, .. } = op {
                consumed[*qubit] = true;
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationReport { violations })
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub h: usize,
    pub x: usize,
    pub z: usize,
    pub ry: usize,
    pub rz: usize,
    pub generic: usize,
    pub cnot: usize,
    pub controlled_rotation: usize,
    pub measure: usize,
    pub classical: usize,
    pub conditional: usize,
}

impl OpCounts {
    pub fn single_qubit(&self) -> usize {
        self.h + self.x + self.z + self.ry + self.rz + self.generic
    }
}

impl fmt::Display for OpCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "H={} X={} Z={} RY={} RZ={} U={} CNOT={} CR={} M={} CLASSICAL={} COND={}",
            self.h,
            self.x,
            self.z,
            self.ry,
            self.rz,
            self.generic,
            self.cnot,
            self.controlled_rotation,
            self.measure,
            self.classical,
            self.conditional
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub op: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msgs: Vec<&str> = self.violations.iter().map(|v| v.message.as_str()).collect();
        write!(f, "{}", msgs.join("; "))
    }
}

impl std::error::Error for ValidationReport {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_self_controlled_cnot() {
        let mut c = Circuit::new(4, 0);
        c.h(0).cnot(3, 3);
        let err = c.validate().unwrap_err();
        assert_eq!(err.violations.len(), 1);
        assert_eq!(err.violations[0].op, 1);
        assert!(err.violations[0].message.contains("control equals target at op 1"));
    }

    #[test]
    fn flags_use_after_measurement() {
        let mut c = Circuit::new(2, 1);
        c.h(0).measure(0, 0, true).x(0);
        let err = c.validate().unwrap_err();
        assert_eq!(err.violations[0].op, 2);
        assert!(err.violations[0].message.contains("use after measurement"));
    }

    #[test]
    fn measurement_without_consume_allows_reuse() {
        let mut c = Circuit::new(1, 1);
        c.h(0).measure(0, 0, false).x(0);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn flags_unwritten_condition_and_range() {
        let mut c = Circuit::new(1, 2);
        c.cond(vec![1], Gate1::X, 0).h(5);
        let err = c.validate().unwrap_err();
        assert_eq!(err.violations.len(), 2);
        assert!(err.violations[0].message.contains("read before"));
        assert!(err.violations[1].message.contains("out of range"));
    }

    #[test]
    fn flags_double_write() {
        let mut c = Circuit::new(2, 1);
        c.measure(0, 0, true).measure(1, 0, true);
        assert!(c.validate().unwrap_err().violations[0].message.contains("written twice"));
    }

    #[test]
    fn counts_and_unconsumed() {
        let mut c = Circuit::new(3, 1);
        c.h(0).cnot(0, 1).cnot(1, 2).measure(2, 0, true);
        let k = c.counts();
        assert_eq!((k.h, k.cnot, k.measure), (1, 2, 1));
        assert_eq!(c.unconsumed_qubits(), vec![0, 1]);
    }
}
