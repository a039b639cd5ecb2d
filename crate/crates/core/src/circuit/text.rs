//! Line-oriented circuit format.
//!
//! ```text
//! qubits 3
//! clbits 2
//! H 0
//! RY 0.5 1
//! U 2 1 0 0 0 0 0 1 0        # row-major re/im pairs
//! CNOT 0 1
//! CRY 0.25 0 1
//! M 2 -> c0 consume
//! CLASSICAL -> c1=c0
//! COND c0^c1 X 1
//! ```

use super::{Axis, Circuit, Gate1, GateOp, XorOutput};
use crate::linalg::{Mat2, C64};
use crate::{Error, Result};

fn clbit_name(c: usize) -> String {
    format!("c{c}")
}

fn xor_expr(bits: &[usize]) -> String {
    bits.iter().map(|&c| clbit_name(c)).collect::<Vec<_>>().join("^")
}

fn gate_text(gate: &Gate1, qubit: usize) -> String {
    match gate {
        Gate1::Ry(t) | Gate1::Rz(t) => format!("{} {:?} {qubit}", gate.name(), t),
        Gate1::Generic(m) => {
            let entries: Vec<String> = m.iter().flatten().flat_map(|z| [format!("{:?}", z.re), format!("{:?}", z.im)]).collect();
            format!("U {qubit} {}", entries.join(" "))
        }
        _ => format!("{} {qubit}", gate.name()),
    }
}

pub(crate) fn op_to_text(op: &GateOp) -> String {
    match op {
        GateOp::Single { gate, qubit } => gate_text(gate, *qubit),
        GateOp::Cnot { control, target } => format!("CNOT {control} {target}"),
        GateOp::ControlledRotation { axis, angle, control, target } => {
            let name = match axis {
                Axis::Y => "CRY",
                Axis::Z => "CRZ",
            };
            format!("{name} {angle:?} {control} {target}")
        }
        GateOp::Measure { qubit, clbit, consume } => {
            let tail = if *consume { " consume" } else { "" };
            format!("M {qubit} -> {}{tail}", clbit_name(*clbit))
        }
        GateOp::Classical { outputs } => {
            let outs: Vec<String> = outputs.iter().map(|o| format!("{}={}", clbit_name(o.clbit), xor_expr(&o.sources))).collect();
            format!("CLASSICAL -> {}", outs.join(" "))
        }
        GateOp::Conditional { condition, gate, qubit } => format!("COND {} {}", xor_expr(condition), gate_text(gate, *qubit)),
    }
}

pub fn to_text(circuit: &Circuit) -> String {
    let mut out = format!("qubits {}\nclbits {}\n", circuit.num_qubits, circuit.num_clbits);
    for op in &circuit.ops {
        out.push_str(&op_to_text(op));
        out.push('\n');
    }
    out
}

struct Cursor<'a> {
    line: usize,
    tokens: std::slice::Iter<'a, &'a str>,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, message: message.into() }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        let line = self.line;
        self.tokens.next().copied().ok_or_else(|| Error::Parse { line, message: format!("missing {what}") })
    }

    fn usize(&mut self, what: &str) -> Result<usize> {
        let tok = self.next(what)?;
        tok.parse().map_err(|_| self.err(format!("bad {what} '{tok}'")))
    }

    fn f64(&mut self, what: &str) -> Result<f64> {
        let tok = self.next(what)?;
        tok.parse().map_err(|_| self.err(format!("bad {what} '{tok}'")))
    }

    fn finish(&mut self) -> Result<()> {
        match self.tokens.next() {
            None => Ok(()),
            Some(t) => Err(self.err(format!("unexpected token '{t}'"))),
        }
    }

    fn clbit(&mut self, tok: &str) -> Result<usize> {
        tok.strip_prefix('c').and_then(|s| s.parse().ok()).ok_or_else(|| self.err(format!("bad clbit '{tok}'")))
    }

    fn xor(&mut self, tok: &str) -> Result<Vec<usize>> {
        tok.split('^').map(|t| self.clbit(t)).collect()
    }

    fn gate(&mut self, name: &str) -> Result<(Gate1, usize)> {
        let gate = match name {
            "H" => Gate1::H,
            "X" => Gate1::X,
            "Z" => Gate1::Z,
            "RY" => Gate1::Ry(self.f64("angle")?),
            "RZ" => Gate1::Rz(self.f64("angle")?),
            "U" => {
                let q = self.usize("qubit")?;
                let mut m: Mat2 = [[C64::default(); 2]; 2];
                for row in m.iter_mut() {
                    for z in row.iter_mut() {
                        *z = C64::new(self.f64("matrix entry")?, self.f64("matrix entry")?);
                    }
                }
                return Ok((Gate1::Generic(m), q));
            }
            other => return Err(self.err(format!("unknown gate '{other}'"))),
        };
        Ok((gate, self.usize("qubit")?))
    }
}

pub fn from_text(src: &str) -> Result<Circuit> {
    let mut qubits = None;
    let mut clbits = None;
    let mut ops = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let mut cur = Cursor { line: idx + 1, tokens: toks.iter() };
        let head = cur.next("opcode")?;
        let op = match head {
            "qubits" => {
                qubits = Some(cur.usize("qubit count")?);
                cur.finish()?;
                continue;
            }
            "clbits" => {
                clbits = Some(cur.usize("clbit count")?);
                cur.finish()?;
                continue;
            }
            "CNOT" => GateOp::Cnot { control: cur.usize("control")?, target: cur.usize("target")? },
            "CRY" | "CRZ" => {
                let axis = if head == "CRY" { Axis::Y } else { Axis::Z };
                GateOp::ControlledRotation {
                    axis,
                    angle: cur.f64("angle")?,
                    control: cur.usize("control")?,
                    target: cur.usize("target")?,
                }
            }
            "M" => {
                let qubit = cur.usize("qubit")?;
                if cur.next("'->'")? != "->" {
                    return Err(cur.err("expected '->'"));
                }
                let tok = cur.next("clbit")?;
                let clbit = cur.clbit(tok)?;
                let consume = match cur.tokens.next() {
                    None => false,
                    Some(&"consume") => true,
                    Some(t) => return Err(cur.err(format!("unexpected token '{t}'"))),
                };
                GateOp::Measure { qubit, clbit, consume }
            }
            "CLASSICAL" => {
                if cur.next("'->'")? != "->" {
                    return Err(cur.err("expected '->'"));
                }
                let mut outputs = Vec::new();
                while let Some(tok) = cur.tokens.next() {
                    let (lhs, rhs) = tok.split_once('=').ok_or_else(|| cur.err(format!("bad output '{tok}'")))?;
                    outputs.push(XorOutput { clbit: cur.clbit(lhs)?, sources: cur.xor(rhs)? });
                }
                GateOp::Classical { outputs }
            }
            "COND" => {
                let tok = cur.next("condition")?;
                let condition = cur.xor(tok)?;
                let name = cur.next("gate")?;
                let (gate, qubit) = cur.gate(name)?;
                GateOp::Conditional { condition, gate, qubit }
            }
            name => {
                let (gate, qubit) = cur.gate(name)?;
                GateOp::Single { gate, qubit }
            }
        };
        cur.finish()?;
        ops.push(op);
    }
    let num_qubits = qubits.ok_or(Error::Parse { line: 0, message: "missing 'qubits' header".into() })?;
    let num_clbits = clbits.unwrap_or(0);
    Ok(Circuit { num_qubits, num_clbits, ops })
}
