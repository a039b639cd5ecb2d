use std::fmt;
use std::str::FromStr;

use crate::circuit::{Circuit, Gate1, XorOutput};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GhzVariant {
    AllToAll,
    Linear,
    Adaptive,
    HybridAll { k: usize },
    HybridLinear { k: usize },
}

impl GhzVariant {
    pub fn name(&self) -> &'static str {
        match self {
            GhzVariant::AllToAll => "all",
            GhzVariant::Linear => "linear",
            GhzVariant::Adaptive => "adaptive",
            GhzVariant::HybridAll { .. } => "hybrid-all",
            GhzVariant::HybridLinear { .. } => "hybrid-linear",
        }
    }

    /// Parses `all`, `linear`, `adaptive`, `hybrid-all`, `hybrid-linear`.
    pub fn parse(name: &str, k: Option<usize>) -> Result<Self> {
        let need_k = || k.ok_or_else(|| Error::domain(format!("variant '{name}' requires a block count k")));
        Ok(match name {
            "all" | "all-to-all" => GhzVariant::AllToAll,
            "linear" => GhzVariant::Linear,
            "adaptive" => GhzVariant::Adaptive,
            "hybrid-all" => GhzVariant::HybridAll { k: need_k()? },
            "hybrid-linear" => GhzVariant::HybridLinear { k: need_k()? },
            other => return Err(Error::domain(format!("unknown GHZ variant '{other}'"))),
        })
    }

    pub fn check(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::domain("n ≥ 1 required"));
        }
        match *self {
            GhzVariant::Adaptive if n < 2 => Err(Error::domain("adaptive GHZ requires n ≥ 2")),
            GhzVariant::HybridAll { k } | GhzVariant::HybridLinear { k } => {
                if k < 2 {
                    Err(Error::domain("hybrid GHZ requires k ≥ 2 blocks"))
                } else if !n.is_multiple_of(k) {
                    Err(Error::domain(format!("hybrid GHZ requires k | n, got n={n}, k={k}")))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GhzVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GhzVariant::HybridAll { k } | GhzVariant::HybridLinear { k } => write!(f, "{}(k={k})", self.name()),
            _ => f.write_str(self.name()),
        }
    }
}

impl FromStr for GhzVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GhzVariant::parse(s, None)
    }
}

/// Doubling tree on `q`. Returns a qubit targeted in the last CNOT layer.
fn append_all_to_all(c: &mut Circuit, q: &[usize]) -> usize {
    let n = q.len();
    c.h(q[0]);
    let mut filled = 1;
    let mut last = q[0];
    while filled < n {
        let step = filled.min(n - filled);
        for i in 0..step {
            c.cnot(q[i], q[filled + i]);
            last = q[filled + i];
        }
        filled += step;
    }
    last
}

/// Outward-spreading chain on `q`. Returns a qubit targeted in the last CNOT layer.
fn append_linear(c: &mut Circuit, q: &[usize]) -> usize {
    let n = q.len();
    let start = n.div_ceil(2) - 1;
    c.h(q[start]);
    if n == 1 {
        return q[0];
    }
    c.cnot(q[start], q[start + 1]);
    let mut last = q[start + 1];
    let k = n / 2;
    for i in 0..k - 1 {
        c.cnot(q[start - i], q[start - i - 1]);
        c.cnot(q[start + 1 + i], q[start + 2 + i]);
        last = q[start + 2 + i];
    }
    if n % 2 == 1 {
        c.cnot(q[1], q[0]);
        last = q[0];
    }
    last
}

/// Fuses blocks sharing endpoints through measured parity checks.
///
/// `blocks[b]` lists the qubits of block `b`, `ends[b]` the qubit of that
/// block wired to its boundary auxiliaries.
fn append_fusion(c: &mut Circuit, blocks: &[Vec<usize>], ends: &[usize]) {
    let k = blocks.len();
    let aux = c.alloc_qubits(k - 1);
    for b in 0..k - 1 {
        c.cnot(ends[b], aux[b]);
    }
    for b in 0..k - 1 {
        c.cnot(ends[b + 1], aux[b]);
    }
    let syndromes: Vec<usize> = (0..k - 1).map(|_| c.alloc_clbit()).collect();
    for b in 0..k - 1 {
        c.measure(aux[b], syndromes[b], true);
    }
    let prefix: Vec<usize> = (1..k).map(|_| c.alloc_clbit()).collect();
    let outputs = (1..k).map(|b| XorOutput { clbit: prefix[b - 1], sources: syndromes[..b].to_vec() }).collect();
    c.classical(outputs);
    for b in 1..k {
        for &q in &blocks[b] {
            c.cond(vec![prefix[b - 1]], Gate1::X, q);
        }
    }
}

/// GHZ preparation on data qubits `0..n`.
pub fn build_ghz(n: usize, variant: GhzVariant) -> Result<Circuit> {
    variant.check(n)?;
    let mut c = Circuit::new(n, 0);
    let data: Vec<usize> = (0..n).collect();
    match variant {
        GhzVariant::AllToAll => {
            append_all_to_all(&mut c, &data);
        }
        GhzVariant::Linear => {
            append_linear(&mut c, &data);
        }
        GhzVariant::Adaptive => {
            for &q in &data {
                c.h(q);
            }
            let blocks: Vec<Vec<usize>> = data.iter().map(|&q| vec![q]).collect();
            append_fusion(&mut c, &blocks, &data);
        }
        GhzVariant::HybridAll { k } | GhzVariant::HybridLinear { k } => {
            let g = n / k;
            let blocks: Vec<Vec<usize>> = data.chunks(g).map(<[usize]>::to_vec).collect();
            let ends: Vec<usize> = blocks
                .iter()
                .map(|b| match variant {
                    GhzVariant::HybridAll { .. } => append_all_to_all(&mut c, b),
                    _ => append_linear(&mut c, b),
                })
                .collect();
            append_fusion(&mut c, &blocks, &ends);
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::schedule;

    #[test]
    fn all_to_all_n8_matches_doubling_structure() {
        let c = build_ghz(8, GhzVariant::AllToAll).unwrap();
        let k = c.counts();
        assert_eq!((k.h, k.cnot), (1, 7));
        let s = schedule(&c, None).unwrap();
        let sizes: Vec<usize> = s.layers.iter().map(|l| l.ops.len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 4]);
    }

    #[test]
    fn linear_n6_structure() {
        let c = build_ghz(6, GhzVariant::Linear).unwrap();
        let s = schedule(&c, None).unwrap();
        let sizes: Vec<usize> = s.layers.iter().map(|l| l.ops.len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 2]);
        assert_eq!(c.ops[0], crate::circuit::GateOp::Single { gate: Gate1::H, qubit: 2 });
    }

    #[test]
    fn adaptive_n3_structure() {
        let c = build_ghz(3, GhzVariant::Adaptive).unwrap();
        assert_eq!(c.num_qubits, 5);
        let k = c.counts();
        assert_eq!((k.h, k.cnot, k.measure, k.conditional), (3, 4, 2, 2));
        assert!(c.validate().is_ok());
    }

    #[test]
    fn domain_errors() {
        assert!(build_ghz(0, GhzVariant::AllToAll).is_err());
        assert!(build_ghz(1, GhzVariant::Adaptive).is_err());
        assert!(build_ghz(6, GhzVariant::HybridAll { k: 4 }).is_err());
        assert!(build_ghz(6, GhzVariant::HybridLinear { k: 1 }).is_err());
        assert!(GhzVariant::parse("hybrid-all", None).is_err());
        assert_eq!(GhzVariant::parse("hybrid-all", Some(3)).unwrap(), GhzVariant::HybridAll { k: 3 });
    }

    #[test]
    fn n1_is_single_hadamard() {
        for v in [GhzVariant::AllToAll, GhzVariant::Linear] {
            let c = build_ghz(1, v).unwrap();
            assert_eq!(c.ops.len(), 1);
        }
    }
}
