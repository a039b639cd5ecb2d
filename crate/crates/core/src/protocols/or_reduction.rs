use std::f64::consts::PI;

use super::fanout::append_fanout;
use crate::circuit::Circuit;
use crate::linalg::C64;
use crate::{Error, Result};

/// `((1+e^{iφc})|0⟩ + (1−e^{iφc})|1⟩)/2`.
pub fn mu_state(phi: f64, c: usize) -> [C64; 2] {
    let e = C64::from_polar(1.0, phi * c as f64);
    [(C64::new(1.0, 0.0) + e) / 2.0, (C64::new(1.0, 0.0) - e) / 2.0]
}

fn phi(k: usize) -> f64 {
    2.0 * PI / (1u64 << k) as f64
}

/// `⌈log2(n+1)⌉`.
pub fn or_width(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()) as usize
}

#[derive(Debug, Clone)]
pub struct MuCircuit {
    pub circuit: Circuit,
    pub inputs: Vec<usize>,
    pub output: usize,
}

#[derive(Debug, Clone)]
pub struct OrReductionCircuit {
    pub circuit: Circuit,
    pub inputs: Vec<usize>,
    /// One output per `k = 1..=t`.
    pub outputs: Vec<usize>,
}

/// Appends one μ register fed by `controls[i]` driving register qubit `i`.
fn append_mu_register(c: &mut Circuit, controls: &[usize], k: usize) -> Vec<usize> {
    let reg = c.alloc_qubits(controls.len());
    c.h(reg[0]);
    if reg.len() > 1 {
        append_fanout(c, reg[0], &reg[1..]);
    }
    for (i, &ctl) in controls.iter().enumerate() {
        c.crz(phi(k), ctl, reg[i]);
    }
    reg
}

fn close_mu_register(c: &mut Circuit, reg: &[usize]) {
    if reg.len() > 1 {
        append_fanout(c, reg[0], &reg[1..]);
    }
    c.h(reg[0]);
}

/// μ state for `φ_k = 2π/2^k` on the Hamming weight of inputs `0..n`.
pub fn build_mu_state(k: usize, n: usize) -> Result<MuCircuit> {
    if n < 1 {
        return Err(Error::domain("n ≥ 1 required"));
    }
    let t = or_width(n);
    if k < 1 || k > t {
        return Err(Error::domain(format!("k must lie in 1..={t} for n={n}, got {k}")));
    }
    let mut c = Circuit::new(n, 0);
    let inputs: Vec<usize> = (0..n).collect();
    let reg = append_mu_register(&mut c, &inputs, k);
    close_mu_register(&mut c, &reg);
    Ok(MuCircuit { circuit: c, inputs, output: reg[0] })
}

/// All `t = ⌈log2(n+1)⌉` μ registers, each driven by its own fanout copy of
/// the input; copies are uncomputed at the end.
pub fn build_or_reduction(n: usize) -> Result<OrReductionCircuit> {
    if n < 1 {
        return Err(Error::domain("n ≥ 1 required"));
    }
    let t = or_width(n);
    let mut c = Circuit::new(n, 0);
    let inputs: Vec<usize> = (0..n).collect();
    let copies: Vec<Vec<usize>> = inputs
        .iter()
        .map(|&x| {
            let mut v = vec![x];
            v.extend(c.alloc_qubits(t - 1));
            v
        })
        .collect();
    for copy in &copies {
        if t > 1 {
            append_fanout(&mut c, copy[0], &copy[1..]);
        }
    }
    let mut regs = Vec::with_capacity(t);
    for k in 1..=t {
        let controls: Vec<usize> = copies.iter().map(|copy| copy[k - 1]).collect();
        regs.push(append_mu_register(&mut c, &controls, k));
    }
    for copy in &copies {
        if t > 1 {
            append_fanout(&mut c, copy[0], &copy[1..]);
        }
    }
    for reg in &regs {
        close_mu_register(&mut c, reg);
    }
    let outputs = regs.iter().map(|r| r[0]).collect();
    Ok(OrReductionCircuit { circuit: c, inputs, outputs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn width() {
        assert_eq!(or_width(1), 1);
        assert_eq!(or_width(2), 2);
        assert_eq!(or_width(3), 2);
        assert_eq!(or_width(4), 3);
        assert_eq!(or_width(7), 3);
        assert_eq!(or_width(8), 4);
    }

    #[test]
    fn mu_formula() {
        let m = mu_state(PI, 2);
        assert!((m[0] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(m[1].norm() < 1e-12);
        let m = mu_state(PI / 2.0, 1);
        assert!((m[0] - C64::new(0.5, 0.5)).norm() < 1e-12);
        assert!((m[1] - C64::new(0.5, -0.5)).norm() < 1e-12);
    }

    #[test]
    fn builders_validate() {
        for n in 1..=4 {
            for k in 1..=or_width(n) {
                assert!(build_mu_state(k, n).unwrap().circuit.validate().is_ok());
            }
            let or = build_or_reduction(n).unwrap();
            assert!(or.circuit.validate().is_ok());
            assert_eq!(or.outputs.len(), or_width(n));
        }
        assert!(build_mu_state(0, 3).is_err());
        assert!(build_mu_state(3, 3).is_err());
    }
}
