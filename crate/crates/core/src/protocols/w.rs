use super::fanout::append_parity;
use crate::circuit::Circuit;
use crate::{Error, Result};

/// Cascade angle for the block that keeps amplitude `√(1/m)` on `|0⟩`.
pub fn w_angle(m: usize) -> f64 {
    2.0 * (1.0 / m as f64).sqrt().acos()
}

/// `arccos √((n−1)/n)`.
pub fn w_approx_angle(n: usize) -> f64 {
    ((n as f64 - 1.0) / n as f64).sqrt().acos()
}

/// Controlled-RY cascade followed by the descending CNOT chain and a final X.
///
/// The top block is a plain RY on qubit 0. Controlled rotations are left
/// undecomposed.
pub fn build_w_nonadaptive(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::domain("n ≥ 2 required"));
    }
    let mut c = Circuit::new(n, 0);
    c.ry(w_angle(n), 0);
    for j in 1..n - 1 {
        c.cry(w_angle(n - j), j - 1, j);
    }
    for j in (1..n).rev() {
        c.cnot(j - 1, j);
    }
    c.x(0);
    Ok(c)
}

#[derive(Debug, Clone)]
pub struct WApproxCircuit {
    pub circuit: Circuit,
    pub data: Vec<usize>,
    pub parity_clbit: usize,
}

/// `n` parallel RY rotations whose parity is measured into `parity_clbit`.
pub fn build_w_approx_postselect(n: usize) -> Result<WApproxCircuit> {
    if n < 1 {
        return Err(Error::domain("n ≥ 1 required"));
    }
    let mut c = Circuit::new(n, 0);
    let data: Vec<usize> = (0..n).collect();
    let theta = w_approx_angle(n);
    for &q in &data {
        c.ry(theta, q);
    }
    let target = c.alloc_qubit();
    append_parity(&mut c, target, &data);
    let parity_clbit = c.alloc_clbit();
    c.measure(target, parity_clbit, true);
    Ok(WApproxCircuit { circuit: c, data, parity_clbit })
}
