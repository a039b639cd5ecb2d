use crate::circuit::{Circuit, Gate1, XorOutput};
use crate::{Error, Result};

/// Measurement-based fanout: XORs `control` into every target.
///
/// Prepares a GHZ resource on `targets.len() + 1` fresh main qubits linked by
/// fresh parity qubits, teleports the control onto it, copies onto the
/// targets, and measures the resource out in the X basis with a closing Z
/// correction on the control. Uses `2·(targets.len()) + 1` auxiliary qubits.
pub fn append_fanout(c: &mut Circuit, control: usize, targets: &[usize]) {
    let t = targets.len();
    assert!(t >= 1, "fanout needs at least one target");
    let mains = c.alloc_qubits(t + 1);
    let links = c.alloc_qubits(t);

    for &m in &mains {
        c.h(m);
    }
    for i in 0..t {
        c.cnot(mains[i], links[i]);
    }
    c.cnot(control, mains[0]);
    for i in 0..t {
        c.cnot(mains[i + 1], links[i]);
    }

    let s0 = c.alloc_clbit();
    let syndromes: Vec<usize> = (0..t).map(|_| c.alloc_clbit()).collect();
    c.measure(mains[0], s0, true);
    for i in 0..t {
        c.measure(links[i], syndromes[i], true);
    }
    let prefix: Vec<usize> = (0..t).map(|_| c.alloc_clbit()).collect();
    let outputs = (0..t)
        .map(|j| {
            let mut sources = vec![s0];
            sources.extend_from_slice(&syndromes[..=j]);
            XorOutput { clbit: prefix[j], sources }
        })
        .collect();
    c.classical(outputs);
    for j in 0..t {
        c.cond(vec![prefix[j]], Gate1::X, mains[j + 1]);
    }

    for j in 0..t {
        c.cnot(mains[j + 1], targets[j]);
    }
    for j in 0..t {
        c.h(mains[j + 1]);
    }
    let xs: Vec<usize> = (0..t).map(|_| c.alloc_clbit()).collect();
    for j in 0..t {
        c.measure(mains[j + 1], xs[j], true);
    }
    let phase = c.alloc_clbit();
    c.classical(vec![XorOutput { clbit: phase, sources: xs }]);
    c.cond(vec![phase], Gate1::Z, control);
}

/// Hadamard-conjugated fanout: XORs the parity of `inputs` into `target`.
pub fn append_parity(c: &mut Circuit, target: usize, inputs: &[usize]) {
    c.h(target);
    for &q in inputs {
        c.h(q);
    }
    append_fanout(c, target, inputs);
    c.h(target);
    for &q in inputs {
        c.h(q);
    }
}

fn check_arity(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::domain("n ≥ 2 required"));
    }
    Ok(())
}

/// Fanout of arity `n`: control on qubit 0, targets on `1..n`.
pub fn build_fanout(n: usize) -> Result<Circuit> {
    check_arity(n)?;
    let mut c = Circuit::new(n, 0);
    let targets: Vec<usize> = (1..n).collect();
    append_fanout(&mut c, 0, &targets);
    Ok(c)
}

/// Parity of arity `n`: qubit 0 receives the XOR of qubits `1..n`.
pub fn build_parity(n: usize) -> Result<Circuit> {
    check_arity(n)?;
    let mut c = Circuit::new(n, 0);
    let inputs: Vec<usize> = (1..n).collect();
    append_parity(&mut c, 0, &inputs);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_budget() {
        for n in 2..7 {
            let c = build_fanout(n).unwrap();
            assert_eq!(c.num_qubits, 3 * n - 1);
            assert_eq!(c.unconsumed_qubits(), (0..n).collect::<Vec<_>>());
            assert!(c.validate().is_ok());
            assert!(build_parity(n).unwrap().validate().is_ok());
        }
        assert!(build_fanout(1).is_err());
        assert!(build_parity(0).is_err());
    }
}
