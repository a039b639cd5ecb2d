use super::{Axis, Circuit, Gate1, GateOp};
use crate::linalg::{self, Mat2};

/// Factors `(a, b, c)` with `a·b·c = I` and `a·X·b·X·c = R(angle)`.
fn factors(axis: Axis, angle: f64) -> (Mat2, Mat2, Mat2) {
    match axis {
        Axis::Y => (linalg::ry(angle / 2.0), linalg::ry(-angle / 2.0), linalg::identity2()),
        Axis::Z => (linalg::rz(angle), linalg::rz(-angle / 2.0), linalg::rz(-angle / 2.0)),
    }
}

/// Replaces every controlled rotation by `C; CNOT; B; CNOT; A` on the target,
/// with `A`, `B`, `C` emitted as generic single-qubit gates.
pub fn decompose_controlled_1q(circuit: &Circuit) -> Circuit {
    let mut out = Circuit::new(circuit.num_qubits, circuit.num_clbits);
    for op in &circuit.ops {
        match *op {
            GateOp::ControlledRotation { axis, angle, control, target } => {
                let (a, b, c) = factors(axis, angle);
                out.gate(Gate1::Generic(c), target)
                    .cnot(control, target)
                    .gate(Gate1::Generic(b), target)
                    .cnot(control, target)
                    .gate(Gate1::Generic(a), target);
            }
            ref other => {
                out.push(other.clone());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{matmul, max_deviation, pauli_x};

    #[test]
    fn factor_identities() {
        for axis in [Axis::Y, Axis::Z] {
            for k in 0..12 {
                let t = -3.0 + 0.55 * k as f64;
                let (a, b, c) = factors(axis, t);
                let abc = matmul(&matmul(&a, &b), &c);
                assert!(max_deviation(&abc, &linalg::identity2()) < 1e-12);
                let axbxc = matmul(&matmul(&matmul(&matmul(&a, &pauli_x()), &b), &pauli_x()), &c);
                assert!(max_deviation(&axbxc, &axis.rotation(t).matrix()) < 1e-12);
            }
        }
    }

    #[test]
    fn single_block_yields_three_generic_and_two_cnots() {
        let mut c = Circuit::new(2, 0);
        c.cry(0.9, 0, 1);
        let d = decompose_controlled_1q(&c);
        let k = d.counts();
        assert_eq!((k.generic, k.cnot, k.controlled_rotation), (3, 2, 0));
    }

    #[test]
    fn no_rotations_is_identity() {
        let mut c = Circuit::new(3, 1);
        c.h(0).cnot(0, 1).measure(2, 0, true);
        assert_eq!(decompose_controlled_1q(&c), c);
    }
}
