//! Fixed-size complex matrices for one- and two-qubit gates.

use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat2 = [[C64; 2]; 2];
pub type Mat4 = [[C64; 4]; 4];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn identity2() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn hadamard() -> Mat2 {
    let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

pub fn pauli_x() -> Mat2 {
    [[ZERO, ONE], [ONE, ZERO]]
}

pub fn pauli_z() -> Mat2 {
    [[ONE, ZERO], [ZERO, -ONE]]
}

/// `exp(-i θ Y / 2)`.
pub fn ry(theta: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [[C64::new(c, 0.0), C64::new(-s, 0.0)], [C64::new(s, 0.0), C64::new(c, 0.0)]]
}

/// `exp(-i θ Z / 2)`.
pub fn rz(theta: f64) -> Mat2 {
    [[C64::from_polar(1.0, -theta / 2.0), ZERO], [ZERO, C64::from_polar(1.0, theta / 2.0)]]
}

pub fn matmul<const N: usize>(a: &[[C64; N]; N], b: &[[C64; N]; N]) -> [[C64; N]; N] {
    let mut out = [[ZERO; N]; N];
    for i in 0..N {
        for j in 0..N {
            out[i][j] = (0..N).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn adjoint<const N: usize>(a: &[[C64; N]; N]) -> [[C64; N]; N] {
    let mut out = [[ZERO; N]; N];
    for i in 0..N {
        for j in 0..N {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

/// Largest entry-wise deviation of `a` from `b`.
pub fn max_deviation<const N: usize>(a: &[[C64; N]; N], b: &[[C64; N]; N]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..N {
        for j in 0..N {
            worst = worst.max((a[i][j] - b[i][j]).norm());
        }
    }
    worst
}

pub fn is_unitary<const N: usize>(a: &[[C64; N]; N], tol: f64) -> bool {
    let mut eye = [[ZERO; N]; N];
    for (i, row) in eye.iter_mut().enumerate() {
        row[i] = ONE;
    }
    max_deviation(&matmul(a, &adjoint(a)), &eye) <= tol
}

/// Equality up to a global phase.
pub fn equal_up_to_phase<const N: usize>(a: &[[C64; N]; N], b: &[[C64; N]; N], tol: f64) -> bool {
    let mut phase = None;
    for i in 0..N {
        for j in 0..N {
            if b[i][j].norm() > 1e-9 {
                phase = Some(a[i][j] / b[i][j]);
                break;
            }
        }
        if phase.is_some() {
            break;
        }
    }
    let Some(phase) = phase else {
        return a.iter().flatten().all(|z| z.norm() <= tol);
    };
    if (phase.norm() - 1.0).abs() > tol {
        return false;
    }
    let mut scaled = *b;
    for row in scaled.iter_mut() {
        for z in row.iter_mut() {
            *z *= phase;
        }
    }
    max_deviation(a, &scaled) <= tol
}
