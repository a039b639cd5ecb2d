use crate::linalg::C64;
use crate::{Error, Result};

/// Dense state over the qubits in `qubit_map`; `qubit_map[j]` is bit `j` of
/// the amplitude index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub amplitudes: Vec<C64>,
    pub qubit_map: Vec<usize>,
}

impl StateVector {
    pub fn num_qubits(&self) -> usize {
        self.qubit_map.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Builds a state from `(bitstring, amplitude)` pairs, normalised.
    /// Character `j` of each bitstring is qubit `j`.
    pub fn from_terms(n: usize, terms: &[(&str, C64)]) -> Result<Self> {
        let mut amplitudes = vec![C64::default(); 1 << n];
        for (bits, a) in terms {
            if bits.len() != n {
                return Err(Error::DimensionMismatch(format!("bitstring '{bits}' for {n} qubits")));
            }
            let idx = bits.bytes().enumerate().fold(0usize, |acc, (j, b)| acc | (usize::from(b == b'1') << j));
            amplitudes[idx] += *a;
        }
        let mut s = StateVector { amplitudes, qubit_map: (0..n).collect() };
        let norm = s.norm();
        if norm == 0.0 {
            return Err(Error::domain("zero state"));
        }
        s.amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(s)
    }

    pub fn basis(n: usize, bits: &str) -> Result<Self> {
        Self::from_terms(n, &[(bits, C64::new(1.0, 0.0))])
    }

    pub fn ghz(n: usize) -> Self {
        let one = C64::new(1.0, 0.0);
        Self::from_terms(n, &[(&"0".repeat(n), one), (&"1".repeat(n), one)]).expect("valid")
    }

    pub fn w(n: usize) -> Self {
        let one = C64::new(1.0, 0.0);
        let strings: Vec<String> = (0..n).map(|i| (0..n).map(|j| if i == j { '1' } else { '0' }).collect()).collect();
        let terms: Vec<(&str, C64)> = strings.iter().map(|s| (s.as_str(), one)).collect();
        Self::from_terms(n, &terms).expect("valid")
    }

    pub fn amplitude(&self, bits: &str) -> C64 {
        let idx = bits.bytes().enumerate().fold(0usize, |acc, (j, b)| acc | (usize::from(b == b'1') << j));
        self.amplitudes[idx]
    }

    /// Reduced single-qubit state when every other qubit is in a basis state.
    pub fn qubit_factor(&self, j: usize) -> Result<[C64; 2]> {
        let mut rest: Option<usize> = None;
        let mut amp = [C64::default(); 2];
        for (idx, a) in self.amplitudes.iter().enumerate() {
            if a.norm_sqr() < 1e-20 {
                continue;
            }
            let others = idx & !(1 << j);
            match rest {
                None => rest = Some(others),
                Some(r) if r != others => return Err(Error::domain(format!("qubit {j} is entangled with the rest"))),
                _ => {}
            }
            amp[(idx >> j) & 1] = *a;
        }
        Ok(amp)
    }
}

/// `|⟨target|state⟩|²`.
pub fn fidelity(state: &StateVector, target: &StateVector) -> Result<f64> {
    if state.amplitudes.len() != target.amplitudes.len() {
        return Err(Error::DimensionMismatch(format!(
            "state has {} qubits, target has {}",
            state.num_qubits(),
            target.num_qubits()
        )));
    }
    let overlap: C64 = target.amplitudes.iter().zip(&state.amplitudes).map(|(t, s)| t.conj() * s).sum();
    Ok(overlap.norm_sqr().min(1.0))
}
