use std::collections::BTreeMap;

use rand::Rng;

use super::state::StateVector;
use crate::linalg::{Mat2, Mat4, C64, ZERO};
use crate::{Error, Result};

const PRUNE: f64 = 1e-28;
pub(crate) const MAX_SLOTS: usize = 64;

/// Sparse amplitude store over lazily allocated slots.
///
/// Each circuit qubit takes a slot on first use; consumed measurements clear
/// the bit and return the slot, so width is bounded by simultaneously live
/// qubits rather than the circuit's total.
#[derive(Debug, Clone)]
pub(crate) struct Machine {
    amps: BTreeMap<u64, C64>,
    slot: Vec<Option<u32>>,
    free: Vec<u32>,
    pub clbits: Vec<bool>,
    support_limit: usize,
}

impl Machine {
    pub fn new(num_qubits: usize, num_clbits: usize, support_limit: usize) -> Self {
        let mut amps = BTreeMap::new();
        amps.insert(0, C64::new(1.0, 0.0));
        Machine {
            amps,
            slot: vec![None; num_qubits],
            free: (0..MAX_SLOTS as u32).rev().collect(),
            clbits: vec![false; num_clbits],
            support_limit,
        }
    }

    #[cfg(test)]
    pub fn support(&self) -> usize {
        self.amps.len()
    }

    fn ensure(&mut self, q: usize) -> Result<u32> {
        if let Some(s) = self.slot[q] {
            return Ok(s);
        }
        let s = self.free.pop().ok_or(Error::SlotLimit { limit: MAX_SLOTS })?;
        self.slot[q] = Some(s);
        Ok(s)
    }

    fn check_support(&self) -> Result<()> {
        if self.amps.len() > self.support_limit {
            return Err(Error::SupportLimit { limit: self.support_limit });
        }
        Ok(())
    }

    fn remap(&mut self, f: impl Fn(u64) -> u64) {
        let old = std::mem::take(&mut self.amps);
        self.amps = old.into_iter().map(|(k, a)| (f(k), a)).collect();
    }

    pub fn x(&mut self, q: usize) -> Result<()> {
        let mask = 1u64 << self.ensure(q)?;
        self.remap(|k| k ^ mask);
        Ok(())
    }

    pub fn z(&mut self, q: usize) -> Result<()> {
        let mask = 1u64 << self.ensure(q)?;
        for (k, a) in self.amps.iter_mut() {
            if k & mask != 0 {
                *a = -*a;
            }
        }
        Ok(())
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        let c = 1u64 << self.ensure(control)?;
        let t = 1u64 << self.ensure(target)?;
        self.remap(|k| if k & c != 0 { k ^ t } else { k });
        Ok(())
    }

    pub fn apply1(&mut self, q: usize, m: &Mat2) -> Result<()> {
        let s = self.ensure(q)?;
        let mask = 1u64 << s;
        let mut out: BTreeMap<u64, C64> = BTreeMap::new();
        for (&k, &a) in &self.amps {
            let b = ((k >> s) & 1) as usize;
            let k0 = k & !mask;
            for (r, key) in [(0, k0), (1, k0 | mask)] {
                let c = m[r][b] * a;
                if c != ZERO {
                    *out.entry(key).or_default() += c;
                }
            }
        }
        out.retain(|_, a| a.norm_sqr() > PRUNE);
        self.amps = out;
        self.check_support()
    }

    /// Applies `m` with `hi` as the high bit of the 4-dim index.
    pub fn apply2(&mut self, hi: usize, lo: usize, m: &Mat4) -> Result<()> {
        let sh = self.ensure(hi)?;
        let sl = self.ensure(lo)?;
        let (mh, ml) = (1u64 << sh, 1u64 << sl);
        let mut out: BTreeMap<u64, C64> = BTreeMap::new();
        for (&k, &a) in &self.amps {
            let col = 2 * ((k >> sh) & 1) as usize + ((k >> sl) & 1) as usize;
            let base = k & !(mh | ml);
            for (r, row) in m.iter().enumerate() {
                let c = row[col] * a;
                if c != ZERO {
                    let key = base | if r & 2 != 0 { mh } else { 0 } | if r & 1 != 0 { ml } else { 0 };
                    *out.entry(key).or_default() += c;
                }
            }
        }
        out.retain(|_, a| a.norm_sqr() > PRUNE);
        self.amps = out;
        self.check_support()
    }

    pub fn prob_one(&self, q: usize) -> f64 {
        let Some(s) = self.slot[q] else { return 0.0 };
        let mask = 1u64 << s;
        let total: f64 = self.amps.values().map(|a| a.norm_sqr()).sum();
        let one: f64 = self.amps.iter().filter(|(k, _)| *k & mask != 0).map(|(_, a)| a.norm_sqr()).sum();
        (one / total).clamp(0.0, 1.0)
    }

    /// Projects qubit `q` onto `outcome`; `p` is the outcome probability.
    pub fn collapse(&mut self, q: usize, outcome: bool, p: f64) -> Result<()> {
        let s = self.ensure(q)?;
        let mask = 1u64 << s;
        self.amps.retain(|k, _| (k & mask != 0) == outcome);
        if self.amps.is_empty() || p <= 0.0 {
            return Err(Error::domain(format!("measurement of qubit {q} forced onto a zero-probability outcome")));
        }
        let scale = 1.0 / p.sqrt();
        self.amps.values_mut().for_each(|a| *a *= scale);
        Ok(())
    }

    /// Resets a measured qubit and returns its slot.
    pub fn release(&mut self, q: usize, outcome: bool) {
        if let Some(s) = self.slot[q].take() {
            if outcome {
                let mask = 1u64 << s;
                self.remap(|k| k & !mask);
            }
            self.free.push(s);
        }
    }

    fn bit(&self, key: u64, q: usize) -> bool {
        self.slot[q].is_some_and(|s| key & (1u64 << s) != 0)
    }

    pub fn to_dense(&self, qubits: &[usize]) -> StateVector {
        let mut amplitudes = vec![ZERO; 1usize << qubits.len()];
        for (&k, &a) in &self.amps {
            let idx = qubits.iter().enumerate().fold(0usize, |acc, (j, &q)| acc | (usize::from(self.bit(k, q)) << j));
            amplitudes[idx] += a;
        }
        StateVector { amplitudes, qubit_map: qubits.to_vec() }
    }

    /// Z-basis sample of `qubits`; character `j` is `qubits[j]`.
    pub fn sample<R: Rng + ?Sized>(&self, qubits: &[usize], rng: &mut R) -> String {
        let total: f64 = self.amps.values().map(|a| a.norm_sqr()).sum();
        let mut r = rng.random::<f64>() * total;
        let mut chosen = *self.amps.keys().next_back().expect("nonempty state");
        for (&k, a) in &self.amps {
            r -= a.norm_sqr();
            if r < 0.0 {
                chosen = k;
                break;
            }
        }
        qubits.iter().map(|&q| if self.bit(chosen, q) { '1' } else { '0' }).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hadamard;

    #[test]
    fn bell_pair_and_release() {
        let mut m = Machine::new(3, 1, 1 << 10);
        m.apply1(0, &hadamard()).unwrap();
        m.cnot(0, 1).unwrap();
        assert_eq!(m.support(), 2);
        assert!((m.prob_one(1) - 0.5).abs() < 1e-12);
        m.collapse(1, true, 0.5).unwrap();
        m.release(1, true);
        let s = m.to_dense(&[0, 2]);
        assert!((s.amplitudes[1].re - 1.0).abs() < 1e-12);
        assert_eq!(m.free.len(), MAX_SLOTS - 1);
    }

    #[test]
    fn support_limit_enforced() {
        let mut m = Machine::new(4, 0, 4);
        for q in 0..2 {
            m.apply1(q, &hadamard()).unwrap();
        }
        assert!(matches!(m.apply1(2, &hadamard()), Err(Error::SupportLimit { limit: 4 })));
    }
}
