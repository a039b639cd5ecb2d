use super::formulas::{ghz_exponents, subroutine_exponents, w_exponents, Subroutine, WVariant};
use crate::circuit::{decompose_controlled_1q, schedule, Circuit, Schedule};
use crate::noise::{count_exponents, ExponentComparison};
use crate::protocols::{build_fanout, build_ghz, build_parity, build_w_nonadaptive, GhzVariant};
use crate::{Error, Result};

/// Closed form against the layer count of a built circuit.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub comparison: ExponentComparison,
    pub circuit: Circuit,
    pub schedule: Schedule,
}

impl OracleReport {
    fn new(label: String, expected: crate::noise::ExponentVector, circuit: Circuit) -> Result<Self> {
        let schedule = schedule(&circuit, None)?;
        let actual = count_exponents(&schedule, true);
        Ok(OracleReport { comparison: ExponentComparison::new(label, expected, actual), circuit, schedule })
    }

    pub fn matches(&self) -> bool {
        self.comparison.matches()
    }

    pub fn trace(&self) -> String {
        self.schedule.trace(&self.circuit)
    }
}

pub fn ghz_oracle(n: usize, variant: GhzVariant) -> Result<OracleReport> {
    OracleReport::new(format!("GHZ {variant} n={n}"), ghz_exponents(n, variant)?, build_ghz(n, variant)?)
}

pub fn w_oracle(n: usize) -> Result<OracleReport> {
    let circuit = decompose_controlled_1q(&build_w_nonadaptive(n)?);
    OracleReport::new(format!("W non-adaptive n={n}"), w_exponents(n, WVariant::NonAdaptive)?, circuit)
}

/// Fanout and parity only; the other subroutines have no builder.
pub fn subroutine_oracle(kind: Subroutine) -> Result<OracleReport> {
    let circuit = match kind {
        Subroutine::Fanout(n) => build_fanout(n)?,
        Subroutine::Parity(n) => build_parity(n)?,
        other => return Err(Error::domain(format!("no circuit builder for {other}"))),
    };
    OracleReport::new(kind.to_string(), subroutine_exponents(kind)?, circuit)
}
