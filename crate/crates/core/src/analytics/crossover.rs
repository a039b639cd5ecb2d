use std::fmt;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use super::formulas::{ceil_log2, ghz_exponents};
use crate::noise::{ExponentVector, SuccessTerms, Term};
use crate::protocols::GhzVariant;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    AllVsAdaptive,
    LinearVsAdaptive,
    HybridAll,
    HybridLinear,
    WState,
}

impl Comparison {
    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "all" => Comparison::AllVsAdaptive,
            "linear" => Comparison::LinearVsAdaptive,
            "hybrid-all" => Comparison::HybridAll,
            "hybrid-linear" => Comparison::HybridLinear,
            "w" => Comparison::WState,
            other => return Err(Error::domain(format!("unknown comparison '{other}'"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Comparison::AllVsAdaptive => "all-vs-adaptive",
            Comparison::LinearVsAdaptive => "linear-vs-adaptive",
            Comparison::HybridAll => "hybrid-all",
            Comparison::HybridLinear => "hybrid-linear",
            Comparison::WState => "w-state",
        }
    }

    fn needs_k(self) -> bool {
        matches!(self, Comparison::HybridAll | Comparison::HybridLinear)
    }

    /// Baseline and challenger variants for the GHZ comparisons.
    fn variants(self, k: Option<usize>) -> Result<(GhzVariant, GhzVariant)> {
        let k = || k.ok_or_else(|| Error::domain("hybrid comparisons require k"));
        Ok(match self {
            Comparison::AllVsAdaptive => (GhzVariant::AllToAll, GhzVariant::Adaptive),
            Comparison::LinearVsAdaptive => (GhzVariant::Linear, GhzVariant::Adaptive),
            Comparison::HybridAll => (GhzVariant::AllToAll, GhzVariant::HybridAll { k: k()? }),
            Comparison::HybridLinear => (GhzVariant::Linear, GhzVariant::HybridLinear { k: k()? }),
            Comparison::WState => return Err(Error::domain("the W comparison has no GHZ variants")),
        })
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Adaptive wins iff `p_d ≥ p_id^threshold` under the first-order reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverResult {
    pub comparison: Comparison,
    pub n: usize,
    pub k: Option<usize>,
    pub threshold: f64,
    /// Exact value for the GHZ comparisons.
    pub exact: Option<Rational64>,
}

pub fn crossover(n: usize, comparison: Comparison, k: Option<usize>) -> Result<CrossoverResult> {
    let r = |x: usize| x as i64;
    let exact = match comparison {
        Comparison::AllVsAdaptive | Comparison::LinearVsAdaptive => {
            if n < 2 {
                return Err(Error::domain("n ≥ 2 required"));
            }
            let depth = if comparison == Comparison::AllVsAdaptive { ceil_log2(n) } else { n.div_ceil(2) };
            Some(Rational64::new(r(n) * (r(depth) - 4), 2 * (r(n) - 1)))
        }
        Comparison::HybridAll | Comparison::HybridLinear => {
            let k = k.ok_or_else(|| Error::domain("hybrid comparisons require k"))?;
            if k <= 1 {
                return Err(Error::domain("hybrid comparisons require k ≥ 2"));
            }
            if !n.is_multiple_of(k) {
                return Err(Error::domain(format!("k must divide n, got n={n}, k={k}")));
            }
            let g = n / k;
            let (dn, dg) = if comparison == Comparison::HybridAll {
                (ceil_log2(n), ceil_log2(g))
            } else {
                (n.div_ceil(2), g.div_ceil(2))
            };
            Some(Rational64::new(r(n) * (r(dn) - r(dg) - 4) - r(k) * r(dg), 2 * (r(k) - 1)))
        }
        Comparison::WState => None,
    };
    let threshold = match exact {
        Some(x) => x.to_f64().expect("finite rational"),
        None => {
            if n < 3 {
                return Err(Error::domain("the W threshold requires n ≥ 3"));
            }
            let l = (n as f64).log2();
            3.0 * n as f64 / (59.0 * l * l.log2())
        }
    };
    Ok(CrossoverResult { comparison, n, k: if comparison.needs_k() { k } else { None }, threshold, exact })
}

/// Smallest `n ≤ cap` with `ln p_d / ln p_id ≤ threshold(n)`.
///
/// Hybrid comparisons scan the multiples of `k`.
pub fn min_n_adaptive_wins(terms: &SuccessTerms, comparison: Comparison, k: Option<usize>, cap: usize) -> Result<Option<usize>> {
    for (name, p) in [("p_d", terms.p_d), ("p_id", terms.p_id)] {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain(format!("{name} must lie strictly inside (0, 1), got {p}")));
        }
    }
    let ratio = terms.p_d.ln() / terms.p_id.ln();
    let (start, step) = match comparison {
        Comparison::HybridAll | Comparison::HybridLinear => {
            let k = k.ok_or_else(|| Error::domain("hybrid comparisons require k"))?;
            (k, k)
        }
        Comparison::WState => (3, 1),
        _ => (2, 1),
    };
    let mut n = start;
    while n <= cap {
        if ratio <= crossover(n, comparison, k)?.threshold {
            return Ok(Some(n));
        }
        n += step;
    }
    Ok(None)
}

/// `(p_d, p_id)` exponents after setting `p_s = p_is = 1`, `p_m → p_d` and
/// `p_im, p_ic → p_id`.
pub fn easy_reduced(e: &ExponentVector) -> (i64, i64) {
    let g = |t| e.get(t) as i64;
    (g(Term::D) + g(Term::M), g(Term::Id) + g(Term::Im) + g(Term::Ic))
}

/// Exponent-level form of a GHZ comparison at its threshold.
///
/// Under the reduction, `P(adaptive)/P(base) = p_d^Δd · p_id^Δid`. Setting
/// `p_d = (1+ε)·p_id^T` gives `(1+ε)^Δd · p_id^(T·Δd + Δid)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCheck {
    pub comparison: Comparison,
    pub n: usize,
    pub delta_d: i64,
    pub delta_id: i64,
    pub threshold: Rational64,
    /// `T·Δd + Δid`; zero when the reduced inequality is tight at the threshold.
    pub residual: Rational64,
    /// `2(n−1)` for adaptive, `2(k−1)` for hybrid.
    pub expected_gain: i64,
}

impl TheoremCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero() && self.delta_d == self.expected_gain
    }

    /// `ln(P(adaptive)/P(base)) − Δd·ln(1+ε)` at `p_d = (1+ε)·p_id^T`.
    pub fn log_ratio_excess(&self, eps: f64, p_id: f64) -> f64 {
        let t = self.threshold.to_f64().expect("finite");
        let ln_pd = (1.0 + eps).ln() + t * p_id.ln();
        let ln_ratio = self.delta_d as f64 * ln_pd + self.delta_id as f64 * p_id.ln();
        ln_ratio - self.expected_gain as f64 * (1.0 + eps).ln()
    }
}

pub fn theorem_check(n: usize, comparison: Comparison, k: Option<usize>) -> Result<TheoremCheck> {
    let (base, challenger) = comparison.variants(k)?;
    let threshold = crossover(n, comparison, k)?.exact.expect("GHZ thresholds are rational");
    let (bd, bid) = easy_reduced(&ghz_exponents(n, base)?);
    let (cd, cid) = easy_reduced(&ghz_exponents(n, challenger)?);
    let (delta_d, delta_id) = (cd - bd, cid - bid);
    let residual = threshold * Rational64::from_integer(delta_d) + Rational64::from_integer(delta_id);
    let expected_gain = match challenger {
        GhzVariant::HybridAll { k } | GhzVariant::HybridLinear { k } => 2 * (k as i64 - 1),
        _ => 2 * (n as i64 - 1),
    };
    Ok(TheoremCheck { comparison, n, delta_d, delta_id, threshold, residual, expected_gain })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::{terms_from_calibration, DeviceCalibration};
    use approx::assert_relative_eq;

    #[test]
    fn substitution_values() {
        let c = crossover(15, Comparison::LinearVsAdaptive, None).unwrap();
        assert_eq!(c.exact, Some(Rational64::new(15, 7)));
        assert_relative_eq!(crossover(55, Comparison::AllVsAdaptive, None).unwrap().threshold, 55.0 / 54.0, max_relative = 1e-12);
        assert!(crossover(4, Comparison::LinearVsAdaptive, None).unwrap().threshold < 0.0);
        let w = crossover(1024, Comparison::WState, None).unwrap().threshold;
        assert_relative_eq!(w, 3.0 * 1024.0 / (59.0 * 10.0 * 10f64.log2()), max_relative = 1e-12);
    }

    #[test]
    fn hybrid_domain() {
        assert!(crossover(12, Comparison::HybridAll, None).is_err());
        assert!(crossover(12, Comparison::HybridAll, Some(1)).is_err());
        assert!(crossover(12, Comparison::HybridAll, Some(5)).is_err());
        assert!(crossover(12, Comparison::HybridLinear, Some(3)).is_ok());
    }

    #[test]
    fn brisbane_linear_crossover_is_15() {
        let t = terms_from_calibration(&DeviceCalibration::BRISBANE).unwrap();
        assert_eq!(min_n_adaptive_wins(&t, Comparison::LinearVsAdaptive, None, 1000).unwrap(), Some(15));
    }

    #[test]
    fn equal_terms_need_threshold_one() {
        let t = SuccessTerms { p_d: 0.99, p_id: 0.99, ..SuccessTerms::ONES };
        let n = min_n_adaptive_wins(&t, Comparison::LinearVsAdaptive, None, 1000).unwrap().unwrap();
        assert!(crossover(n, Comparison::LinearVsAdaptive, None).unwrap().threshold >= 1.0);
        assert!((2..n).all(|m| crossover(m, Comparison::LinearVsAdaptive, None).unwrap().threshold < 1.0));
    }

    #[test]
    fn cap_and_domain() {
        let t = SuccessTerms { p_d: 0.5, p_id: 0.999, ..SuccessTerms::ONES };
        assert_eq!(min_n_adaptive_wins(&t, Comparison::AllVsAdaptive, None, 64).unwrap(), None);
        let bad = SuccessTerms { p_id: 1.0, ..t };
        assert!(min_n_adaptive_wins(&bad, Comparison::AllVsAdaptive, None, 64).is_err());
    }

    #[test]
    fn theorem_checks_tight() {
        for n in 3..=64 {
            for cmp in [Comparison::AllVsAdaptive, Comparison::LinearVsAdaptive] {
                let c = theorem_check(n, cmp, None).unwrap();
                assert!(c.holds(), "{cmp} n={n}: {c:?}");
                assert!(c.log_ratio_excess(0.1, 0.995).abs() < 1e-9);
            }
        }
    }
}
