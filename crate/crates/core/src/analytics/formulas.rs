use std::fmt;

use num_rational::Rational64;

use crate::noise::{ExponentComparison, ExponentVector, RationalExponents};
use crate::protocols::GhzVariant;
use crate::{Error, Result};

/// `⌈log2 n⌉` for `n ≥ 1`.
pub fn ceil_log2(n: usize) -> usize {
    assert!(n >= 1);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

fn ceil_half(x: i64) -> i64 {
    (x + 1).div_euclid(2)
}

fn floor_half(x: i64) -> i64 {
    x.div_euclid(2)
}

fn exact_log2(n: usize) -> Option<i64> {
    n.is_power_of_two().then(|| n.trailing_zeros() as i64)
}

fn pow2(x: i64) -> i64 {
    1i64 << x
}

/// Exponents printed for adaptive `n = 55` in the Brisbane comparison. The
/// `p_is` entry is one above what the adaptive expression yields.
pub const BRISBANE_ADAPTIVE_55_REPORTED: ExponentVector = ExponentVector([82, 83, 108, 2, 54, 55, 55]);

/// Success exponents of GHZ preparation on `n ≥ 2` qubits.
pub fn ghz_exponents(n: usize, variant: GhzVariant) -> Result<ExponentVector> {
    if n < 2 {
        return Err(Error::domain("n ≥ 2 required"));
    }
    variant.check(n)?;
    let ni = n as i64;
    let ceil_n2 = ceil_half(ni);
    let floor_n2 = floor_half(ni);
    let lg = ceil_log2(n) as i64;
    let v = match variant {
        GhzVariant::AllToAll => [1, ni - 1, ni - 1, ni * (lg - 2) + 2, 0, 0, 0],
        GhzVariant::Linear => [1, ni - 1, ni - 1, ni * (ceil_n2 - 2) + 2, 0, 0, 0],
        GhzVariant::Adaptive => [ni + floor_n2, ni + ceil_n2 - 1, 2 * (ni - 1), 2, ni - 1, ni, ni],
        GhzVariant::HybridAll { k } | GhzVariant::HybridLinear { k } => {
            let ki = k as i64;
            let g = n / k;
            let depth = match variant {
                GhzVariant::HybridAll { .. } => ceil_log2(g) as i64,
                _ => ceil_half(g as i64),
            };
            [2 * ki + floor_n2, 3 * ni - ki + ceil_n2 - 1, ni + ki - 2, (ni + ki) * depth + 2, ki - 1, ni, ni]
        }
    };
    ExponentVector::from_signed(v)
}

/// Exponents of one bystander qubit idling through GHZ preparation.
///
/// Hybrid variants compose the block idle term with the adaptive idle term
/// over `k` blocks.
pub fn ghz_idle_exponents(n: usize, variant: GhzVariant) -> Result<ExponentVector> {
    if n < 2 {
        return Err(Error::domain("n ≥ 2 required"));
    }
    variant.check(n)?;
    Ok(match variant {
        GhzVariant::AllToAll => ExponentVector::new(0, 1, 0, ceil_log2(n) as u64, 0, 0, 0),
        GhzVariant::Linear => ExponentVector::new(0, 1, 0, n.div_ceil(2) as u64, 0, 0, 0),
        GhzVariant::Adaptive => ExponentVector::new(0, 2, 0, 2, 0, 1, 1),
        GhzVariant::HybridAll { k } | GhzVariant::HybridLinear { k } => {
            let g = n / k;
            let block = match variant {
                GhzVariant::HybridAll { .. } => ExponentVector::new(0, 1, 0, ceil_log2(g) as u64, 0, 0, 0),
                _ => ExponentVector::new(0, 1, 0, g.div_ceil(2) as u64, 0, 0, 0),
            };
            block + ExponentVector::new(0, 2, 0, 2, 0, 1, 1)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WVariant {
    NonAdaptive,
    AdaptiveExact,
    AdaptiveApprox,
}

impl WVariant {
    pub fn name(self) -> &'static str {
        match self {
            WVariant::NonAdaptive => "non-adaptive",
            WVariant::AdaptiveExact => "adaptive-exact",
            WVariant::AdaptiveApprox => "adaptive-approx",
        }
    }
}

fn w_log_params(n: usize) -> Result<(i64, i64, i64)> {
    let k = exact_log2(n).filter(|&k| k >= 1).ok_or_else(|| Error::domain(format!("adaptive W requires n = 2^k ≥ 2, got {n}")))?;
    let t = ceil_log2(k as usize + 1) as i64;
    Ok((n as i64, k, t))
}

/// Integer exponents of W preparation. The approximate adaptive variant is
/// rational-valued; see [`w_adaptive_approx_exponents`].
pub fn w_exponents(n: usize, variant: WVariant) -> Result<ExponentVector> {
    if n < 2 {
        return Err(Error::domain("n ≥ 2 required"));
    }
    match variant {
        WVariant::NonAdaptive => {
            let n = n as i64;
            ExponentVector::from_signed([3 * n - 4, n * (2 * n - 5) + 4, 3 * n - 5, n * (3 * n - 11) + 10, 0, 0, 0])
        }
        WVariant::AdaptiveExact => {
            let (n, k, t) = w_log_params(n)?;
            let p = pow2(t);
            let ph = pow2(t - 1);
            let s = 22 * n * k * t
                + 14 * n * k
                + 2 * n * ceil_half(p - 1)
                + n * (3 * p + ceil_half(k))
                + 2 * n * t * (5 * p - 2)
                + 3 * k
                + 4 * k * ceil_half(n - 1)
                + 2 * n * (2 * k - p - 1) * ceil_half(t - 1)
                + 4 * n * t * ceil_half(k - 1)
                + 2 * n * t * ceil_half(ph - 1)
                + 2 * n * ceil_half(p - 1);
            let is = 46 * n * k * t + 20 * n * k + 3 * n * p - 18 * n * t + 21 * n - 11 * k
                + n * floor_half(k)
                + 2 * n * (2 * k + p - 1) * floor_half(t - 1)
                + 4 * n * t * floor_half(k - 1)
                + 2 * n * t * floor_half(ph - 1)
                + 2 * n * floor_half(p - 1)
                + 11 * n * t * p
                + 4 * k * floor_half(n - 1);
            let d = 28 * n * k * t + 7 * n * k + 9 * n * t * (p - 2) + 2 * n * p - 5 * n - 8 * k;
            let id = 16 * n * k * t + 14 * n * k + 2 * n * t * (3 * p + 1) + 2 * n * p + 17 * n + 4 * k;
            let m = 16 * n * k * t + 6 * n * k + 2 * n * t * (3 * p - 5) - n - 4 * k;
            let imc = 24 * n * k * t + 11 * n * k + 3 * n * t * (3 * p - 4) + 10 * n - 4 * k;
            ExponentVector::from_signed([s, is, d, id, m, imc, imc])
        }
        WVariant::AdaptiveApprox => Err(Error::domain("the approximate adaptive W exponents are rational; use w_adaptive_approx_exponents")),
    }
}

/// Approximate adaptive W exponents (`⌈x⌉ ≈ x ≈ ⌊x⌋`, `2^t ≈ k`).
pub fn w_adaptive_approx_exponents(n: usize) -> Result<RationalExponents> {
    let (n, k, t) = w_log_params(n)?;
    let r = |num: i64, den: i64| Rational64::new(num, den);
    let nkt = n * k * t;
    let nk = n * k;
    let nt = n * t;
    let s = r(71 * nkt, 2) + r(37 * nk, 2) + r(3 * nk - 8 * nt - n + k, 1);
    let is = r(125 * nkt, 2) + r(47 * nk, 2) + r(-22 * nt + 21 * n - 13 * k, 1);
    let d = r(37 * nkt + 9 * nk - 18 * nt - 5 * n - 8 * k, 1);
    let id = r(22 * nkt + 16 * nk + 2 * nt + 17 * n + 4 * k, 1);
    let m = r(22 * nkt + 6 * nk - 10 * nt - n - 4 * k, 1);
    let imc = r(33 * nkt + 11 * nk - 12 * nt + 10 * n - 4 * k, 1);
    Ok(RationalExponents([s, is, d, id, m, imc, imc]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subroutine {
    Fanout(usize),
    Parity(usize),
    IFanout,
    OrReduction(usize),
    OrGate(usize),
    OrGatePow2(usize),
    Uncompress(usize),
    Compress(usize),
    EqualI(usize),
    CzTarget(usize),
}

impl fmt::Display for Subroutine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subroutine::Fanout(n) => write!(f, "Fanout_{n}"),
            Subroutine::Parity(n) => write!(f, "Parity_{n}"),
            Subroutine::IFanout => write!(f, "iFanout"),
            Subroutine::OrReduction(n) => write!(f, "OR_{n}-reduction"),
            Subroutine::OrGate(n) => write!(f, "OR_{n}"),
            Subroutine::OrGatePow2(n) => write!(f, "OR_{n}(power of two)"),
            Subroutine::Uncompress(n) => write!(f, "Uncompress_{n}"),
            Subroutine::Compress(n) => write!(f, "Compress_{n}"),
            Subroutine::EqualI(k) => write!(f, "Equal_i(k={k})"),
            Subroutine::CzTarget(k) => write!(f, "cZ-target(k={k})"),
        }
    }
}

fn need(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::domain(what()))
    }
}

pub fn subroutine_exponents(kind: Subroutine) -> Result<ExponentVector> {
    match kind {
        Subroutine::Fanout(n) => {
            need(n >= 1, || "fanout arity ≥ 1 required".into())?;
            let n = n as i64;
            ExponentVector::from_signed([
                2 * n + ceil_half(n - 1),
                5 * n + floor_half(n - 1) - 2,
                3 * n - 2,
                2 * n + 1,
                2 * n - 1,
                3 * n - 1,
                3 * n - 1,
            ])
        }
        Subroutine::Parity(n) => {
            need(n >= 1, || "parity arity ≥ 1 required".into())?;
            let n = n as i64;
            ExponentVector::from_signed([
                4 * n + ceil_half(n - 1) - 1,
                3 * n + floor_half(n - 1) - 1,
                3 * n - 2,
                2 * n + 1,
                2 * n - 1,
                3 * n - 1,
                3 * n - 1,
            ])
        }
        Subroutine::IFanout => Ok(ExponentVector::new(0, 4, 0, 3, 0, 2, 2)),
        Subroutine::OrReduction(n) => {
            need(n >= 1, || "OR-reduction arity ≥ 1 required".into())?;
            let t = ceil_log2(n + 1) as i64;
            let n = n as i64;
            let nt = n * t;
            ExponentVector::from_signed([
                11 * nt + 2 * (n * ceil_half(t - 1) + t * ceil_half(n - 1)) + 2 * t,
                23 * nt + 2 * n * floor_half(t - 1) + 2 * t * floor_half(n - 1) - 4 * (n + t),
                14 * nt - 4 * (n + t),
                8 * nt + 2 * (n + t),
                8 * nt - 2 * (n + t),
                12 * nt - 2 * (n + t),
                12 * nt - 2 * (n + t),
            ])
        }
        Subroutine::OrGate(n) => {
            need(n >= 1, || "OR arity ≥ 1 required".into())?;
            let t = ceil_log2(n + 1) as i64;
            let n = n as i64;
            let p = pow2(t);
            let ph = pow2(t - 1);
            let nt = n * t;
            let s = 22 * nt
                + 2 * (2 * n - p - 1) * ceil_half(t - 1)
                + 4 * t * ceil_half(n - 1)
                + 2 * t * ceil_half(ph - 1)
                + 2 * ceil_half(p - 1)
                + 10 * t * p
                + 3 * p
                - 4 * t
                - 2;
            let is = 2 * (2 * n + p - 1) * floor_half(t - 1)
                + 4 * t * floor_half(n - 1)
                + 2 * t * floor_half(ph - 1)
                + 2 * floor_half(p - 1)
                + 46 * nt
                - 8 * n
                - 18 * t
                + 11 * t * p
                + 3 * p
                - 5;
            let d = 28 * nt - 8 * n - 18 * t + 9 * t * p + 2 * p - 6;
            let id = 16 * nt + 4 * n + 2 * t + 6 * t * p + 2 * p + 2;
            let m = 16 * nt - 4 * n - 10 * t + 6 * t * p - 2;
            let imc = 24 * nt - 4 * n - 12 * t + 9 * t * p;
            ExponentVector::from_signed([s, is, d, id, m, imc, imc])
        }
        Subroutine::OrGatePow2(n) => {
            let k = exact_log2(n).ok_or_else(|| Error::domain(format!("n = 2^k required, got {n}")))?;
            let n = n as i64;
            let nk = n * k;
            ExponentVector::from_signed([
                42 * nk + 50 * n - 4 * k + 2 * (2 * k - 2 * n + 1) * ceil_half(k) + 6 * (k + 1) * ceil_half(n - 1) - 6,
                68 * nk + 68 * n - 18 * k + 2 * (4 * n - 1) * floor_half(k) + 6 * (k + 1) * floor_half(n - 1) - 25,
                46 * nk + 42 * n - 18 * k - 24,
                28 * nk + 36 * n + 2 * k + 4,
                28 * nk + 24 * n - 10 * k - 12,
                42 * nk + 38 * n - 12 * k - 12,
                42 * nk + 38 * n - 12 * k - 12,
            ])
        }
        Subroutine::EqualI(k) => {
            need(k >= 1, || "k ≥ 1 required".into())?;
            Ok(subroutine_exponents(Subroutine::OrGate(k))? + ExponentVector::new(2 * k as u64, 2, 0, 0, 0, 0, 0))
        }
        Subroutine::CzTarget(k) => {
            need(k >= 1, || "k ≥ 1 required".into())?;
            Ok(subroutine_exponents(Subroutine::Fanout(k + 1))? + ExponentVector::new(2 * k as u64, 2, 0, 0, 0, 0, 0))
        }
        Subroutine::Uncompress(n) | Subroutine::Compress(n) => {
            let k = exact_log2(n).filter(|&k| k >= 1).ok_or_else(|| Error::domain(format!("n = 2^k ≥ 2 required, got {n}")))? as u64;
            let nu = n as u64;
            let shared = subroutine_exponents(Subroutine::Fanout(n))?.scale(2 * k)
                + subroutine_exponents(Subroutine::IFanout)?.scale(2 * nu);
            let base = nu * k + nu - k;
            Ok(match kind {
                Subroutine::Uncompress(_) => {
                    ExponentVector::new(k, base, 0, 0, 0, 0, 0)
                        + shared
                        + subroutine_exponents(Subroutine::EqualI(k as usize))?.scale(nu)
                }
                _ => {
                    ExponentVector::new(2 * k, 2 * base, 0, 0, 0, 0, 0)
                        + shared
                        + subroutine_exponents(Subroutine::CzTarget(k as usize))?.scale(nu)
                }
            })
        }
    }
}

/// Uncompress × Compress with the Equal_i and cZ-target bounds, against the
/// adaptive W expression.
pub fn w_composition_check(n: usize) -> Result<ExponentComparison> {
    let assembled = subroutine_exponents(Subroutine::Uncompress(n))? + subroutine_exponents(Subroutine::Compress(n))?;
    Ok(ExponentComparison::new(format!("W adaptive exact n={n}: composed vs closed form"), w_exponents(n, WVariant::AdaptiveExact)?, assembled))
}
