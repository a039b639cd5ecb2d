//! The seven-term worst-case error model.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::path::Path;

use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::circuit::{LayerClass, Schedule};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    S,
    Is,
    D,
    Id,
    M,
    Im,
    Ic,
}

impl Term {
    pub const ALL: [Term; 7] = [Term::S, Term::Is, Term::D, Term::Id, Term::M, Term::Im, Term::Ic];

    pub fn symbol(self) -> &'static str {
        match self {
            Term::S => "p_s",
            Term::Is => "p_is",
            Term::D => "p_d",
            Term::Id => "p_id",
            Term::M => "p_m",
            Term::Im => "p_im",
            Term::Ic => "p_ic",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

/// Integer exponents of the seven success terms, in the order of [`Term::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ExponentVector(pub [u64; 7]);

impl ExponentVector {
    pub const ZERO: ExponentVector = ExponentVector([0; 7]);

    pub fn new(s: u64, is: u64, d: u64, id: u64, m: u64, im: u64, ic: u64) -> Self {
        ExponentVector([s, is, d, id, m, im, ic])
    }

    /// From signed components; fails if any is negative.
    pub fn from_signed(v: [i64; 7]) -> Result<Self> {
        let mut out = [0u64; 7];
        for (o, (x, t)) in out.iter_mut().zip(v.iter().zip(Term::ALL)) {
            *o = u64::try_from(*x).map_err(|_| Error::domain(format!("negative exponent {x} for {}", t.symbol())))?;
        }
        Ok(ExponentVector(out))
    }

    pub fn get(&self, t: Term) -> u64 {
        self.0[t.index()]
    }

    pub fn set(&mut self, t: Term, v: u64) {
        self.0[t.index()] = v;
    }

    pub fn bump(&mut self, t: Term, by: u64) {
        self.0[t.index()] += by;
    }

    pub fn scale(&self, k: u64) -> Self {
        ExponentVector(self.0.map(|x| x * k))
    }

    /// `self − other`, term by term.
    pub fn delta(&self, other: &ExponentVector) -> [i64; 7] {
        let mut d = [0i64; 7];
        for (i, x) in d.iter_mut().enumerate() {
            *x = self.0[i] as i64 - other.0[i] as i64;
        }
        d
    }

    pub fn to_rational(self) -> RationalExponents {
        RationalExponents(self.0.map(|x| Rational64::from_integer(x as i64)))
    }
}

impl Add for ExponentVector {
    type Output = ExponentVector;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for ExponentVector {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..7 {
            self.0[i] += rhs.0[i];
        }
    }
}

impl std::iter::Sum for ExponentVector {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(ExponentVector::ZERO, Add::add)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Term::ALL.iter().map(|t| format!("{}^{}", t.symbol(), self.get(*t))).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Rational exponents, used by the approximate adaptive W expression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalExponents(pub [Rational64; 7]);

impl RationalExponents {
    pub fn get(&self, t: Term) -> Rational64 {
        self.0[t.index()]
    }

    pub fn evaluate(&self, terms: &SuccessTerms) -> f64 {
        Term::ALL
            .iter()
            .map(|&t| {
                let e = self.get(t).to_f64().unwrap_or(f64::NAN);
                if e.is_zero() {
                    1.0
                } else {
                    terms.get(t).powf(e)
                }
            })
            .product()
    }
}

impl fmt::Display for RationalExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Term::ALL.iter().map(|t| format!("{}^{}", t.symbol(), self.get(*t))).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Expected versus observed exponents with per-term deltas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentComparison {
    pub label: String,
    pub expected: ExponentVector,
    pub actual: ExponentVector,
}

impl ExponentComparison {
    pub fn new(label: impl Into<String>, expected: ExponentVector, actual: ExponentVector) -> Self {
        ExponentComparison { label: label.into(), expected, actual }
    }

    pub fn matches(&self) -> bool {
        self.expected == self.actual
    }

    /// Nonzero `actual − expected` entries.
    pub fn deltas(&self) -> Vec<(Term, i64)> {
        let d = self.actual.delta(&self.expected);
        Term::ALL.iter().zip(d).filter(|(_, x)| *x != 0).map(|(t, x)| (*t, x)).collect()
    }
}

impl fmt::Display for ExponentComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.matches() {
            return write!(f, "{}: match ({})", self.label, self.expected);
        }
        let d: Vec<String> = self.deltas().iter().map(|(t, x)| format!("{}{:+}", t.symbol(), x)).collect();
        write!(f, "{}: MISMATCH [{}] expected {} got {}", self.label, d.join(", "), self.expected, self.actual)
    }
}

/// Success probabilities of the elementary operations. `p_c` is fixed at 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuccessTerms {
    pub p_s: f64,
    pub p_is: f64,
    pub p_d: f64,
    pub p_id: f64,
    pub p_m: f64,
    pub p_im: f64,
    pub p_ic: f64,
}

impl SuccessTerms {
    pub const ONES: SuccessTerms = SuccessTerms { p_s: 1.0, p_is: 1.0, p_d: 1.0, p_id: 1.0, p_m: 1.0, p_im: 1.0, p_ic: 1.0 };

    pub fn new(p_s: f64, p_is: f64, p_d: f64, p_id: f64, p_m: f64, p_im: f64, p_ic: f64) -> Result<Self> {
        let t = SuccessTerms { p_s, p_is, p_d, p_id, p_m, p_im, p_ic };
        t.check()?;
        Ok(t)
    }

    pub fn check(&self) -> Result<()> {
        for term in Term::ALL {
            let v = self.get(term);
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::domain(format!("{} = {v} outside [0, 1]", term.symbol())));
            }
        }
        Ok(())
    }

    pub fn get(&self, t: Term) -> f64 {
        match t {
            Term::S => self.p_s,
            Term::Is => self.p_is,
            Term::D => self.p_d,
            Term::Id => self.p_id,
            Term::M => self.p_m,
            Term::Im => self.p_im,
            Term::Ic => self.p_ic,
        }
    }

    /// First-order reduction: `p_s = p_is = 1`, `p_m = p_d`, `p_im = p_ic = p_id`.
    pub fn assume_easy(&self) -> Self {
        SuccessTerms { p_s: 1.0, p_is: 1.0, p_d: self.p_d, p_id: self.p_id, p_m: self.p_d, p_im: self.p_id, p_ic: self.p_id }
    }
}

/// `∏ term^exponent`.
pub fn evaluate(exp: &ExponentVector, terms: &SuccessTerms) -> f64 {
    Term::ALL
        .iter()
        .map(|&t| {
            let e = exp.get(t);
            match i32::try_from(e) {
                Ok(e) => terms.get(t).powi(e),
                Err(_) => terms.get(t).powf(e as f64),
            }
        })
        .product()
}

/// Exponents charged by a schedule.
///
/// With `worst_case_corrections`, a single-qubit layer holding `m` conditional
/// ops charges `⌈m/2⌉` of them as gates and the rest as idle.
pub fn count_exponents(schedule: &Schedule, worst_case_corrections: bool) -> ExponentVector {
    let mut e = ExponentVector::ZERO;
    for layer in &schedule.layers {
        let ops = layer.ops.len() as u64;
        let idle = layer.idle.len() as u64;
        match layer.class {
            LayerClass::Single => {
                let cond = layer.conditional as u64;
                let charged = if worst_case_corrections { cond.div_ceil(2) } else { cond };
                e.bump(Term::S, ops - cond + charged);
                e.bump(Term::Is, idle + cond - charged);
            }
            LayerClass::Double => {
                e.bump(Term::D, ops);
                e.bump(Term::Id, idle);
            }
            LayerClass::Measure => {
                e.bump(Term::M, ops);
                e.bump(Term::Im, idle);
            }
            LayerClass::Classical => e.bump(Term::Ic, layer.live() as u64),
        }
    }
    e
}

/// Exponents of a controlled single-qubit gate in the standard decomposition.
pub fn cost_controlled_u() -> ExponentVector {
    ExponentVector::new(3, 3, 2, 0, 0, 0, 0)
}

/// Raw device numbers. Times: `t2_us` in microseconds, gate times in ns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeviceCalibration {
    pub p_s_err: f64,
    pub p_d_err: f64,
    pub p_m_err: f64,
    pub t2_us: f64,
    pub t_2q_ns: f64,
    pub t_meas_ns: f64,
}

impl DeviceCalibration {
    pub const BRISBANE: DeviceCalibration =
        DeviceCalibration { p_s_err: 2.530e-4, p_d_err: 9.442e-3, p_m_err: 1.600e-2, t2_us: 131.71, t_2q_ns: 660.0, t_meas_ns: 1300.0 };

    pub fn validate(&self) -> Result<()> {
        if !(self.t2_us > 0.0) || !self.t2_us.is_finite() {
            return Err(Error::Calibration(format!("t2_us must be positive, got {}", self.t2_us)));
        }
        for (name, v) in [("t_2q_ns", self.t_2q_ns), ("t_meas_ns", self.t_meas_ns)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::Calibration(format!("{name} must be non-negative, got {v}")));
            }
        }
        for (name, v) in [("p_s_err", self.p_s_err), ("p_d_err", self.p_d_err), ("p_m_err", self.p_m_err)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Calibration(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        Ok(())
    }

    pub fn t2_ns(&self) -> f64 {
        self.t2_us * 1000.0
    }

    /// Single-qubit gate time implied by `p_s = exp(−t/T2)`.
    pub fn t_1q_ns(&self) -> f64 {
        -self.t2_ns() * (1.0 - self.p_s_err).ln()
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let cal: DeviceCalibration = serde_json::from_str(src).map_err(|e| Error::Calibration(e.to_string()))?;
        cal.validate()?;
        Ok(cal)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let src = std::fs::read_to_string(path).map_err(|e| Error::Calibration(format!("{}: {e}", path.display())))?;
        Self::from_json(&src)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("calibration serializes")
    }
}

pub fn terms_from_calibration(cal: &DeviceCalibration) -> Result<SuccessTerms> {
    cal.validate()?;
    let t2 = cal.t2_ns();
    let p_s = 1.0 - cal.p_s_err;
    let p_idle_meas = (-cal.t_meas_ns / t2).exp();
    SuccessTerms::new(p_s, p_s, 1.0 - cal.p_d_err, (-cal.t_2q_ns / t2).exp(), 1.0 - cal.p_m_err, p_idle_meas, p_idle_meas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn brisbane_idle_terms() {
        let t = terms_from_calibration(&DeviceCalibration::BRISBANE).unwrap();
        assert_relative_eq!(1.0 - t.p_id, 4.998e-3, max_relative = 5e-4);
        assert_relative_eq!(1.0 - t.p_im, 9.822e-3, max_relative = 5e-4);
        assert_eq!(t.p_im, t.p_ic);
        assert_eq!(t.p_s, t.p_is);
        assert_relative_eq!(DeviceCalibration::BRISBANE.t_1q_ns(), 33.33, max_relative = 1e-3);
    }

    #[test]
    fn zero_duration_idle_is_perfect() {
        let cal = DeviceCalibration { t_2q_ns: 0.0, ..DeviceCalibration::BRISBANE };
        assert_eq!(terms_from_calibration(&cal).unwrap().p_id, 1.0);
    }

    #[test]
    fn rejects_bad_calibration() {
        let cal = DeviceCalibration { t2_us: 0.0, ..DeviceCalibration::BRISBANE };
        assert!(terms_from_calibration(&cal).is_err());
        assert!(DeviceCalibration::from_json(r#"{"p_s_err":0.1}"#).is_err());
        let extra = r#"{"p_s_err":0,"p_d_err":0,"p_m_err":0,"t2_us":1,"t_2q_ns":0,"t_meas_ns":0,"x":1}"#;
        assert!(DeviceCalibration::from_json(extra).is_err());
    }

    #[test]
    fn json_round_trip() {
        let src = r#"{"p_s_err":2.530e-4,"p_d_err":9.442e-3,"p_m_err":1.600e-2,"t2_us":131.71,"t_2q_ns":660,"t_meas_ns":1300}"#;
        let cal = DeviceCalibration::from_json(src).unwrap();
        assert_eq!(cal, DeviceCalibration::BRISBANE);
        assert_eq!(DeviceCalibration::from_json(&cal.to_json()).unwrap(), cal);
    }

    #[test]
    fn controlled_u_cost() {
        let c = cost_controlled_u();
        assert_eq!(evaluate(&c, &SuccessTerms::ONES), 1.0);
        let t = SuccessTerms { p_d: 0.99, ..SuccessTerms::ONES };
        assert_relative_eq!(evaluate(&c, &t), 0.9801, max_relative = 1e-12);
    }

    #[test]
    fn terms_are_range_checked() {
        assert!(SuccessTerms::new(1.1, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(SuccessTerms::new(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn comparison_reports_deltas() {
        let a = ExponentVector::new(1, 2, 3, 4, 5, 6, 7);
        let mut b = a;
        b.bump(Term::Is, 1);
        let cmp = ExponentComparison::new("x", a, b);
        assert!(!cmp.matches());
        assert_eq!(cmp.deltas(), vec![(Term::Is, 1)]);
        assert!(cmp.to_string().contains("p_is+1"));
    }

    #[test]
    fn negative_exponents_rejected() {
        assert!(ExponentVector::from_signed([0, 0, -1, 0, 0, 0, 0]).is_err());
        assert_eq!(ExponentVector::from_signed([1; 7]).unwrap(), ExponentVector([1; 7]));
    }
}
