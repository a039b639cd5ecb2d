use crate::circuit::{LayerClass, Schedule};
use crate::noise::DeviceCalibration;
use crate::Result;

/// Duration of one layer of each class, in nanoseconds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayerDurations {
    pub single_ns: f64,
    pub double_ns: f64,
    pub measure_ns: f64,
    pub classical_ns: f64,
}

impl LayerDurations {
    /// Single-qubit layers take `−T2·ln(p_s)`. Classical layers default to
    /// the measurement time.
    pub fn from_calibration(cal: &DeviceCalibration, classical_ns: Option<f64>) -> Result<Self> {
        cal.validate()?;
        Ok(LayerDurations {
            single_ns: cal.t_1q_ns(),
            double_ns: cal.t_2q_ns,
            measure_ns: cal.t_meas_ns,
            classical_ns: classical_ns.unwrap_or(cal.t_meas_ns),
        })
    }

    pub fn of(&self, class: LayerClass) -> f64 {
        match class {
            LayerClass::Single => self.single_ns,
            LayerClass::Double => self.double_ns,
            LayerClass::Measure => self.measure_ns,
            LayerClass::Classical => self.classical_ns,
        }
    }
}

/// Sum of layer durations, in nanoseconds.
pub fn runtime_estimate(schedule: &Schedule, durations: &LayerDurations) -> f64 {
    schedule.layers.iter().map(|l| durations.of(l.class)).sum()
}
