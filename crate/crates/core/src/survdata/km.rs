use std::io::Write;

use serde::Serialize;

use super::SurvivalDataset;
use crate::error::{Error, Result};

/// Product-limit estimate, one step per distinct event time.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KmCurve {
    pub times: Vec<f64>,
    pub survival: Vec<f64>,
    pub at_risk: Vec<usize>,
    pub deaths: Vec<usize>,
}

impl KmCurve {
    /// Right-continuous step function value at `t`.
    pub fn survival_at(&self, t: f64) -> f64 {
        match self.times.partition_point(|&x| x <= t) {
            0 => 1.0,
            i => self.survival[i - 1],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Kaplan–Meier estimator. Censorings tied with events leave the risk set after the event.
pub fn kaplan_meier(data: &SurvivalDataset) -> Result<KmCurve> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let sorted = data.sorted();
    let mut curve = KmCurve {
        times: Vec::new(),
        survival: Vec::new(),
        at_risk: Vec::new(),
        deaths: Vec::new(),
    };
    let mut at_risk = sorted.len();
    let mut s = 1.0;
    let mut i = 0;
    while i < sorted.len() {
        let t = sorted[i].time;
        let mut j = i;
        let mut deaths = 0;
        while j < sorted.len() && sorted[j].time == t {
            deaths += usize::from(sorted[j].event);
            j += 1;
        }
        if deaths > 0 {
            s *= 1.0 - deaths as f64 / at_risk as f64;
            curve.times.push(t);
            curve.survival.push(s);
            curve.at_risk.push(at_risk);
            curve.deaths.push(deaths);
        }
        at_risk -= j - i;
        i = j;
    }
    Ok(curve)
}

pub fn write_km_csv<W: Write>(curve: &KmCurve, sink: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["time", "survival", "at_risk", "deaths"])?;
    for i in 0..curve.times.len() {
        w.write_record([
            curve.times[i].to_string(),
            curve.survival[i].to_string(),
            curve.at_risk[i].to_string(),
            curve.deaths[i].to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
