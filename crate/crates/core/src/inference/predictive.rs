use std::io::Write;

use serde::{Deserialize, Serialize};

use super::elicit::InitialConditions;
use super::mcmc::PosteriorDraws;
use crate::error::{Error, Result};
use crate::hazard::{Oscillator, OscillatorParams};

/// Pointwise posterior summaries of the hazard and survival curves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveGrid {
    pub times: Vec<f64>,
    pub levels: (f64, f64),
    pub hazard_mean: Vec<f64>,
    pub hazard_lo: Vec<f64>,
    pub hazard_hi: Vec<f64>,
    pub survival_mean: Vec<f64>,
    pub survival_lo: Vec<f64>,
    pub survival_hi: Vec<f64>,
}

impl CurveGrid {
    /// CSV with header `time,hazard_mean,hazard_lo,hazard_hi,survival_mean,survival_lo,survival_hi`.
    pub fn write_csv<W: Write>(&self, sink: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(sink);
        w.write_record([
            "time",
            "hazard_mean",
            "hazard_lo",
            "hazard_hi",
            "survival_mean",
            "survival_lo",
            "survival_hi",
        ])?;
        for i in 0..self.times.len() {
            w.write_record(
                [
                    self.times[i],
                    self.hazard_mean[i],
                    self.hazard_lo[i],
                    self.hazard_hi[i],
                    self.survival_mean[i],
                    self.survival_lo[i],
                    self.survival_hi[i],
                ]
                .map(|v| v.to_string()),
            )?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Evenly spaced grid `0, t_max/(n-1), ..., t_max`.
pub fn linear_grid(t_max: f64, n_points: usize) -> Vec<f64> {
    match n_points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n_points).map(|i| t_max * i as f64 / (n_points - 1) as f64).collect(),
    }
}

/// Type-7 sample quantile of sorted data.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn predictive_curves(
    draws: &PosteriorDraws,
    ic: InitialConditions,
    grid: &[f64],
    levels: (f64, f64),
) -> Result<CurveGrid> {
    if draws.is_empty() {
        return Err(Error::EmptyDraws);
    }
    if !(0.0 <= levels.0 && levels.0 <= levels.1 && levels.1 <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "levels",
            reason: format!("need 0 <= lo <= hi <= 1, got {levels:?}"),
        });
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) || grid.first().is_some_and(|t| !(*t >= 0.0)) {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: "must be non-negative and strictly increasing".into(),
        });
    }
    let oscillators = draws
        .draws
        .iter()
        .map(|d| OscillatorParams::new(d[0], d[1], d[2], ic.h0, ic.r0).map(Oscillator::new))
        .collect::<Result<Vec<_>>>()?;

    let m = grid.len();
    let n = oscillators.len() as f64;
    let mut out = CurveGrid {
        times: grid.to_vec(),
        levels,
        hazard_mean: vec![0.0; m],
        hazard_lo: vec![0.0; m],
        hazard_hi: vec![0.0; m],
        survival_mean: vec![0.0; m],
        survival_lo: vec![0.0; m],
        survival_hi: vec![0.0; m],
    };
    let mut hz = vec![0.0; oscillators.len()];
    let mut sv = vec![0.0; oscillators.len()];
    for (i, &t) in grid.iter().enumerate() {
        for (k, osc) in oscillators.iter().enumerate() {
            hz[k] = osc.hazard(t);
            sv[k] = osc.survival_unchecked(t);
        }
        out.hazard_mean[i] = hz.iter().sum::<f64>() / n;
        out.survival_mean[i] = sv.iter().sum::<f64>() / n;
        hz.sort_by(f64::total_cmp);
        sv.sort_by(f64::total_cmp);
        out.hazard_lo[i] = quantile(&hz, levels.0);
        out.hazard_hi[i] = quantile(&hz, levels.1);
        out.survival_lo[i] = quantile(&sv, levels.0);
        out.survival_hi[i] = quantile(&sv, levels.1);
    }
    Ok(out)
}
