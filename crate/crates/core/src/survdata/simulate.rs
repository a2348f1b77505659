use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Exp1};

use super::{SurvivalDataset, SurvivalRecord};
use crate::error::{Error, Result};
use crate::hazard::{is_admissible, Oscillator, OscillatorParams};
use crate::model::HazardModel;

const REL_TOL: f64 = 1e-13;

/// Solves `H(t) = target` for a model with positive hazard.
///
/// Brackets `[0, T]` by doubling `T`, then runs Newton steps safeguarded by bisection.
pub fn inverse_cumulative_hazard<M: HazardModel<f64> + ?Sized>(model: &M, target: f64) -> Result<f64> {
    if target <= 0.0 {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut doublings = 0;
    while model.cumulative_hazard(hi) <= target {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 1100 || !hi.is_finite() {
            return Err(Error::RootNotBracketed { target });
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let g = model.cumulative_hazard(x) - target;
        if g > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let slope = model.hazard(x);
        let newton = x - g / slope;
        let next = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= REL_TOL * next || hi - lo <= REL_TOL * hi {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// Draws `n` survival times by inverse transform, with independent exponential censoring
/// at `censoring_rate` (0 disables censoring).
pub fn simulate_from<M: HazardModel<f64> + ?Sized>(
    model: &M,
    n: usize,
    censoring_rate: f64,
    seed: u64,
) -> Result<SurvivalDataset> {
    if n == 0 {
        return Err(Error::EmptyDataset);
    }
    if !(censoring_rate >= 0.0) || !censoring_rate.is_finite() {
        return Err(Error::InvalidParameter {
            name: "censoring_rate",
            reason: format!("must be >= 0, got {censoring_rate}"),
        });
    }
    let censor = (censoring_rate > 0.0).then(|| Exp::new(censoring_rate).expect("positive rate"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(n);
    for _ in 0..n {
        let e: f64 = Exp1.sample(&mut rng);
        let t = inverse_cumulative_hazard(model, e.max(f64::MIN_POSITIVE))?.max(f64::MIN_POSITIVE);
        let record = match &censor {
            Some(dist) => {
                let c: f64 = dist.sample(&mut rng).max(f64::MIN_POSITIVE);
                SurvivalRecord {
                    time: t.min(c),
                    event: t <= c,
                }
            }
            None => SurvivalRecord { time: t, event: true },
        };
        records.push(record);
    }
    SurvivalDataset::new(records)
}

/// Simulates from the oscillator hazard; refuses inadmissible parameters.
pub fn simulate(
    params: &OscillatorParams<f64>,
    n: usize,
    censoring_rate: f64,
    seed: u64,
) -> Result<SurvivalDataset> {
    if !is_admissible(params).admissible {
        return Err(Error::InadmissibleParams);
    }
    simulate_from(&Oscillator::new(*params), n, censoring_rate, seed)
}
