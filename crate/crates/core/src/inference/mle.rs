use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use super::elicit::InitialConditions;
use super::likelihood::{bic, log_likelihood};
use super::nelder_mead::{minimize, NelderMeadOptions};
use crate::competitors::{PgwParams, WeibullParams};
use crate::error::{Error, Result};
use crate::hazard::{in_critical_band, Oscillator, OscillatorParams};
use crate::survdata::SurvivalDataset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    /// Damped-oscillator hazard with fixed initial conditions.
    Ho,
    Weibull,
    Pgw,
}

impl ModelKind {
    pub fn free_parameters(self) -> usize {
        match self {
            ModelKind::Ho | ModelKind::Pgw => 3,
            ModelKind::Weibull => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Ho => "ho",
            ModelKind::Weibull => "weibull",
            ModelKind::Pgw => "pgw",
        }
    }
}

/// Model selector together with whatever it holds fixed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    Ho(InitialConditions),
    Weibull,
    Pgw,
}

impl ModelSpec {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelSpec::Ho(_) => ModelKind::Ho,
            ModelSpec::Weibull => ModelKind::Weibull,
            ModelSpec::Pgw => ModelKind::Pgw,
        }
    }

    /// Log-likelihood at natural-scale parameters `theta`.
    pub fn log_likelihood(&self, theta: &[f64], data: &SurvivalDataset) -> f64 {
        match *self {
            ModelSpec::Ho(ic) => {
                if in_critical_band(theta[0]) {
                    return f64::NEG_INFINITY;
                }
                match OscillatorParams::new(theta[0], theta[1], theta[2], ic.h0, ic.r0) {
                    Ok(p) => log_likelihood(&Oscillator::new(p), data),
                    Err(_) => f64::NEG_INFINITY,
                }
            }
            ModelSpec::Weibull => match WeibullParams::new(theta[0], theta[1]) {
                Ok(p) => log_likelihood(&p, data),
                Err(_) => f64::NEG_INFINITY,
            },
            ModelSpec::Pgw => match PgwParams::new(theta[0], theta[1], theta[2]) {
                Ok(p) => log_likelihood(&p, data),
                Err(_) => f64::NEG_INFINITY,
            },
        }
    }

    fn fitted(&self, theta: &[f64]) -> FittedParams {
        match *self {
            ModelSpec::Ho(ic) => FittedParams::Ho {
                eta: theta[0],
                w0: theta[1],
                hb: theta[2],
                h0: ic.h0,
                r0: ic.r0,
            },
            ModelSpec::Weibull => FittedParams::Weibull {
                scale: theta[0],
                shape: theta[1],
            },
            ModelSpec::Pgw => FittedParams::Pgw {
                scale: theta[0],
                shape1: theta[1],
                shape2: theta[2],
            },
        }
    }

    /// Random start on the log scale, centred on data-driven magnitudes.
    fn draw_start(&self, data: &SurvivalDataset, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let mut normal = |mean: f64, sd: f64| Normal::new(mean, sd).expect("sd > 0").sample(rng);
        let mean_time = data.total_time() / data.len() as f64;
        let crude_rate = data.n_events().max(1) as f64 / data.total_time();
        match self {
            ModelSpec::Ho(_) => vec![normal(0.0, 1.0), normal(0.0, 1.5), normal(crude_rate.ln(), 1.0)],
            ModelSpec::Weibull => vec![normal(mean_time.ln(), 1.0), normal(0.0, 0.5)],
            ModelSpec::Pgw => vec![normal(mean_time.ln(), 1.0), normal(0.0, 0.5), normal(0.0, 1.0)],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum FittedParams {
    Ho { eta: f64, w0: f64, hb: f64, h0: f64, r0: f64 },
    Weibull { scale: f64, shape: f64 },
    Pgw { scale: f64, shape1: f64, shape2: f64 },
}

impl FittedParams {
    pub fn oscillator(&self) -> Option<OscillatorParams<f64>> {
        match *self {
            FittedParams::Ho { eta, w0, hb, h0, r0 } => OscillatorParams::new(eta, w0, hb, h0, r0).ok(),
            _ => None,
        }
    }

    pub fn free_values(&self) -> Vec<f64> {
        match *self {
            FittedParams::Ho { eta, w0, hb, .. } => vec![eta, w0, hb],
            FittedParams::Weibull { scale, shape } => vec![scale, shape],
            FittedParams::Pgw { scale, shape1, shape2 } => vec![scale, shape1, shape2],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StartTrace {
    pub start: usize,
    pub initial_loglik: f64,
    pub final_loglik: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: FittedParams,
    pub loglik: f64,
    pub bic: f64,
    pub k: usize,
    pub n: usize,
    pub n_events: usize,
    pub converged: bool,
    pub seed: u64,
    pub optimizer_trace: Vec<StartTrace>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    pub starts: usize,
    pub seed: u64,
    pub simplex: NelderMeadOptions,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            starts: 10,
            seed: 1,
            simplex: NelderMeadOptions::default(),
        }
    }
}

const MAX_START_TRIES: usize = 1000;
/// Search box for every log-parameter. Beyond it `hb t` dwarfs `H(t)` and the
/// likelihood is dominated by rounding.
pub const LOG_PARAM_BOUND: f64 = 20.0;
const POLISH_ROUNDS: usize = 3;

/// Maximum likelihood by multistart Nelder–Mead on log-transformed parameters.
pub fn fit_mle(spec: &ModelSpec, data: &SurvivalDataset, opts: &FitOptions) -> Result<FitResult> {
    if data.n_events() == 0 {
        return Err(Error::NoEvents);
    }
    let objective = |x: &[f64]| {
        if x.iter().any(|v| v.abs() > LOG_PARAM_BOUND) {
            return f64::INFINITY;
        }
        let theta: Vec<f64> = x.iter().map(|v| v.exp()).collect();
        -spec.log_likelihood(&theta, data)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut trace = Vec::with_capacity(opts.starts);
    let mut best: Option<(Vec<f64>, f64, bool)> = None;
    for start in 0..opts.starts.max(1) {
        let Some((x0, f0)) = (0..MAX_START_TRIES)
            .map(|_| spec.draw_start(data, &mut rng))
            .map(|x| {
                let f = objective(&x);
                (x, f)
            })
            .find(|(_, f)| f.is_finite())
        else {
            continue;
        };
        let mut result = minimize(objective, &x0, &opts.simplex);
        let mut iterations = result.iterations;
        // restart from the optimum: the simplex can collapse before reaching it
        for _ in 0..POLISH_ROUNDS {
            let again = minimize(objective, &result.x, &opts.simplex);
            iterations += again.iterations;
            let improved = again.fx < result.fx - 1e-12 * (1.0 + result.fx.abs());
            result = again;
            if !improved {
                break;
            }
        }
        trace.push(StartTrace {
            start,
            initial_loglik: -f0,
            final_loglik: -result.fx,
            iterations,
            converged: result.converged,
        });
        if result.fx.is_finite() && best.as_ref().is_none_or(|b| result.fx < b.1) {
            best = Some((result.x, result.fx, result.converged));
        }
    }
    let (x, fx, converged) = best.ok_or(Error::AllStartsFailed)?;
    let theta: Vec<f64> = x.iter().map(|v| v.exp()).collect();
    let loglik = -fx;
    let k = spec.kind().free_parameters();
    Ok(FitResult {
        params: spec.fitted(&theta),
        loglik,
        bic: bic(loglik, k, data.len()),
        k,
        n: data.len(),
        n_events: data.n_events(),
        converged,
        seed: opts.seed,
        optimizer_trace: trace,
    })
}
