use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::elicit::InitialConditions;
use super::likelihood::log_likelihood;
use super::mle::{fit_mle, FitOptions, ModelSpec};
use super::prior::{log_prior, PriorSpec};
use crate::error::{Error, Result};
use crate::hazard::{in_critical_band, is_admissible, Oscillator, OscillatorParams};
use crate::survdata::SurvivalDataset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub iters: usize,
    pub burn_in: usize,
    pub thin: usize,
    pub seed: u64,
}

impl SamplerConfig {
    fn validate(&self) -> Result<()> {
        if self.iters <= self.burn_in {
            return Err(Error::InvalidParameter {
                name: "iters",
                reason: format!("must exceed burn_in ({} <= {})", self.iters, self.burn_in),
            });
        }
        if self.thin == 0 {
            return Err(Error::InvalidParameter {
                name: "thin",
                reason: "must be >= 1".into(),
            });
        }
        Ok(())
    }
}

/// Raw output of [`adaptive_metropolis`].
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    pub samples: Vec<Vec<f64>>,
    pub log_targets: Vec<f64>,
    /// Post-burn-in acceptance fraction.
    pub acceptance_rate: f64,
}

const TARGET_ACCEPTANCE: f64 = 0.3;
const MIN_ACCEPTANCE: f64 = 0.01;
const COV_REFRESH: usize = 50;

/// Random-walk Metropolis whose proposal covariance is learned during burn-in and frozen afterwards.
///
/// The proposal is `exp(s) * L z`, with `L` the Cholesky factor of the running sample covariance
/// (diagonal `init_sd^2` until enough history exists) and `s` tuned by Robbins–Monro toward
/// 30% acceptance.
pub fn adaptive_metropolis(
    mut log_target: impl FnMut(&[f64]) -> f64,
    init: &[f64],
    init_sd: &[f64],
    config: &SamplerConfig,
) -> Result<Chain> {
    config.validate()?;
    let d = init.len();
    assert_eq!(d, init_sd.len(), "init and init_sd differ in length");
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let mut x = init.to_vec();
    let mut lx = log_target(&x);
    if !lx.is_finite() {
        return Err(Error::InadmissibleParams);
    }

    let mut chol = diagonal(init_sd);
    let mut log_scale = 0.0f64;
    let optimal = 2.38 / (d as f64).sqrt();
    let mut welford = Welford::new(d);
    let warmup = 20 * d;

    let kept = (config.iters - config.burn_in).div_ceil(config.thin);
    let mut samples = Vec::with_capacity(kept);
    let mut log_targets = Vec::with_capacity(kept);
    let mut accepted_after = 0usize;
    let mut z = vec![0.0; d];
    let mut y = vec![0.0; d];

    for i in 0..config.iters {
        for zi in z.iter_mut() {
            *zi = rng.sample(StandardNormal);
        }
        let step = log_scale.exp();
        for r in 0..d {
            let lz: f64 = (0..=r).map(|c| chol[r][c] * z[c]).sum();
            y[r] = x[r] + step * lz;
        }
        let ly = log_target(&y);
        let log_alpha = if ly.is_nan() { f64::NEG_INFINITY } else { ly - lx };
        let u: f64 = rng.random();
        let accept = u.ln() < log_alpha;
        if accept {
            x.copy_from_slice(&y);
            lx = ly;
        }

        if i < config.burn_in {
            let alpha = log_alpha.min(0.0).exp();
            log_scale += (alpha - TARGET_ACCEPTANCE) / ((i + 1) as f64).powf(0.6);
            welford.push(&x);
            if welford.n > warmup && (i + 1) % COV_REFRESH == 0 {
                if let Some(mut l) = cholesky(&welford.covariance(1e-10)) {
                    for row in l.iter_mut() {
                        row.iter_mut().for_each(|v| *v *= optimal);
                    }
                    // keep the overall step size continuous across the switch
                    let (old, new) = (trace_norm(&chol), trace_norm(&l));
                    chol = l;
                    if old > 0.0 && new > 0.0 && welford.n <= warmup + COV_REFRESH {
                        log_scale += (old / new).ln();
                    }
                }
            }
        } else {
            accepted_after += accept as usize;
            if (i - config.burn_in).is_multiple_of(config.thin) {
                samples.push(x.clone());
                log_targets.push(lx);
            }
        }
    }

    let acceptance_rate = accepted_after as f64 / (config.iters - config.burn_in) as f64;
    if acceptance_rate < MIN_ACCEPTANCE {
        return Err(Error::ChainStuck {
            rate: acceptance_rate,
        });
    }
    Ok(Chain {
        samples,
        log_targets,
        acceptance_rate,
    })
}

fn diagonal(sd: &[f64]) -> Vec<Vec<f64>> {
    (0..sd.len())
        .map(|r| (0..sd.len()).map(|c| if r == c { sd[r] } else { 0.0 }).collect())
        .collect()
}

fn trace_norm(l: &[Vec<f64>]) -> f64 {
    l.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

fn cholesky(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = a[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            if i == j {
                if !(s > 0.0) {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Some(l)
}

struct Welford {
    n: usize,
    mean: Vec<f64>,
    m2: Vec<Vec<f64>>,
}

impl Welford {
    fn new(d: usize) -> Self {
        Self {
            n: 0,
            mean: vec![0.0; d],
            m2: vec![vec![0.0; d]; d],
        }
    }

    fn push(&mut self, x: &[f64]) {
        self.n += 1;
        let d = x.len();
        let before: Vec<f64> = (0..d).map(|i| x[i] - self.mean[i]).collect();
        for i in 0..d {
            self.mean[i] += before[i] / self.n as f64;
        }
        for i in 0..d {
            for j in 0..d {
                self.m2[i][j] += before[i] * (x[j] - self.mean[j]);
            }
        }
    }

    fn covariance(&self, jitter: f64) -> Vec<Vec<f64>> {
        let denom = (self.n.max(2) - 1) as f64;
        let mut c: Vec<Vec<f64>> = self
            .m2
            .iter()
            .map(|row| row.iter().map(|v| v / denom).collect())
            .collect();
        for (i, row) in c.iter_mut().enumerate() {
            row[i] += jitter;
        }
        c
    }
}

/// Log-posterior of `(eta, w0, hb)` given fixed initial conditions, in log coordinates.
#[derive(Debug, Clone)]
pub struct OscillatorPosterior<'a> {
    data: Option<&'a SurvivalDataset>,
    prior: PriorSpec,
    ic: InitialConditions,
}

impl<'a> OscillatorPosterior<'a> {
    pub fn new(data: &'a SurvivalDataset, prior: PriorSpec, ic: InitialConditions) -> Self {
        Self {
            data: Some(data),
            prior,
            ic,
        }
    }

    /// Prior only: no likelihood and no admissibility restriction.
    pub fn prior_only(prior: PriorSpec, ic: InitialConditions) -> Self {
        Self { data: None, prior, ic }
    }

    /// Log density of `u = ln(theta)`, including the Jacobian `sum(u)`.
    pub fn log_density(&self, u: &[f64]) -> f64 {
        let theta = [u[0].exp(), u[1].exp(), u[2].exp()];
        let lp = log_prior(&self.prior, theta) + u.iter().sum::<f64>();
        if !lp.is_finite() {
            return f64::NEG_INFINITY;
        }
        let Some(data) = self.data else {
            return lp;
        };
        if in_critical_band(theta[0]) {
            return f64::NEG_INFINITY;
        }
        let Ok(params) = OscillatorParams::new(theta[0], theta[1], theta[2], self.ic.h0, self.ic.r0) else {
            return f64::NEG_INFINITY;
        };
        lp + log_likelihood(&Oscillator::new(params), data)
    }

    pub fn initial_conditions(&self) -> InitialConditions {
        self.ic
    }
}

/// Retained posterior sample on the natural scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosteriorDraws {
    pub draws: Vec<[f64; 3]>,
    pub log_posts: Vec<f64>,
    pub acceptance_rate: f64,
    pub seed: u64,
    pub iters: usize,
    pub burn_in: usize,
    pub thin: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosteriorSummary {
    pub mean: [f64; 3],
    pub sd: [f64; 3],
    pub acceptance_rate: f64,
    pub draws: usize,
    pub seed: u64,
    pub iters: usize,
    pub burn_in: usize,
    pub thin: usize,
}

impl PosteriorDraws {
    pub fn len(&self) -> usize {
        self.draws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.draws.is_empty()
    }

    pub fn mean(&self) -> [f64; 3] {
        let n = self.draws.len() as f64;
        let mut m = [0.0; 3];
        for d in &self.draws {
            for k in 0..3 {
                m[k] += d[k] / n;
            }
        }
        m
    }

    pub fn sd(&self) -> [f64; 3] {
        let m = self.mean();
        let n = self.draws.len();
        let mut v = [0.0; 3];
        for d in &self.draws {
            for k in 0..3 {
                v[k] += (d[k] - m[k]).powi(2);
            }
        }
        v.map(|s| (s / (n.max(2) - 1) as f64).sqrt())
    }

    pub fn summary(&self) -> PosteriorSummary {
        PosteriorSummary {
            mean: self.mean(),
            sd: self.sd(),
            acceptance_rate: self.acceptance_rate,
            draws: self.len(),
            seed: self.seed,
            iters: self.iters,
            burn_in: self.burn_in,
            thin: self.thin,
        }
    }

    /// CSV with header `eta,w0,hb,log_post`.
    pub fn write_csv<W: Write>(&self, sink: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(sink);
        w.write_record(["eta", "w0", "hb", "log_post"])?;
        for (d, lp) in self.draws.iter().zip(&self.log_posts) {
            w.write_record([d[0], d[1], d[2], *lp].map(|v| v.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Samples `posterior` starting from natural-scale `init`.
pub fn sample_posterior(
    posterior: &OscillatorPosterior<'_>,
    init: [f64; 3],
    init_sd: [f64; 3],
    config: &SamplerConfig,
) -> Result<PosteriorDraws> {
    let u0 = init.map(f64::ln);
    let chain = adaptive_metropolis(|u| posterior.log_density(u), &u0, &init_sd, config)?;
    let draws: Vec<[f64; 3]> = chain
        .samples
        .iter()
        .map(|u| [u[0].exp(), u[1].exp(), u[2].exp()])
        .collect();
    if posterior.data.is_some() {
        let ic = posterior.ic;
        debug_assert!(draws.iter().all(|d| {
            OscillatorParams::new(d[0], d[1], d[2], ic.h0, ic.r0).is_ok_and(|p| is_admissible(&p).admissible)
        }));
    }
    Ok(PosteriorDraws {
        draws,
        log_posts: chain.log_targets,
        acceptance_rate: chain.acceptance_rate,
        seed: config.seed,
        iters: config.iters,
        burn_in: config.burn_in,
        thin: config.thin,
    })
}

const INIT_LOG_SD: f64 = 0.05;

/// Posterior sampling for the oscillator model, started at the maximum likelihood estimate.
pub fn run_mcmc(
    data: &SurvivalDataset,
    prior: &PriorSpec,
    ic: InitialConditions,
    config: &SamplerConfig,
) -> Result<PosteriorDraws> {
    config.validate()?;
    let fit = fit_mle(
        &ModelSpec::Ho(ic),
        data,
        &FitOptions {
            seed: config.seed,
            ..Default::default()
        },
    )?;
    let v = fit.params.free_values();
    let posterior = OscillatorPosterior::new(data, *prior, ic);
    sample_posterior(&posterior, [v[0], v[1], v[2]], [INIT_LOG_SD; 3], config)
}
