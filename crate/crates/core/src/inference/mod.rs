//! Likelihood-based and Bayesian inference for the hazard models.

mod elicit;
mod likelihood;
mod mcmc;
mod mle;
pub mod nelder_mead;
mod predictive;
mod prior;

pub use elicit::{elicit_initial_conditions, InitialConditionSpec, InitialConditions};
pub use likelihood::{bic, log_likelihood};
pub use mcmc::{
    adaptive_metropolis, run_mcmc, sample_posterior, Chain, OscillatorPosterior, PosteriorDraws,
    PosteriorSummary, SamplerConfig,
};
pub use mle::{fit_mle, FitOptions, FitResult, FittedParams, ModelKind, ModelSpec, StartTrace};
pub use predictive::{linear_grid, predictive_curves, CurveGrid};
pub use prior::{log_prior, GammaPrior, PriorSpec};
