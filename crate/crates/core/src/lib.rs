//! Survival analysis with the shifted damped-harmonic-oscillator hazard.
//!
//! - [`hazard`]: closed-form hazard, cumulative hazard and survival in all damping
//!   regimes, admissibility, stationary points and shape classification.
//! - [`competitors`]: Weibull and power generalized Weibull baselines.
//! - [`survdata`]: datasets, CSV I/O, Kaplan–Meier, simulation.
//! - [`inference`]: censored log-likelihood, MLE, priors, adaptive Metropolis, BIC.
//! - [`cli`]: the `oscihaz` command-line front end.
//!
//! The model math is generic over [`Scalar`] (`f32` or `f64`); the aliases below fix
//! it to `f64`, which is what the data and inference layers use.

// NaN-rejecting `!(x > y)` guards are used throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod competitors;
pub mod error;
pub mod hazard;
pub mod inference;
pub mod model;
pub mod survdata;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Params = hazard::OscillatorParams<f64>;
pub type Oscillator = hazard::Oscillator<f64>;
pub type Coefficients = hazard::RegimeCoefficients<f64>;
pub type AdmissibilityReport = hazard::AdmissibilityReport<f64>;
pub type WeibullParams = competitors::WeibullParams<f64>;
pub type PgwParams = competitors::PgwParams<f64>;
