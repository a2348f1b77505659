use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

/// Gamma density with shape/scale parametrization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaPrior {
    pub shape: f64,
    pub scale: f64,
}

impl GammaPrior {
    pub fn new(shape: f64, scale: f64) -> Self {
        assert!(shape > 0.0 && scale > 0.0, "gamma prior needs positive shape and scale");
        Self { shape, scale }
    }

    pub fn log_density(&self, x: f64) -> f64 {
        if !(x > 0.0) {
            return f64::NEG_INFINITY;
        }
        (self.shape - 1.0) * x.ln() - x / self.scale - ln_gamma(self.shape) - self.shape * self.scale.ln()
    }

    pub fn mean(&self) -> f64 {
        self.shape * self.scale
    }

    pub fn variance(&self) -> f64 {
        self.shape * self.scale * self.scale
    }
}

impl Default for GammaPrior {
    /// Weakly informative: shape 0.001, scale 1000.
    fn default() -> Self {
        Self {
            shape: 0.001,
            scale: 1000.0,
        }
    }
}

/// Independent gamma priors on `(eta, w0, hb)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PriorSpec {
    pub eta: GammaPrior,
    pub w0: GammaPrior,
    pub hb: GammaPrior,
}

impl PriorSpec {
    pub fn shared(prior: GammaPrior) -> Self {
        Self {
            eta: prior,
            w0: prior,
            hb: prior,
        }
    }
}

/// Sum of the three gamma log-densities; `-inf` off the positive orthant.
pub fn log_prior(prior: &PriorSpec, theta: [f64; 3]) -> f64 {
    prior.eta.log_density(theta[0]) + prior.w0.log_density(theta[1]) + prior.hb.log_density(theta[2])
}
