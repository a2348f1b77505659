//! Shifted damped harmonic oscillator hazard.
//!
//! The hazard solves `h'' + 2 eta w0 h' + w0^2 (h - hb) = 0` with `h(0) = h0` and
//! `h'(0) = r0`. Everything here is closed form: evaluation in the three damping
//! regimes, stationary points, the positivity (admissibility) test, and the
//! shape classification.

mod admissibility;
mod closed_form;
mod shape;

pub use admissibility::{critical_points, envelope_horizon, is_admissible, AdmissibilityReport};
pub use closed_form::{
    coefficients, cumulative_hazard_at, hazard_at, hazard_derivative_at,
    hazard_second_derivative_at, survival_at, Oscillator, RegimeCoefficients,
};
pub use shape::{classify_shape, tail_rate, ShapeClass};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Half-width of the band around `eta = 1` treated as critically damped.
pub const CRITICAL_BAND: f64 = 1e-9;

/// Relative slack (times `hb`) used when comparing a hazard minimum against zero.
pub const POSITIVITY_SLACK: f64 = 1e-12;

/// The five model parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorParams<F> {
    /// Damping ratio, unitless, `>= 0`.
    pub eta: F,
    /// Natural frequency, 1/time, `> 0`.
    pub w0: F,
    /// Equilibrium hazard level, `> 0`.
    pub hb: F,
    /// Initial hazard `h(0)`, `> 0`.
    pub h0: F,
    /// Initial slope `h'(0)`, any sign.
    pub r0: F,
}

impl<F: Scalar> OscillatorParams<F> {
    /// Validates the sign constraints. Admissibility is a separate question,
    /// see [`is_admissible`].
    pub fn new(eta: F, w0: F, hb: F, h0: F, r0: F) -> Result<Self> {
        let check = |name: &'static str, v: F, ok: bool, what: &str| {
            if v.is_finite() && ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    reason: format!("{what}, got {v}"),
                })
            }
        };
        check("eta", eta, eta >= F::zero(), "must be >= 0")?;
        check("w0", w0, w0 > F::zero(), "must be > 0")?;
        check("hb", hb, hb > F::zero(), "must be > 0")?;
        check("h0", h0, h0 > F::zero(), "must be > 0")?;
        check("r0", r0, true, "must be finite")?;
        Ok(Self { eta, w0, hb, h0, r0 })
    }

    pub fn regime(&self) -> Regime {
        regime_of(self)
    }

    /// `h(t) == hb` for all `t`.
    pub fn is_constant(&self) -> bool {
        self.h0 == self.hb && self.r0 == F::zero()
    }
}

/// Damping regime selected by `eta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    UnderDamped,
    OverDamped,
    CriticallyDamped,
}

pub fn regime_of<F: Scalar>(params: &OscillatorParams<F>) -> Regime {
    let band = F::lit(CRITICAL_BAND);
    let dev = params.eta - F::one();
    if dev.abs() <= band {
        Regime::CriticallyDamped
    } else if dev < F::zero() {
        Regime::UnderDamped
    } else {
        Regime::OverDamped
    }
}

/// True if `eta` lies inside the critically damped band.
pub fn in_critical_band(eta: f64) -> bool {
    (eta - 1.0).abs() <= CRITICAL_BAND
}
