//! Weibull and power generalized Weibull (PGW) hazards.
//!
//! Weibull: `H(t) = (t / scale)^shape`.
//! PGW: `H(t) = (1 + (t / scale)^shape1)^(1 / shape2) - 1`, which reduces to the
//! Weibull at `shape2 = 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeibullParams<F> {
    pub scale: F,
    pub shape: F,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PgwParams<F> {
    pub scale: F,
    pub shape1: F,
    pub shape2: F,
}

fn positive<F: Scalar>(name: &'static str, v: F) -> Result<()> {
    if v > F::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be > 0, got {v}"),
        })
    }
}

/// `t > 0`, or `t = 0` when the hazard is finite there.
fn check_time<F: Scalar>(t: F, shape: F) -> Result<()> {
    if t > F::zero() || (t == F::zero() && shape >= F::one()) {
        Ok(())
    } else {
        Err(Error::NonPositiveTime(t.to_f64().unwrap_or(f64::NAN)))
    }
}

impl<F: Scalar> WeibullParams<F> {
    pub fn new(scale: F, shape: F) -> Result<Self> {
        positive("scale", scale)?;
        positive("shape", shape)?;
        Ok(Self { scale, shape })
    }

    pub fn hazard(&self, t: F) -> Result<F> {
        check_time(t, self.shape)?;
        Ok(self.hazard_unchecked(t))
    }

    pub(crate) fn hazard_unchecked(&self, t: F) -> F {
        let z = t / self.scale;
        self.shape / self.scale * z.powf(self.shape - F::one())
    }

    pub fn cumulative_hazard(&self, t: F) -> F {
        (t / self.scale).powf(self.shape)
    }
}

impl<F: Scalar> PgwParams<F> {
    pub fn new(scale: F, shape1: F, shape2: F) -> Result<Self> {
        positive("scale", scale)?;
        positive("shape1", shape1)?;
        positive("shape2", shape2)?;
        Ok(Self { scale, shape1, shape2 })
    }

    pub fn hazard(&self, t: F) -> Result<F> {
        check_time(t, self.shape1)?;
        Ok(self.hazard_unchecked(t))
    }

    pub(crate) fn hazard_unchecked(&self, t: F) -> F {
        let PgwParams { scale, shape1, shape2 } = *self;
        let z = (t / scale).powf(shape1);
        let one = F::one();
        shape1 / (shape2 * scale)
            * (t / scale).powf(shape1 - one)
            * (one + z).powf(one / shape2 - one)
    }

    pub fn cumulative_hazard(&self, t: F) -> F {
        let z = (t / self.scale).powf(self.shape1);
        // (1 + z)^(1/g) - 1 without cancellation for small z
        (z.ln_1p() / self.shape2).exp_m1()
    }
}

pub fn weibull_hazard<F: Scalar>(p: &WeibullParams<F>, t: F) -> Result<F> {
    p.hazard(t)
}

pub fn weibull_cumhazard<F: Scalar>(p: &WeibullParams<F>, t: F) -> F {
    p.cumulative_hazard(t)
}

pub fn pgw_hazard<F: Scalar>(p: &PgwParams<F>, t: F) -> Result<F> {
    p.hazard(t)
}

pub fn pgw_cumhazard<F: Scalar>(p: &PgwParams<F>, t: F) -> F {
    p.cumulative_hazard(t)
}
