use serde::Serialize;

use super::{critical_points, hazard_derivative_at, is_admissible, OscillatorParams, Regime};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ShapeClass {
    Increasing,
    Decreasing,
    Unimodal,
    Bathtub,
    Oscillatory,
    Constant,
}

/// Hazard shape of admissible parameters.
pub fn classify_shape<F: Scalar>(params: &OscillatorParams<F>) -> Result<ShapeClass> {
    if !is_admissible(params).admissible {
        return Err(Error::InadmissibleParams);
    }
    if params.is_constant() {
        return Ok(ShapeClass::Constant);
    }
    let (rising, turns) = match params.regime() {
        Regime::UnderDamped => return Ok(ShapeClass::Oscillatory),
        Regime::OverDamped => (initial_slope(params) > F::zero(), !critical_points(params)?.is_empty()),
        Regime::CriticallyDamped => {
            // h' = (r0 - w0 b t) e^{-w0 t}: one sign change iff r0 / (w0 b) > 0
            let b = params.r0 + params.w0 * (params.h0 - params.hb);
            let slope = initial_slope(params);
            (slope > F::zero(), b != F::zero() && slope / b > F::zero())
        }
    };
    Ok(match (rising, turns) {
        (true, false) => ShapeClass::Increasing,
        (false, false) => ShapeClass::Decreasing,
        (true, true) => ShapeClass::Unimodal,
        (false, true) => ShapeClass::Bathtub,
    })
}

/// `sign(r0)`, or the slope just after zero when `r0 = 0`.
fn initial_slope<F: Scalar>(params: &OscillatorParams<F>) -> F {
    if params.r0 != F::zero() {
        params.r0
    } else {
        hazard_derivative_at(params, F::lit(1e-8))
    }
}

/// Exponential decay rate of the survival tail: `hb`.
pub fn tail_rate<F: Scalar>(params: &OscillatorParams<F>) -> Result<F> {
    if !is_admissible(params).admissible {
        return Err(Error::InadmissibleParams);
    }
    Ok(params.hb)
}
