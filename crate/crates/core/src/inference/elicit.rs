use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Survival values at `0`, `dt`, `2 dt` used to pin the initial conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialConditionSpec {
    pub dt: f64,
    pub s0: f64,
    pub s1: f64,
    pub s2: f64,
}

impl InitialConditionSpec {
    /// `S(0) = 1`.
    pub fn new(dt: f64, s1: f64, s2: f64) -> Self {
        Self { dt, s0: 1.0, s1, s2 }
    }
}

/// Fixed `(h(0), h'(0))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialConditions {
    pub h0: f64,
    pub r0: f64,
}

/// Finite-difference approximations of `h(0) = -S'/S` and `h'(0) = (S'^2 - S S'') / S^2`.
pub fn elicit_initial_conditions(spec: &InitialConditionSpec) -> Result<InitialConditions> {
    let InitialConditionSpec { dt, s0, s1, s2 } = *spec;
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "dt",
            reason: format!("must be > 0, got {dt}"),
        });
    }
    if s1 >= s0 {
        return Err(Error::NonPositiveH0);
    }
    if !(s0 <= 1.0 && s1 >= s2 && s2 > 0.0) {
        return Err(Error::InvalidParameter {
            name: "survival",
            reason: format!("need 1 >= s0 >= s1 >= s2 > 0, got ({s0}, {s1}, {s2})"),
        });
    }
    let slope = (s1 - s0) / (dt * s1);
    let h0 = -slope;
    let r0 = slope * slope - (s2 - 2.0 * s1 + s0) / (dt * dt * s1);
    Ok(InitialConditions { h0, r0 })
}
