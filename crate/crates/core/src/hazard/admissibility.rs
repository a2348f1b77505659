use serde::Serialize;

use super::closed_form::{coefficients, Oscillator};
use super::{OscillatorParams, Regime, POSITIVITY_SLACK};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Outcome of the positivity test, with the minimum that decided it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdmissibilityReport<F> {
    pub admissible: bool,
    pub min_location: Option<F>,
    pub min_value: Option<F>,
}

impl<F: Scalar> AdmissibilityReport<F> {
    fn positive() -> Self {
        Self {
            admissible: true,
            min_location: None,
            min_value: None,
        }
    }

    fn tested(slack: F, location: F, value: F) -> Self {
        Self {
            admissible: value > slack,
            min_location: Some(location),
            min_value: Some(value),
        }
    }
}

/// Time after which the transient stays below `rel * hb`.
pub fn envelope_horizon<F: Scalar>(params: &OscillatorParams<F>, rel: F) -> F {
    Oscillator::new(*params).envelope_horizon(rel)
}

// Angles (or log ratios) this close to zero are the stationary point at t = 0 itself.
const ORIGIN_TOL: f64 = 1e-12;

/// Stationary points of `h` after `t = 0` as `(time, hazard)` pairs.
///
/// Under-damped: the first two members of `t_k = (atan(mu) - phi + k pi) / w1` that are
/// positive. Over-damped: the single `t*`, when it exists and is positive.
pub fn critical_points<F: Scalar>(params: &OscillatorParams<F>) -> Result<Vec<(F, F)>> {
    let co = match coefficients(params) {
        Ok(co) => co,
        Err(Error::CriticallyDampedCoefficients) => return Err(Error::CriticallyDampedUnsupported),
        Err(e) => return Err(e),
    };
    if params.is_constant() {
        return Ok(Vec::new());
    }
    let osc = Oscillator::new(*params);
    let tol = F::lit(ORIGIN_TOL);
    match co.regime {
        Regime::UnderDamped => {
            let pi = F::PI();
            let slope_angle = match co.mu() {
                Ok(mu) => mu.atan(),
                Err(_) => F::FRAC_PI_2(),
            };
            let base = slope_angle - co.phase;
            let mut k = (-base / pi).floor() + F::one();
            if base + (k - F::one()) * pi > tol {
                k = k - F::one();
            }
            while base + k * pi <= tol {
                k = k + F::one();
            }
            let first = (base + k * pi) / co.w1;
            let second = first + pi / co.w1;
            Ok(vec![(first, osc.hazard(first)), (second, osc.hazard(second))])
        }
        Regime::OverDamped => {
            let (l1, l2, k1, k2) = osc.over_damped_terms().expect("over-damped");
            // h' = 0 where e^{(l1 - l2) t} = -k2 l2 / (k1 l1)
            let arg = -(k2 * l2) / (k1 * l1);
            if !(arg > F::zero()) || !arg.is_finite() {
                return Ok(Vec::new());
            }
            let log_arg = arg.ln();
            if log_arg <= tol {
                return Ok(Vec::new());
            }
            let t = log_arg / (F::lit(2.0) * co.w1);
            Ok(vec![(t, osc.hazard(t))])
        }
        Regime::CriticallyDamped => unreachable!("handled by coefficients()"),
    }
}

/// Tests `h(t) > 0` for all `t >= 0`.
pub fn is_admissible<F: Scalar>(params: &OscillatorParams<F>) -> AdmissibilityReport<F> {
    let slack = F::lit(POSITIVITY_SLACK) * params.hb;
    if !(params.h0 > F::zero()) {
        return AdmissibilityReport::tested(slack, F::zero(), params.h0);
    }
    if params.is_constant() {
        return AdmissibilityReport::positive();
    }
    match params.regime() {
        Regime::CriticallyDamped => numeric_minimum(params, slack),
        Regime::UnderDamped if params.eta == F::zero() => {
            let co = coefficients(params).expect("non-critical");
            // trough where sin(w0 t + phi) = -1
            let tau = F::TAU();
            let mut angle = F::lit(1.5) * F::PI() - co.phase;
            angle = angle - (angle / tau).floor() * tau;
            AdmissibilityReport::tested(slack, angle / co.w1, params.hb - co.amplitude)
        }
        _ => {
            let points = critical_points(params).expect("non-critical");
            points
                .into_iter()
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal))
                .map(|(t, h)| AdmissibilityReport::tested(slack, t, h))
                .unwrap_or_else(AdmissibilityReport::positive)
        }
    }
}

/// Grid search then golden-section refinement; used only inside the critical band.
fn numeric_minimum<F: Scalar>(params: &OscillatorParams<F>, slack: F) -> AdmissibilityReport<F> {
    let osc = Oscillator::new(*params);
    let horizon = osc.envelope_horizon(F::lit(1e-6)).max(F::one() / params.w0);
    let max_points = 1_000_000.0;
    let n = (horizon.to_f64().unwrap_or(0.0) / 1e-3).clamp(1000.0, max_points) as usize;
    let step = horizon / F::from_usize(n).unwrap();
    let mut best = (0usize, osc.hazard(F::zero()));
    for i in 1..=n {
        let h = osc.hazard(step * F::from_usize(i).unwrap());
        if h < best.1 {
            best = (i, h);
        }
    }
    if best.0 == 0 {
        return AdmissibilityReport::tested(slack, F::zero(), best.1);
    }
    let lo = step * F::from_usize(best.0 - 1).unwrap();
    let hi = step * F::from_usize(best.0 + 1).unwrap();
    let (t, h) = golden_section(|t| osc.hazard(t), lo, hi, F::lit(1e-12));
    let (t, h) = if h < best.1 { (t, h) } else { (step * F::from_usize(best.0).unwrap(), best.1) };
    AdmissibilityReport::tested(slack, t, h)
}

pub(crate) fn golden_section<F: Scalar>(f: impl Fn(F) -> F, mut a: F, mut b: F, tol: F) -> (F, F) {
    let inv_phi = (F::lit(5.0).sqrt() - F::one()) / F::lit(2.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= tol * (F::one() + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let t = (a + b) / F::lit(2.0);
    (t, f(t))
}
