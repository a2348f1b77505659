use serde::Serialize;

use super::{regime_of, OscillatorParams, Regime};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Quantities derived from the parameters for the non-critical regimes.
///
/// `c1 = h0 - hb` and `c2 = (r0 + w0 eta c1) / w1`. In the under-damped regime
/// `h - hb = e^{-w0 eta t} (c1 cos w1 t + c2 sin w1 t) = A e^{-w0 eta t} sin(w1 t + phi)`
/// with `A = hypot(c1, c2)` and `phi = atan2(c1, c2)`. In the over-damped regime
/// `c2` is the coefficient usually written `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegimeCoefficients<F> {
    pub regime: Regime,
    pub w1: F,
    pub c1: F,
    pub c2: F,
    pub amplitude: F,
    pub phase: F,
    mu: Option<F>,
}

impl<F: Scalar> RegimeCoefficients<F> {
    /// `w1 / (w0 eta)`.
    pub fn mu(&self) -> Result<F> {
        self.mu.ok_or(Error::UndefinedMu)
    }

    /// Over-damped coefficient `(h0 - hb) / mu + r0 / w1`.
    pub fn a(&self) -> Result<F> {
        self.mu.map(|_| self.c2).ok_or(Error::UndefinedMu)
    }
}

pub fn coefficients<F: Scalar>(params: &OscillatorParams<F>) -> Result<RegimeCoefficients<F>> {
    let regime = regime_of(params);
    if regime == Regime::CriticallyDamped {
        return Err(Error::CriticallyDampedCoefficients);
    }
    let OscillatorParams { eta, w0, hb, h0, r0 } = *params;
    let w1 = w0 * ((eta - F::one()) * (eta + F::one())).abs().sqrt();
    let decay = w0 * eta;
    let c1 = h0 - hb;
    let c2 = (r0 + decay * c1) / w1;
    let mu = (eta > F::zero()).then(|| w1 / decay);
    Ok(RegimeCoefficients {
        regime,
        w1,
        c1,
        c2,
        amplitude: c1.hypot(c2),
        phase: c1.atan2(c2),
        mu,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Form<F> {
    /// `A e^{-decay t} sin(w1 t + phase)`, `decay >= 0`.
    Under { decay: F, w1: F, amp: F, phase: F },
    /// `k1 e^{l1 t} + k2 e^{l2 t}` with `l2 < l1 < 0`; `level = hb + k1`.
    Over { l1: F, l2: F, k1: F, k2: F, level: F },
    /// `(c1 + b t) e^{-w0 t}`.
    Critical { w0: F, c1: F, b: F },
}

/// Parameters with the regime-specific constants precomputed, for repeated evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator<F> {
    params: OscillatorParams<F>,
    form: Form<F>,
}

impl<F: Scalar> Oscillator<F> {
    pub fn new(params: OscillatorParams<F>) -> Self {
        let OscillatorParams { eta, w0, hb, h0, r0 } = params;
        let c1 = h0 - hb;
        let form = match regime_of(&params) {
            Regime::UnderDamped => {
                let co = coefficients(&params).expect("non-critical");
                Form::Under {
                    decay: w0 * eta,
                    w1: co.w1,
                    amp: co.amplitude,
                    phase: co.phase,
                }
            }
            Regime::OverDamped => {
                let s = ((eta - F::one()) * (eta + F::one())).sqrt();
                let sum = eta + s;
                // eta - s = 1 / (eta + s); grouping by hb, h0 and r0 keeps large eta
                // or hb from cancelling in k1, k2 and hb + k1
                let two_s = F::lit(2.0) * s;
                let drift = r0 / w0;
                Form::Over {
                    l1: -w0 / sum,
                    l2: -w0 * sum,
                    k1: (c1 * sum + drift) / two_s,
                    k2: -(c1 / sum + drift) / two_s,
                    level: (h0 * sum - hb / sum + drift) / two_s,
                }
            }
            Regime::CriticallyDamped => Form::Critical {
                w0,
                c1,
                b: r0 + w0 * c1,
            },
        };
        Self { params, form }
    }

    pub fn params(&self) -> &OscillatorParams<F> {
        &self.params
    }

    pub fn hazard(&self, t: F) -> F {
        match self.form {
            Form::Over { l1, l2, k2, level, .. } => {
                level * (l1 * t).exp() - self.params.hb * (l1 * t).exp_m1() + k2 * (l2 * t).exp()
            }
            _ => self.params.hb + self.transient(t),
        }
    }

    /// `h(t) - hb`.
    pub fn transient(&self, t: F) -> F {
        match self.form {
            Form::Under { decay, w1, amp, phase } => amp * (-decay * t).exp() * (w1 * t + phase).sin(),
            Form::Over { l1, l2, k1, k2, .. } => k1 * (l1 * t).exp() + k2 * (l2 * t).exp(),
            Form::Critical { w0, c1, b } => (c1 + b * t) * (-w0 * t).exp(),
        }
    }

    pub fn hazard_derivative(&self, t: F) -> F {
        match self.form {
            Form::Under { decay, w1, amp, phase } => {
                let arg = w1 * t + phase;
                amp * (-decay * t).exp() * (w1 * arg.cos() - decay * arg.sin())
            }
            Form::Over { l1, l2, k1, k2, .. } => k1 * l1 * (l1 * t).exp() + k2 * l2 * (l2 * t).exp(),
            Form::Critical { w0, c1, b } => (b - w0 * (c1 + b * t)) * (-w0 * t).exp(),
        }
    }

    pub fn hazard_second_derivative(&self, t: F) -> F {
        match self.form {
            Form::Under { decay, w1, amp, phase } => {
                let arg = w1 * t + phase;
                let two = F::lit(2.0);
                amp * (-decay * t).exp()
                    * ((decay * decay - w1 * w1) * arg.sin() - two * decay * w1 * arg.cos())
            }
            Form::Over { l1, l2, k1, k2, .. } => {
                k1 * l1 * l1 * (l1 * t).exp() + k2 * l2 * l2 * (l2 * t).exp()
            }
            Form::Critical { w0, c1, b } => {
                let two = F::lit(2.0);
                w0 * (w0 * (c1 + b * t) - two * b) * (-w0 * t).exp()
            }
        }
    }

    pub fn cumulative_hazard(&self, t: F) -> F {
        let hb = self.params.hb;
        let one = F::one();
        match self.form {
            Form::Under { decay, w1, amp, phase } => {
                let e = (-decay * t).exp();
                let arg = w1 * t + phase;
                if decay == F::zero() {
                    // eta = 0: w1 = w0
                    hb * t + amp / w1 * (phase.cos() - arg.cos())
                } else {
                    let sin_part = phase.sin() - e * arg.sin();
                    let cos_part = phase.cos() - e * arg.cos();
                    hb * t + amp * (decay * sin_part + w1 * cos_part) / (decay * decay + w1 * w1)
                }
            }
            Form::Over { l1, l2, k2, level, .. } => {
                // hb t + k1 E1 = level E1 - hb t g(l1 t), E = expm1(l t) / l
                let x = l1 * t;
                level * x.exp_m1() / l1 - hb * t * expm1_excess(x) + k2 * (l2 * t).exp_m1() / l2
            }
            Form::Critical { w0, c1, b } => {
                let e = (-w0 * t).exp();
                hb * t - c1 * (-w0 * t).exp_m1() / w0 + b / (w0 * w0) * (one - (one + w0 * t) * e)
            }
        }
    }

    /// Time after which `|h(t) - hb| < rel * hb` is guaranteed by the regime's envelope.
    /// For `eta = 0` (no decay) this is one full period.
    pub fn envelope_horizon(&self, rel: F) -> F {
        let floor = rel * self.params.hb;
        match self.form {
            Form::Under { decay, w1, amp, .. } => {
                if decay == F::zero() {
                    F::TAU() / w1
                } else {
                    ((amp / floor).ln() / decay).max(F::zero())
                }
            }
            Form::Over { l1, k1, k2, .. } => {
                (((k1.abs() + k2.abs()) / floor).ln() / -l1).max(F::zero())
            }
            Form::Critical { w0, c1, b } => {
                let bound = |t: F| (c1.abs() + b.abs() * t) * (-w0 * t).exp();
                let mut t = F::one() / w0;
                let two = F::lit(2.0);
                while bound(t) >= floor && t.is_finite() {
                    t = t * two;
                }
                t
            }
        }
    }

    /// `exp(-H(t))` without the admissibility check.
    pub fn survival_unchecked(&self, t: F) -> F {
        (-self.cumulative_hazard(t)).exp()
    }
}

impl<F: Scalar> Oscillator<F> {
    /// `(l1, l2, k1, k2)` of the over-damped form.
    pub(crate) fn over_damped_terms(&self) -> Option<(F, F, F, F)> {
        match self.form {
            Form::Over { l1, l2, k1, k2, .. } => Some((l1, l2, k1, k2)),
            _ => None,
        }
    }
}

/// `(e^x - 1 - x) / x`, accurate for small `|x|`.
fn expm1_excess<F: Scalar>(x: F) -> F {
    if x == F::zero() {
        return F::zero();
    }
    if x.abs() >= F::lit(0.1) {
        return (x.exp_m1() - x) / x;
    }
    // sum of x^k / (k + 1)!
    let mut term = x / F::lit(2.0);
    let mut sum = term;
    for k in 2..16 {
        term = term * x / F::from_usize(k + 1).unwrap();
        sum = sum + term;
    }
    sum
}

pub fn hazard_at<F: Scalar>(params: &OscillatorParams<F>, t: F) -> F {
    Oscillator::new(*params).hazard(t)
}

pub fn hazard_derivative_at<F: Scalar>(params: &OscillatorParams<F>, t: F) -> F {
    Oscillator::new(*params).hazard_derivative(t)
}

pub fn hazard_second_derivative_at<F: Scalar>(params: &OscillatorParams<F>, t: F) -> F {
    Oscillator::new(*params).hazard_second_derivative(t)
}

pub fn cumulative_hazard_at<F: Scalar>(params: &OscillatorParams<F>, t: F) -> F {
    Oscillator::new(*params).cumulative_hazard(t)
}

/// `exp(-H(t))`; fails for inadmissible parameters.
pub fn survival_at<F: Scalar>(params: &OscillatorParams<F>, t: F) -> Result<F> {
    if !super::is_admissible(params).admissible {
        return Err(Error::InadmissibleParams);
    }
    Ok(Oscillator::new(*params).survival_unchecked(t))
}
