use crate::model::HazardModel;
use crate::scalar::Scalar;
use crate::survdata::SurvivalDataset;

/// Right-censored log-likelihood `sum_i [delta_i ln h(t_i) - H(t_i)]`.
///
/// Infeasible parameters (e.g. an inadmissible oscillator) give `-inf`.
pub fn log_likelihood<F: Scalar, M: HazardModel<F> + ?Sized>(model: &M, data: &SurvivalDataset) -> F {
    if !model.is_feasible() {
        return F::neg_infinity();
    }
    let mut total = F::zero();
    for r in data.records() {
        let t = F::lit(r.time);
        if r.event {
            let h = model.hazard(t);
            if !(h > F::zero()) {
                return F::neg_infinity();
            }
            total = total + h.ln();
        }
        total = total - model.cumulative_hazard(t);
    }
    if total.is_nan() {
        F::neg_infinity()
    } else {
        total
    }
}

/// `k ln n - 2 loglik`, with `n` the number of observations (censored included).
pub fn bic(loglik: f64, k: usize, n: usize) -> f64 {
    k as f64 * (n as f64).ln() - 2.0 * loglik
}
