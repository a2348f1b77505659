//! Common interface over the parametric hazard families.

use crate::competitors::{PgwParams, WeibullParams};
use crate::hazard::{is_admissible, Oscillator};
use crate::scalar::Scalar;

/// A hazard/cumulative-hazard pair.
pub trait HazardModel<F: Scalar> {
    fn hazard(&self, t: F) -> F;
    fn cumulative_hazard(&self, t: F) -> F;

    /// Whether the parameters define a valid distribution (positive hazard).
    fn is_feasible(&self) -> bool {
        true
    }
}

impl<F: Scalar> HazardModel<F> for Oscillator<F> {
    fn hazard(&self, t: F) -> F {
        Oscillator::hazard(self, t)
    }

    fn cumulative_hazard(&self, t: F) -> F {
        Oscillator::cumulative_hazard(self, t)
    }

    fn is_feasible(&self) -> bool {
        is_admissible(self.params()).admissible
    }
}

impl<F: Scalar> HazardModel<F> for WeibullParams<F> {
    fn hazard(&self, t: F) -> F {
        self.hazard_unchecked(t)
    }

    fn cumulative_hazard(&self, t: F) -> F {
        WeibullParams::cumulative_hazard(self, t)
    }
}

impl<F: Scalar> HazardModel<F> for PgwParams<F> {
    fn hazard(&self, t: F) -> F {
        self.hazard_unchecked(t)
    }

    fn cumulative_hazard(&self, t: F) -> F {
        PgwParams::cumulative_hazard(self, t)
    }
}
