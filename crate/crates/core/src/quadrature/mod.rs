//! Adaptive 1D quadrature on semi-infinite intervals.
//!
//! Three entry points cover the integrals used elsewhere in the crate:
//! [`integrate_decaying`] for exponentially decaying integrands,
//! [`integrate_oscillatory`] / [`integrate_oscillatory_bessel`] for slowly
//! decaying oscillatory ones (panels between zeros plus Wynn's epsilon
//! algorithm), and [`integrate_regulated`] for conditionally convergent
//! integrals defined as the limit of damped versions.
//!
//! All summations run in a fixed order with compensated arithmetic, so a given
//! input always produces bit-identical output.

mod adaptive;
mod extrapolation;
mod oscillatory;
mod regulated;
pub mod rule;
mod semi_infinite;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub use extrapolation::{neville_at_zero, wynn_epsilon, CompensatedSum, Extrapolation};
pub use oscillatory::{
    bessel_j0_zero, integrate_oscillatory, integrate_oscillatory_bessel, BesselZeros, PhaseZeros,
    TrigZeros,
};
pub use regulated::{integrate_regulated, RegulatedResult, Regulator, RegulatorSample};
pub use semi_infinite::{integrate_decaying, integrate_finite};

/// Tolerances and budgets shared by all integrators.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureSpec<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    /// Upper bound on panel-rule applications per integral.
    pub max_panels: usize,
    /// Width of the first panel of a semi-infinite range; later panels
    /// double until the decay probe bounds the remainder.
    pub tail_cutoff: T,
    /// Regulator strengths for [`integrate_regulated`], strictly decreasing.
    pub regulator_schedule: Vec<T>,
}

impl<T: Real> Default for QuadratureSpec<T> {
    fn default() -> Self {
        // 1e-10 is out of reach in single precision; clamp to a few hundred ulps.
        let floor = T::lit(256.0) * T::epsilon();
        Self {
            rel_tol: T::lit(1e-10).max(floor),
            abs_tol: T::lit(1e-14).max(floor * T::lit(1e-4)),
            max_panels: 1_000_000,
            tail_cutoff: T::one(),
            regulator_schedule: geometric_schedule(T::lit(0.2), 5),
        }
    }
}

/// `first, first/2, first/4, ...` with `len` entries.
pub fn geometric_schedule<T: Real>(first: T, len: usize) -> Vec<T> {
    let half = T::lit(0.5);
    std::iter::successors(Some(first), |e| Some(*e * half))
        .take(len)
        .collect()
}

impl<T: Real> QuadratureSpec<T> {
    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_abs_tol(mut self, abs_tol: T) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_schedule(mut self, schedule: Vec<T>) -> Self {
        self.regulator_schedule = schedule;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |name, reason: &str| {
            Err(Error::InvalidParameter {
                name,
                reason: reason.to_string(),
            })
        };
        if !(self.rel_tol > T::zero() && self.rel_tol.is_finite()) {
            return bad("rel_tol", "must be finite and > 0");
        }
        if !(self.abs_tol > T::zero() && self.abs_tol.is_finite()) {
            return bad("abs_tol", "must be finite and > 0");
        }
        if self.max_panels == 0 {
            return bad("max_panels", "must be >= 1");
        }
        if !(self.tail_cutoff > T::zero() && self.tail_cutoff.is_finite()) {
            return bad("tail_cutoff", "must be finite and > 0");
        }
        if self.regulator_schedule.is_empty() {
            return bad("regulator_schedule", "must not be empty");
        }
        if self.regulator_schedule.iter().any(|e| !(*e > T::zero() && e.is_finite())) {
            return bad("regulator_schedule", "entries must be finite and > 0");
        }
        if self.regulator_schedule.windows(2).any(|w| w[1] >= w[0]) {
            return bad("regulator_schedule", "must be strictly decreasing");
        }
        Ok(())
    }

    /// Error target for an integral of magnitude `value`.
    pub fn tolerance(&self, value: T) -> T {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub error_estimate: T,
    pub panels_used: usize,
    pub converged: bool,
}
