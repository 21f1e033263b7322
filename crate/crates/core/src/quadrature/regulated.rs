//! Conditionally convergent integrals as limits of damped integrals.

use serde::Serialize;

use super::extrapolation::{lagrange_weights_at_zero, neville_at_zero, CompensatedSum};
use super::oscillatory::integrate_oscillatory;
use super::{QuadratureResult, QuadratureSpec};
use crate::error::Result;
use crate::scalar::Real;

/// Inner integrals are solved this much tighter than the requested tolerance,
/// since extrapolation amplifies their errors.
const INNER_TIGHTENING: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regulator {
    /// Damping `exp(-eps x)`; `I(eps)` expanded in powers of `eps`.
    Exponential,
    /// Damping `exp(-(eps x)^2)`; `I(eps)` expanded in powers of `eps^2`.
    Gaussian,
}

impl Regulator {
    pub fn damping<T: Real>(self, eps: T, x: T) -> T {
        match self {
            Self::Exponential => (-eps * x).exp(),
            Self::Gaussian => {
                let s = eps * x;
                (-s * s).exp()
            }
        }
    }

    /// Extrapolation variable for a given regulator strength.
    fn node<T: Real>(self, eps: T) -> T {
        match self {
            Self::Exponential => eps,
            Self::Gaussian => eps * eps,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegulatorSample<T> {
    pub epsilon: T,
    pub value: T,
    pub error_estimate: T,
    pub panels_used: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegulatedResult<T> {
    pub result: QuadratureResult<T>,
    pub regulator: Regulator,
    pub samples: Vec<RegulatorSample<T>>,
    /// Extrapolated limits using the first 1, 2, ... samples.
    pub extrapolation_diagonal: Vec<T>,
}

/// Limit `eps -> 0` of `int_a^inf f(x, eps) D(eps, x) dx`.
///
/// `D` is the damping factor of `regulator`; `f` may depend on `eps` itself
/// or ignore it. For every entry of `spec.regulator_schedule` the damped
/// integral is computed with [`integrate_oscillatory`] on `breakpoints`, and
/// the sequence is extrapolated to zero by Neville's scheme. The error
/// estimate is the last change along the extrapolation diagonal plus the
/// inner errors propagated through the interpolation weights.
pub fn integrate_regulated<T, F, I>(
    f: F,
    breakpoints: I,
    regulator: Regulator,
    spec: &QuadratureSpec<T>,
) -> Result<RegulatedResult<T>>
where
    T: Real,
    F: Fn(T, T) -> T,
    I: Iterator<Item = T> + Clone,
{
    spec.validate()?;
    let tight = T::lit(INNER_TIGHTENING);
    let floor = T::lit(64.0) * T::epsilon();
    let inner_spec = QuadratureSpec {
        rel_tol: (spec.rel_tol * tight).max(floor),
        abs_tol: spec.abs_tol * tight,
        ..spec.clone()
    };

    let mut samples = Vec::with_capacity(spec.regulator_schedule.len());
    for &eps in &spec.regulator_schedule {
        let r = integrate_oscillatory(
            |x| f(x, eps) * regulator.damping(eps, x),
            breakpoints.clone(),
            &inner_spec,
        )?;
        samples.push(RegulatorSample {
            epsilon: eps,
            value: r.value,
            error_estimate: r.error_estimate,
            panels_used: r.panels_used,
            converged: r.converged,
        });
    }

    let nodes: Vec<T> = samples.iter().map(|s| regulator.node(s.epsilon)).collect();
    let values: Vec<T> = samples.iter().map(|s| s.value).collect();
    let diagonal = neville_at_zero(&nodes, &values);
    let n = diagonal.len();
    let value = diagonal[n - 1];
    let propagated: CompensatedSum<T> = lagrange_weights_at_zero(&nodes)
        .iter()
        .zip(&samples)
        .map(|(w, s)| w.abs() * s.error_estimate)
        .collect();
    let panels_used = samples.iter().map(|s| s.panels_used).sum();
    let inner_ok = samples.iter().all(|s| s.converged);

    let (error_estimate, converged) = if n < 2 {
        (samples[0].error_estimate, false)
    } else {
        let inc = |m: usize| (diagonal[m] - diagonal[m - 1]).abs();
        let trend = n < 3 || inc(n - 1) < inc(n - 2);
        let err = inc(n - 1) + propagated.value();
        (err, trend && inner_ok && err <= spec.tolerance(value))
    };

    Ok(RegulatedResult {
        result: QuadratureResult {
            value,
            error_estimate,
            panels_used,
            converged,
        },
        regulator,
        samples,
        extrapolation_diagonal: diagonal,
    })
}
