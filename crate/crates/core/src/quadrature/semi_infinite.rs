//! Integrals over `[a, b]` and `[a, inf)` with exponentially decaying integrands.

use super::adaptive::Adaptive;
use super::{QuadratureResult, QuadratureSpec};
use crate::scalar::Real;

/// Share of the error budget granted to the truncated tail.
const TAIL_SHARE: f64 = 0.1;

/// Stop doubling after this many panels (covers any finite scale).
const MAX_TAIL_PANELS: usize = 2000;

/// Adaptive integral over a finite interval.
pub fn integrate_finite<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    spec: &QuadratureSpec<T>,
) -> QuadratureResult<T> {
    let mut eng = Adaptive::new(&f);
    eng.push(a, b, 0);
    eng.refine(|v| spec.tolerance(v), spec.max_panels);
    let (value, error_estimate) = eng.totals();
    QuadratureResult {
        value,
        error_estimate,
        panels_used: eng.evaluations,
        converged: !eng.non_finite && error_estimate <= spec.tolerance(value),
    }
}

/// `int_a^inf f(x) dx` for integrands with eventual exponential decay.
///
/// The range is covered by panels of width `tail_cutoff`, `2 tail_cutoff`,
/// `4 tail_cutoff`, ... Each new panel is refined together with the earlier
/// ones. Once the integral of `|f|` over consecutive panels shrinks by a ratio
/// `r < 1`, the remainder is bounded by the geometric tail `A r / (1 - r)`; the
/// integration stops when that bound falls below a tenth of the tolerance and
/// the bound is added to the reported error.
pub fn integrate_decaying<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    spec: &QuadratureSpec<T>,
) -> QuadratureResult<T> {
    let mut eng = Adaptive::new(&f);
    let share = T::lit(TAIL_SHARE);
    let body_share = T::one() - share;
    let mut left = a;
    let mut width = spec.tail_cutoff;
    let mut prev_abs: Option<T> = None;
    let mut tail = T::infinity();
    let mut converged = false;

    for tag in 0..MAX_TAIL_PANELS {
        let right = left + width;
        if !right.is_finite() {
            break;
        }
        eng.push(left, right, tag);
        let body_ok = eng.refine(|v| body_share * spec.tolerance(v), spec.max_panels);
        let panel_abs = eng.tag_abs(tag);
        tail = match prev_abs {
            Some(p) if panel_abs == T::zero() && p == T::zero() => T::zero(),
            Some(p) if panel_abs < p => {
                let r = panel_abs / p;
                panel_abs * r / (T::one() - r)
            }
            _ => T::infinity(),
        };
        if !body_ok || eng.non_finite {
            break;
        }
        let (value, _) = eng.totals();
        if tail <= share * spec.tolerance(value) {
            converged = true;
            break;
        }
        prev_abs = Some(panel_abs);
        left = right;
        width = width + width;
    }

    let (value, body_err) = eng.totals();
    let error_estimate = body_err + tail;
    QuadratureResult {
        value,
        error_estimate,
        panels_used: eng.evaluations,
        converged: converged && !eng.non_finite && error_estimate <= spec.tolerance(value),
    }
}
