//! Between-zeros integration of oscillatory integrands with series acceleration.

use super::adaptive::Adaptive;
use super::extrapolation::{wynn_epsilon, CompensatedSum, Extrapolation};
use super::semi_infinite::integrate_decaying;
use super::{QuadratureResult, QuadratureSpec};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::bessel_j0;

/// Panels needed before an accelerated estimate is trusted.
const MIN_PANELS: usize = 6;
/// Partial sums fed to the epsilon table.
const WYNN_WINDOW: usize = 40;
/// Cap on the number of half-period panels.
const MAX_OSC_PANELS: usize = 200_000;
/// Consecutive growing panels that count as a growing envelope.
const GROWTH_RUN: usize = 16;
/// Leading panels excluded from the growth check (start-up transients).
const GROWTH_GRACE: usize = 4;
/// Per-panel accuracy relative to the global tolerance.
const PANEL_SHARE: f64 = 0.01;

/// McMahon approximation to the `s`-th positive zero of `J0` (`s >= 1`).
///
/// Good to about 1e-3 for `s = 1` and far better beyond, which is plenty for
/// bracketing sign changes.
pub fn bessel_j0_zero<T: Real>(s: usize) -> T {
    let beta = (T::from_count(s) - T::lit(0.25)) * T::PI();
    let b8 = T::lit(8.0) * beta;
    let b8_3 = b8 * b8 * b8;
    beta + b8.recip() - T::lit(124.0 / 3.0) / b8_3 + T::lit(120_928.0 / 15.0) / (b8_3 * b8 * b8)
}

/// `a` followed by the zeros of `J0(freq x)` beyond `a`.
#[derive(Debug, Clone)]
pub struct BesselZeros<T> {
    a: T,
    freq: T,
    s: usize,
    started: bool,
}

impl<T: Real> BesselZeros<T> {
    pub fn new(a: T, freq: T) -> Self {
        Self {
            a,
            freq,
            s: 0,
            started: false,
        }
    }
}

impl<T: Real> Iterator for BesselZeros<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        if !self.started {
            self.started = true;
            return Some(self.a);
        }
        loop {
            self.s += 1;
            let x = bessel_j0_zero::<T>(self.s) / self.freq;
            if x > self.a {
                return Some(x);
            }
        }
    }
}

/// `a` followed by the points `n * half_period` beyond `a`.
#[derive(Debug, Clone)]
pub struct TrigZeros<T> {
    a: T,
    half_period: T,
    n: usize,
    started: bool,
}

impl<T: Real> TrigZeros<T> {
    pub fn new(a: T, half_period: T) -> Self {
        Self {
            a,
            half_period,
            n: 0,
            started: false,
        }
    }
}

impl<T: Real> Iterator for TrigZeros<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        if !self.started {
            self.started = true;
            return Some(self.a);
        }
        loop {
            self.n += 1;
            let x = T::from_count(self.n) * self.half_period;
            if x > self.a {
                return Some(x);
            }
        }
    }
}

/// `a` followed by the points where an increasing phase crosses `n * pi`.
///
/// `inverse` maps a phase value to its abscissa and must be increasing;
/// abscissae at or below `a` are skipped.
#[derive(Clone)]
pub struct PhaseZeros<T, G> {
    a: T,
    inverse: G,
    n: i64,
    started: bool,
}

impl<T: Real, G: Fn(T) -> T> PhaseZeros<T, G> {
    pub fn new(a: T, inverse: G) -> Self {
        Self::starting_at(a, 1, inverse)
    }

    /// Starts the crossing search at phase `first * pi`.
    pub fn starting_at(a: T, first: i64, inverse: G) -> Self {
        Self {
            a,
            inverse,
            n: first - 1,
            started: false,
        }
    }
}

impl<T: Real, G: Fn(T) -> T> Iterator for PhaseZeros<T, G> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        if !self.started {
            self.started = true;
            return Some(self.a);
        }
        loop {
            self.n += 1;
            let phase = T::from_i64(self.n).expect("phase index representable") * T::PI();
            let x = (self.inverse)(phase);
            if !x.is_finite() {
                return None;
            }
            if x > self.a {
                return Some(x);
            }
        }
    }
}

/// `int_a^inf f(x) dx` for an oscillatory integrand with decaying envelope.
///
/// `breakpoints` yields the lower limit first, then an increasing sequence of
/// abscissae (normally the integrand's zeros) that split the range into
/// half-period panels. Each panel is integrated adaptively and the partial
/// sums are accelerated with Wynn's epsilon algorithm. The error estimate is
/// the acceleration residual plus the summed panel errors.
pub fn integrate_oscillatory<T, F, I>(
    f: F,
    breakpoints: I,
    spec: &QuadratureSpec<T>,
) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: Fn(T) -> T,
    I: IntoIterator<Item = T>,
{
    spec.validate()?;
    let mut points = breakpoints.into_iter();
    let Some(mut left) = points.next() else {
        return Err(Error::InvalidParameter {
            name: "breakpoints",
            reason: "need at least the lower limit".into(),
        });
    };

    let mut partial = CompensatedSum::new();
    let mut panel_err = CompensatedSum::new();
    let mut sums: Vec<T> = Vec::new();
    let mut evaluations = 0usize;
    let mut last_panel: Option<T> = None;
    let mut growth = 0usize;
    let mut prev_ext: Option<Extrapolation<T>> = None;
    let mut best = Extrapolation {
        value: T::zero(),
        error: T::infinity(),
    };
    let share = T::lit(PANEL_SHARE);

    for right in points.take(MAX_OSC_PANELS) {
        if !(right > left) {
            continue;
        }
        let mut eng = Adaptive::new(&f);
        eng.push(left, right, 0);
        let budget = spec.max_panels.saturating_sub(evaluations).max(1);
        let ok = eng.refine(
            |v| share * spec.abs_tol.max(spec.rel_tol * v.abs()),
            budget,
        );
        evaluations += eng.evaluations;
        let (p, e) = eng.totals();
        if eng.non_finite {
            return Ok(QuadratureResult {
                value: p,
                error_estimate: T::infinity(),
                panels_used: evaluations,
                converged: false,
            });
        }
        partial.add(p);
        panel_err.add(e);
        sums.push(partial.value());
        left = right;

        let magnitude = p.abs();
        if sums.len() > GROWTH_GRACE {
            if let Some(prev) = last_panel {
                if magnitude > prev {
                    growth += 1;
                    if growth >= GROWTH_RUN {
                        return Err(Error::GrowingEnvelope { panels: growth });
                    }
                } else {
                    growth = 0;
                }
            }
        }
        last_panel = Some(magnitude);

        if sums.len() < 3 {
            continue;
        }
        let start = sums.len().saturating_sub(WYNN_WINDOW);
        let ext = wynn_epsilon(&sums[start..]);
        let drift = prev_ext.map_or(T::infinity(), |q| (ext.value - q.value).abs());
        let err = ext.error.max(drift) + panel_err.value();
        prev_ext = Some(ext);
        if err <= best.error {
            best = Extrapolation {
                value: ext.value,
                error: err,
            };
        }
        if sums.len() >= MIN_PANELS && err <= spec.tolerance(ext.value) {
            return Ok(QuadratureResult {
                value: ext.value,
                error_estimate: err,
                panels_used: evaluations,
                converged: true,
            });
        }
        if !ok || evaluations >= spec.max_panels {
            break;
        }
    }

    let (value, error_estimate) = if best.error.is_finite() {
        (best.value, best.error)
    } else {
        (partial.value(), T::infinity())
    };
    Ok(QuadratureResult {
        value,
        error_estimate,
        panels_used: evaluations,
        converged: false,
    })
}

/// `int_a^inf f(x) J0(kernel_freq x) dx`, split at the zeros of the kernel.
///
/// With `kernel_freq = 0` the kernel is identically one and the call is
/// forwarded to [`integrate_decaying`] on `f` unchanged.
pub fn integrate_oscillatory_bessel<T, F>(
    f: F,
    kernel_freq: T,
    a: T,
    spec: &QuadratureSpec<T>,
) -> Result<QuadratureResult<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    if !(kernel_freq >= T::zero() && kernel_freq.is_finite()) {
        return Err(Error::Domain {
            function: "integrate_oscillatory_bessel",
            requirement: "kernel_freq >= 0",
            value: kernel_freq.to_f64_lossy(),
        });
    }
    if kernel_freq == T::zero() {
        spec.validate()?;
        return Ok(integrate_decaying(f, a, spec));
    }
    integrate_oscillatory(
        |x| f(x) * bessel_j0(kernel_freq * x),
        BesselZeros::new(a, kernel_freq),
        spec,
    )
}
