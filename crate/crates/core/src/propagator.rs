//! Green-function integrals of the Klein-Gordon operator.
//!
//! Outside the light cone the propagator has the closed form
//! `mu K1(mu lt) / (2 pi lt)` (`lt` the spacelike interval), and the same value
//! is reachable as a Hankel-type integral over superluminal modes:
//! `(1/2pi) int_mu^inf q K0(q rho) J0(tt sqrt(q^2 - mu^2)) dq` with
//! `lt^2 = rho^2 + tt^2`. Inside the cone the analogous integral over Bessel
//! beams is only conditionally convergent and is evaluated with a regulator.
//!
//! Both reductions rest on 1D kernels proportional to `J0` of a 2D interval;
//! their constants of proportionality are measured here rather than assumed.

use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{Params, SpacetimePoint};
use crate::error::{Error, Result};
use crate::quadrature::{
    integrate_decaying, integrate_finite, integrate_oscillatory, integrate_oscillatory_bessel,
    integrate_regulated, BesselZeros, PhaseZeros, QuadratureResult, QuadratureSpec, RegulatedResult,
    Regulator,
};
use crate::scalar::Real;
use crate::specfun::{bessel_j0, bessel_k0, bessel_k1};

/// Timelike evaluations need `tau / rho` at least this large.
pub const TIMELIKE_CONE_CLEARANCE: f64 = 1.1;
/// Spacelike checks need `mu * lambda_tilde` at least this large.
pub const SPACELIKE_CONE_CLEARANCE: f64 = 0.05;
/// Above this `mu * tau_tilde` the spacelike integral is taken in
/// `u = sqrt(q^2 - mu^2)`, where the kernel oscillation is regular.
pub const SUBSTITUTION_THRESHOLD: f64 = 5.0;
/// Inner kernels refuse points whose 2D interval is this close to zero
/// relative to the larger of `c|t|`, `|z|`.
pub const KERNEL_CONE_TOL: f64 = 1e-9;
/// Denominator floor of relative errors in reports.
pub const REL_ERROR_FLOOR: f64 = 1e-300;

/// `mu K1(mu lt) / (2 pi lt)`.
pub fn spacelike_closed_form<T: Real>(lambda_tilde: T, params: &Params<T>) -> Result<T> {
    if !(lambda_tilde > T::zero()) {
        return Err(Error::Domain {
            function: "spacelike_closed_form",
            requirement: "lambda_tilde > 0 (outside the light cone)",
            value: lambda_tilde.to_f64_lossy(),
        });
    }
    let mu = params.mu;
    if !(mu > T::zero()) {
        return Err(Error::Domain {
            function: "spacelike_closed_form",
            requirement: "mu > 0",
            value: mu.to_f64_lossy(),
        });
    }
    Ok(mu * bessel_k1(mu * lambda_tilde) / (T::TAU() * lambda_tilde))
}

/// `(1/2pi) int_mu^inf q K0(q rho) J0(tt sqrt(q^2 - mu^2)) dq`.
///
/// The first panel width is `spec.tail_cutoff / rho`, the decay length of
/// the `K0` factor.
pub fn spacelike_quadrature<T: Real>(
    rho: T,
    tau_tilde: T,
    params: &Params<T>,
    spec: &QuadratureSpec<T>,
) -> Result<QuadratureResult<T>> {
    spec.validate()?;
    if !(rho > T::zero() && rho.is_finite()) {
        return Err(Error::Domain {
            function: "spacelike_quadrature",
            requirement: "rho > 0 (the integral diverges on the axis)",
            value: rho.to_f64_lossy(),
        });
    }
    if !(tau_tilde >= T::zero() && tau_tilde.is_finite()) {
        return Err(Error::Domain {
            function: "spacelike_quadrature",
            requirement: "tau_tilde >= 0",
            value: tau_tilde.to_f64_lossy(),
        });
    }
    let mu = params.mu;
    let inv_2pi = T::TAU().recip();
    let scaled = QuadratureSpec {
        tail_cutoff: spec.tail_cutoff / rho,
        ..spec.clone()
    };
    if tau_tilde * mu > T::lit(SUBSTITUTION_THRESHOLD) {
        integrate_oscillatory_bessel(
            |u| inv_2pi * u * bessel_k0(rho * u.hypot(mu)),
            tau_tilde,
            T::zero(),
            &scaled,
        )
    } else {
        Ok(integrate_decaying(
            |q| {
                let u = ((q - mu) * (q + mu)).max(T::zero()).sqrt();
                inv_2pi * q * bessel_k0(q * rho) * bessel_j0(tau_tilde * u)
            },
            mu,
            &scaled,
        ))
    }
}

/// One comparison of the mode integral against the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PropagatorCheckReport<T> {
    /// The event `(rho, z = tau_tilde, t = 0)`.
    pub point: SpacetimePoint<T>,
    pub lambda_tilde: T,
    pub lhs: T,
    pub rhs: T,
    pub rel_error: T,
    pub quadrature: QuadratureResult<T>,
}

pub fn spacelike_check<T: Real>(
    rho: T,
    tau_tilde: T,
    params: &Params<T>,
    spec: &QuadratureSpec<T>,
) -> Result<PropagatorCheckReport<T>> {
    let lambda_tilde = rho.hypot(tau_tilde);
    if lambda_tilde * params.mu < T::lit(SPACELIKE_CONE_CLEARANCE) {
        return Err(Error::NearLightCone {
            detail: format!(
                "mu * lambda_tilde = {} is below {SPACELIKE_CONE_CLEARANCE}",
                lambda_tilde * params.mu
            ),
        });
    }
    let quadrature = spacelike_quadrature(rho, tau_tilde, params, spec)?;
    let rhs = spacelike_closed_form(lambda_tilde, params)?;
    let lhs = quadrature.value;
    Ok(PropagatorCheckReport {
        point: SpacetimePoint::new(rho, tau_tilde, T::zero())?,
        lambda_tilde,
        lhs,
        rhs,
        rel_error: (lhs - rhs).abs() / rhs.abs().max(T::lit(REL_ERROR_FLOOR)),
        quadrature,
    })
}

/// The 5 x 5 grid `rho in {0.5,1,2,4,8}/mu`, `tau_tilde in {0,0.5,1,2,4}/mu`.
pub fn default_spacelike_grid<T: Real>(params: &Params<T>) -> Vec<(T, T)> {
    let rhos = [0.5, 1.0, 2.0, 4.0, 8.0];
    let taus = [0.0, 0.5, 1.0, 2.0, 4.0];
    let scale = params.mu.recip();
    rhos.iter()
        .flat_map(|&r| taus.iter().map(move |&t| (T::lit(r) * scale, T::lit(t) * scale)))
        .collect()
}

/// Checks every `(rho, tau_tilde)` pair concurrently; order is preserved.
pub fn spacelike_grid_check<T: Real>(
    grid: &[(T, T)],
    params: &Params<T>,
    spec: &QuadratureSpec<T>,
) -> Result<Vec<PropagatorCheckReport<T>>> {
    grid.par_iter()
        .map(|&(rho, tt)| spacelike_check(rho, tt, params, spec))
        .collect()
}

/// `int_0^inf sin(P sqrt(x^2+B^2) + s R x) / sqrt(x^2+B^2) dx` for `s = +-1`.
///
/// The phase is monotone except for `s = -1, P > R`, where it has a single
/// minimum at `x* = R B / sqrt(P^2 - R^2)`; the range up to `x*` is done as a
/// finite integral and the rest between phase zeros.
fn phase_integral<T: Real>(p: T, b: T, r: T, plus: bool, spec: &QuadratureSpec<T>) -> Result<QuadratureResult<T>> {
    let d = (p - r) * (p + r);
    let root = move |x: T| x.hypot(b);
    let sign = if plus { T::one() } else { -T::one() };
    let f = move |x: T| (p * root(x) + sign * r * x).sin() / root(x);
    let first_after = |phase: T| (phase / T::PI()).floor().to_i64().unwrap_or(0) + 1;

    if plus {
        // increasing from P B
        let inverse = move |phi: T| {
            let disc = ((phi * phi) - d * b * b).max(T::zero());
            if d == T::zero() {
                ((phi - p * b) * (phi + p * b)) / (T::lit(2.0) * phi * r)
            } else {
                (p * disc.sqrt() - phi * r) / d
            }
        };
        return integrate_oscillatory(f, PhaseZeros::starting_at(T::zero(), first_after(p * b), inverse), spec);
    }

    if d > T::zero() {
        let sd = d.sqrt();
        let turn = r * b / sd;
        let head = if turn > T::zero() {
            integrate_finite(f, T::zero(), turn, spec)
        } else {
            QuadratureResult {
                value: T::zero(),
                error_estimate: T::zero(),
                panels_used: 0,
                converged: true,
            }
        };
        let inverse = move |phi: T| {
            let disc = ((phi * phi) - d * b * b).max(T::zero());
            (phi * r + p * disc.sqrt()) / d
        };
        let tail = integrate_oscillatory(f, PhaseZeros::starting_at(turn, first_after(b * sd), inverse), spec)?;
        Ok(QuadratureResult {
            value: head.value + tail.value,
            error_estimate: head.error_estimate + tail.error_estimate,
            panels_used: head.panels_used + tail.panels_used,
            converged: head.converged && tail.converged,
        })
    } else {
        // R > P: phase decreasing everywhere; its zeros are those of the
        // increasing psi = R x - P root
        let dd = -d;
        let inverse = move |psi: T| (psi * r + p * (psi * psi + dd * b * b).sqrt()) / dd;
        integrate_oscillatory(f, PhaseZeros::starting_at(T::zero(), first_after(-p * b), inverse), spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    /// `int dk sin(omega(k)|t|)/omega(k) exp(i k z)`, `omega = c sqrt(k^2+M^2)`.
    Timelike,
    /// `int dw sin(k(w)|z|)/k(w) exp(-i w t)`, `k = sqrt((w/c)^2+kappa^2)`.
    Spacelike,
}

/// An inner kernel value together with its quadrature diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelValue<T> {
    pub value: T,
    pub error_estimate: T,
    /// False when the event lies in the other 2D region, where the kernel
    /// vanishes and the value is only diagnostic.
    pub in_domain: bool,
    pub converged: bool,
    /// The 2D interval `sqrt(|c^2 t^2 - z^2|)`.
    pub interval: T,
}

/// Real part of an inner kernel; the odd imaginary part cancels exactly.
///
/// `mass` is `M` for the timelike kernel and `kappa` for the spacelike one.
pub fn inner_kernel<T: Real>(
    kind: KernelKind,
    mass: T,
    z: T,
    t: T,
    params: &Params<T>,
    spec: &QuadratureSpec<T>,
) -> Result<KernelValue<T>> {
    spec.validate()?;
    if !(z.is_finite() && t.is_finite() && mass.is_finite()) {
        return Err(Error::NonFinite {
            function: "inner_kernel",
        });
    }
    let c = params.c;
    let (ct, az) = ((c * t).abs(), z.abs());
    // phase = P sqrt(x^2 + B^2) +- R x, amplitude 1 / (S sqrt(x^2 + B^2))
    let (p, b, r, s, in_domain) = match kind {
        KernelKind::Timelike => {
            if !(mass > T::zero()) {
                return Err(Error::Domain {
                    function: "inner_kernel",
                    requirement: "M > 0",
                    value: mass.to_f64_lossy(),
                });
            }
            (ct, mass, az, c, ct > az)
        }
        KernelKind::Spacelike => {
            if !(mass >= T::zero()) {
                return Err(Error::Domain {
                    function: "inner_kernel",
                    requirement: "kappa >= 0",
                    value: mass.to_f64_lossy(),
                });
            }
            (az / c, c * mass, t.abs(), c.recip(), az > ct)
        }
    };
    let gap = ((ct - az) * (ct + az)).abs();
    let scale = ct.max(az);
    if gap.sqrt() <= T::lit(KERNEL_CONE_TOL) * scale {
        return Err(Error::NearLightCone {
            detail: format!("c|t| = {ct} and |z| = {az} coincide"),
        });
    }
    let plus = phase_integral(p, b, r, true, spec)?;
    let minus = phase_integral(p, b, r, false, spec)?;
    Ok(KernelValue {
        value: (plus.value + minus.value) / s,
        error_estimate: (plus.error_estimate + minus.error_estimate) / s,
        in_domain,
        converged: plus.converged && minus.converged,
        interval: gap.sqrt(),
    })
}

pub fn inner_kernel_timelike<T: Real>(
    m: T,
    z: T,
    t: T,
    params: &Params<T>,
    spec: &QuadratureSpec<T>,
) -> Result<KernelValue<T>> {
    inner_kernel(KernelKind::Timelike, m, z, t, params, spec)
}

pub fn inner_kernel_spacelike<T: Real>(
    kappa: T,
    z: T,
    t: T,
    params: &Params<T>,
    spec: &QuadratureSpec<T>,
) -> Result<KernelValue<T>> {
    inner_kernel(KernelKind::Spacelike, kappa, z, t, params, spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelSample<T> {
    pub z: T,
    pub t: T,
    pub kernel: KernelValue<T>,
    pub j0: T,
    pub ratio: T,
}

/// Measured constant of proportionality between a kernel and `J0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelConstant<T> {
    pub kind: KernelKind,
    pub mass: T,
    pub samples: Vec<KernelSample<T>>,
    pub mean: T,
    /// `max |ratio - mean| / |mean|`.
    pub max_rel_deviation: T,
}

/// Kernel / `J0(mass * interval)` at the given events.
pub fn measure_kernel_constant<T: Real>(
    kind: KernelKind,
    mass: T,
    events: &[(T, T)],
    params: &Params<T>,
    spec: &QuadratureSpec<T>,
) -> Result<KernelConstant<T>> {
    if events.is_empty() {
        return Err(Error::InvalidParameter {
            name: "events",
            reason: "need at least one event".into(),
        });
    }
    let samples: Vec<KernelSample<T>> = events
        .par_iter()
        .map(|&(z, t)| {
            let kernel = inner_kernel(kind, mass, z, t, params, spec)?;
            if !kernel.in_domain {
                return Err(Error::InvalidParameter {
                    name: "events",
                    reason: format!("(z, t) = ({z}, {t}) lies outside the kernel's 2D region"),
                });
            }
            let j0 = bessel_j0(mass * kernel.interval);
            Ok(KernelSample {
                z,
                t,
                kernel,
                j0,
                ratio: kernel.value / j0,
            })
        })
        .collect::<Result<_>>()?;
    let n = T::from_count(samples.len());
    let mean = samples.iter().map(|s| s.ratio).sum::<T>() / n;
    let max_rel_deviation = samples
        .iter()
        .map(|s| ((s.ratio - mean) / mean).abs())
        .fold(T::zero(), T::max);
    Ok(KernelConstant {
        kind,
        mass,
        samples,
        mean,
        max_rel_deviation,
    })
}

/// Events sharing one 2D interval: `(z_i, t_i)` with `c^2 t^2 - z^2 = interval^2`
/// (timelike) or `z^2 - c^2 t^2 = interval^2` (spacelike), the free coordinate
/// running over `offsets`.
pub fn equal_interval_events<T: Real>(kind: KernelKind, interval: T, offsets: &[T], params: &Params<T>) -> Vec<(T, T)> {
    let c = params.c;
    offsets
        .iter()
        .map(|&o| match kind {
            KernelKind::Timelike => (o, interval.hypot(o) / c),
            KernelKind::Spacelike => (interval.hypot(c * o), o),
        })
        .collect()
}

/// `(1/2pi) int_0^inf Q J0(Q rho) J0(tau sqrt(Q^2 + mu^2)) dQ`, defined as the
/// regulated limit.
///
/// Refuses `tau / rho < 1.1`: the light-cone singularity is distributional and
/// not representable pointwise.
pub fn timelike_propagator<T: Real>(
    rho: T,
    tau: T,
    params: &Params<T>,
    regulator: Regulator,
    spec: &QuadratureSpec<T>,
) -> Result<RegulatedResult<T>> {
    if !(rho >= T::zero() && rho.is_finite()) {
        return Err(Error::Domain {
            function: "timelike_propagator",
            requirement: "rho >= 0",
            value: rho.to_f64_lossy(),
        });
    }
    if !(tau > T::zero() && tau.is_finite()) {
        return Err(Error::Domain {
            function: "timelike_propagator",
            requirement: "tau > 0",
            value: tau.to_f64_lossy(),
        });
    }
    if tau < T::lit(TIMELIKE_CONE_CLEARANCE) * rho {
        return Err(Error::NearLightCone {
            detail: format!(
                "tau / rho = {} is below {TIMELIKE_CONE_CLEARANCE}; the integral is singular on the light cone",
                tau / rho
            ),
        });
    }
    let mu = params.mu;
    let inv_2pi = T::TAU().recip();
    let zeros = std::iter::once(T::zero()).chain(
        BesselZeros::new(mu, tau)
            .skip(1)
            .map(move |x| ((x - mu) * (x + mu)).sqrt()),
    );
    integrate_regulated(
        |q, _eps| inv_2pi * q * bessel_j0(q * rho) * bessel_j0(tau * q.hypot(mu)),
        zeros,
        regulator,
        spec,
    )
}

/// Least-squares slope of `ln(spacelike_closed_form(lt))` against `mu` over
/// `n` equally spaced masses in `[mu_min, mu_max]`.
pub fn classical_limit_slope<T: Real>(lambda_tilde: T, mu_min: T, mu_max: T, n: usize) -> Result<T> {
    if n < 2 || !(mu_max > mu_min && mu_min > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "mu range",
            reason: "need 0 < mu_min < mu_max and at least two samples".into(),
        });
    }
    let step = (mu_max - mu_min) / T::from_count(n - 1);
    let pts: Vec<(T, T)> = (0..n)
        .map(|i| {
            let mu = mu_min + step * T::from_count(i);
            let params = Params::new(mu)?;
            Ok((mu, spacelike_closed_form(lambda_tilde, &params)?.ln()))
        })
        .collect::<Result<_>>()?;
    Ok(least_squares_slope(&pts))
}

pub(crate) fn least_squares_slope<T: Real>(pts: &[(T, T)]) -> T {
    let n = T::from_count(pts.len());
    let mx = pts.iter().map(|p| p.0).sum::<T>() / n;
    let my = pts.iter().map(|p| p.1).sum::<T>() / n;
    let sxy = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<T>();
    let sxx = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum::<T>();
    sxy / sxx
}
