//! Physical parameters, spacetime events and Lorentz-interval classification.
//!
//! Everything works in natural units: the particle mass enters only through
//! the Compton wavenumber `mu = m c / hbar`. The light speed is carried as an
//! explicit field (1 internally) so tables can be rescaled by callers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Relative tolerance below which `c^2 t^2 - r^2` is treated as zero.
pub const LIGHTLIKE_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Params<T> {
    /// Compton wavenumber `m c / hbar`.
    pub mu: T,
    /// Vacuum light speed.
    pub c: T,
}

impl<T: Real> Params<T> {
    /// Parameters with `c = 1`.
    pub fn new(mu: T) -> Result<Self> {
        Self::with_light_speed(mu, T::one())
    }

    pub fn with_light_speed(mu: T, c: T) -> Result<Self> {
        if !mu.is_finite() || mu < T::zero() {
            return Err(Error::InvalidParameter {
                name: "mu",
                reason: format!("must be finite and >= 0, got {mu}"),
            });
        }
        if !c.is_finite() || c <= T::zero() {
            return Err(Error::InvalidParameter {
                name: "c",
                reason: format!("must be finite and > 0, got {c}"),
            });
        }
        Ok(Self { mu, c })
    }
}

/// An event in cylindrical coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpacetimePoint<T> {
    pub rho: T,
    pub z: T,
    pub t: T,
}

impl<T: Real> SpacetimePoint<T> {
    pub fn new(rho: T, z: T, t: T) -> Result<Self> {
        if !(rho.is_finite() && z.is_finite() && t.is_finite()) {
            return Err(Error::NonFinite {
                function: "SpacetimePoint::new",
            });
        }
        if rho < T::zero() {
            return Err(Error::Domain {
                function: "SpacetimePoint::new",
                requirement: "rho >= 0",
                value: rho.to_f64_lossy(),
            });
        }
        Ok(Self { rho, z, t })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IntervalKind {
    Timelike,
    Spacelike,
    Lightlike,
}

/// Interval data of one event relative to the origin.
///
/// `lambda`/`lambda_tilde` are the 4D timelike/spacelike intervals and
/// `tau`/`tau_tilde` the 2D ones built from `z` alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntervalClass<T> {
    pub kind: IntervalKind,
    pub lambda: Option<T>,
    pub lambda_tilde: Option<T>,
    pub tau: Option<T>,
    pub tau_tilde: Option<T>,
}

/// `sqrt(a^2 - b^2)` for `a >= b >= 0` without squaring first.
fn diff_sqrt<T: Real>(a: T, b: T) -> T {
    ((a - b) * (a + b)).max(T::zero()).sqrt()
}

pub fn classify<T: Real>(p: &SpacetimePoint<T>, params: &Params<T>) -> IntervalClass<T> {
    let ct = (params.c * p.t).abs();
    let z = p.z.abs();
    let rho = p.rho;

    let (tau, tau_tilde) = if ct >= z {
        (Some(diff_sqrt(ct, z)), if ct == z { Some(T::zero()) } else { None })
    } else {
        (None, Some(diff_sqrt(z, ct)))
    };

    let r2 = rho * rho + z * z;
    let ct2 = ct * ct;
    let scale = ct2.max(r2).max(T::one());
    // c^2 t^2 - r^2, grouped to avoid cancellation where possible
    let gap = match (tau, tau_tilde) {
        (_, Some(tt)) => -(rho * rho + tt * tt),
        (Some(tv), None) => (tv - rho) * (tv + rho),
        (None, None) => unreachable!(),
    };

    if gap.abs() <= T::lit(LIGHTLIKE_REL_TOL) * scale {
        return IntervalClass {
            kind: IntervalKind::Lightlike,
            lambda: None,
            lambda_tilde: None,
            tau,
            tau_tilde,
        };
    }

    if gap > T::zero() {
        let lambda = diff_sqrt(tau.unwrap_or_else(T::zero), rho);
        IntervalClass {
            kind: IntervalKind::Timelike,
            lambda: Some(lambda),
            lambda_tilde: None,
            tau,
            tau_tilde,
        }
    } else {
        let lambda_tilde = match tau_tilde {
            Some(tt) => rho.hypot(tt),
            None => diff_sqrt(rho, tau.unwrap_or_else(T::zero)),
        };
        IntervalClass {
            kind: IntervalKind::Spacelike,
            lambda: None,
            lambda_tilde: Some(lambda_tilde),
            tau,
            tau_tilde,
        }
    }
}
