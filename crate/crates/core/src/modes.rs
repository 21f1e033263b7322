//! Field values of the two mode families and a finite-difference check that
//! they solve the Klein-Gordon equation.

use num_complex::Complex;
use rayon::prelude::*;

use crate::dispersion::{omega_of, ModeKind, ModeSpec};
use crate::domain::{Params, SpacetimePoint};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::{bessel_j0, bessel_k0};

/// Mode value in polar form: a real transverse amplitude times `exp(i phase)`.
///
/// The amplitude depends on `rho` only, so it is bit-identical for any two
/// events at the same radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeValue<T> {
    pub amplitude: T,
    pub phase: T,
}

impl<T: Real> ModeValue<T> {
    pub fn modulus(&self) -> T {
        self.amplitude.abs()
    }

    pub fn field(&self) -> Complex<T> {
        let (s, c) = self.phase.sin_cos();
        Complex::new(self.amplitude * c, self.amplitude * s)
    }
}

/// Evaluates either family; `K0` modes refuse the axis.
pub fn evaluate_mode<T: Real>(p: &SpacetimePoint<T>, mode: &ModeSpec<T>) -> Result<ModeValue<T>> {
    let omega = omega_of(mode)?;
    let phase = mode.kz() * p.z - omega * p.t;
    let amplitude = match mode.kind {
        ModeKind::Subluminal { q, .. } => {
            if p.rho == T::zero() {
                T::one()
            } else {
                bessel_j0(q * p.rho)
            }
        }
        ModeKind::Superluminal { q, .. } => {
            if p.rho <= T::zero() {
                return Err(Error::Domain {
                    function: "superluminal_mode",
                    requirement: "rho > 0 (K0 diverges on the axis)",
                    value: p.rho.to_f64_lossy(),
                });
            }
            bessel_k0(q * p.rho)
        }
    };
    Ok(ModeValue { amplitude, phase })
}

/// `J0(Q rho) exp(i(kz z - omega t))`.
pub fn bessel_beam<T: Real>(p: &SpacetimePoint<T>, mode: &ModeSpec<T>) -> Result<Complex<T>> {
    if !matches!(mode.kind, ModeKind::Subluminal { .. }) {
        return Err(Error::InvalidParameter {
            name: "mode",
            reason: "bessel_beam needs a subluminal mode".into(),
        });
    }
    Ok(evaluate_mode(p, mode)?.field())
}

/// `K0(q rho) exp(i(kz z - omega t))`, defined for `rho > 0`.
pub fn superluminal_mode<T: Real>(p: &SpacetimePoint<T>, mode: &ModeSpec<T>) -> Result<Complex<T>> {
    if !matches!(mode.kind, ModeKind::Superluminal { .. }) {
        return Err(Error::InvalidParameter {
            name: "mode",
            reason: "superluminal_mode needs a superluminal mode".into(),
        });
    }
    Ok(evaluate_mode(p, mode)?.field())
}

/// `(1/c^2) d_t^2 psi - d_z^2 psi - (d_rho^2 + (1/rho) d_rho) psi + mu^2 psi`
/// with second-order central differences of step `h` in every variable.
pub fn kg_residual<T, F>(field: F, p: &SpacetimePoint<T>, h: T, params: &Params<T>) -> Result<Complex<T>>
where
    T: Real,
    F: Fn(&SpacetimePoint<T>) -> Result<Complex<T>>,
{
    if !(h > T::zero() && h.is_finite()) {
        return Err(Error::Domain {
            function: "kg_residual",
            requirement: "h > 0",
            value: h.to_f64_lossy(),
        });
    }
    if p.rho <= h {
        return Err(Error::Domain {
            function: "kg_residual",
            requirement: "rho > h (stencil must stay off the axis)",
            value: p.rho.to_f64_lossy(),
        });
    }
    let at = |rho: T, z: T, t: T| field(&SpacetimePoint { rho, z, t });
    let two = T::lit(2.0);
    let center = at(p.rho, p.z, p.t)?;
    let second = |minus: Complex<T>, plus: Complex<T>| (plus - center * two + minus) / (h * h);

    let (t_m, t_p) = (at(p.rho, p.z, p.t - h)?, at(p.rho, p.z, p.t + h)?);
    let (z_m, z_p) = (at(p.rho, p.z - h, p.t)?, at(p.rho, p.z + h, p.t)?);
    let (r_m, r_p) = (at(p.rho - h, p.z, p.t)?, at(p.rho + h, p.z, p.t)?);

    let c2 = params.c * params.c;
    let d_tt = second(t_m, t_p);
    let d_zz = second(z_m, z_p);
    let d_rr = second(r_m, r_p);
    let d_r = (r_p - r_m) / (two * h);
    let mu2 = params.mu * params.mu;
    Ok(d_tt / c2 - d_zz - (d_rr + d_r / p.rho) + center * mu2)
}

/// Mode field on a `rho x z` grid at fixed `t`, row-major in `rho`.
///
/// Points are evaluated concurrently; each value depends on its own point
/// only, so the output matches [`mode_grid_serial`] bit for bit.
pub fn mode_grid<T: Real>(rhos: &[T], zs: &[T], t: T, mode: &ModeSpec<T>) -> Result<Vec<Complex<T>>> {
    grid_points(rhos, zs, t)?
        .par_iter()
        .map(|p| evaluate_mode(p, mode).map(|v| v.field()))
        .collect()
}

pub fn mode_grid_serial<T: Real>(rhos: &[T], zs: &[T], t: T, mode: &ModeSpec<T>) -> Result<Vec<Complex<T>>> {
    grid_points(rhos, zs, t)?
        .iter()
        .map(|p| evaluate_mode(p, mode).map(|v| v.field()))
        .collect()
}

fn grid_points<T: Real>(rhos: &[T], zs: &[T], t: T) -> Result<Vec<SpacetimePoint<T>>> {
    rhos.iter()
        .flat_map(|&rho| zs.iter().map(move |&z| SpacetimePoint::new(rho, z, t)))
        .collect()
}
