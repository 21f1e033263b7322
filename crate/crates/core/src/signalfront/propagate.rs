use num_complex::Complex;
use serde::Serialize;

use super::spectrum::{synthesize, Spectrum};
use crate::domain::Params;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest phase step tolerated between adjacent bins at the Nyquist edge.
const MAX_BIN_ADVANCE: f64 = std::f64::consts::FRAC_PI_4;

/// Which mode family carries the signal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum PropagationLaw<T> {
    /// `K0(q rho)` modes: `k^2 = (w/c)^2 + q^2 - mu^2`.
    Superluminal { q: T },
    /// Bessel beams `J0(Q rho)`: `k^2 = (w/c)^2 - Q^2 - mu^2`.
    Subluminal { q: T },
}

impl<T: Real> PropagationLaw<T> {
    /// `(w/c)^2 - k^2` for this family.
    fn cutoff_sq(&self, params: &Params<T>) -> T {
        let mu = params.mu;
        match *self {
            Self::Superluminal { q } => (mu - q) * (mu + q),
            Self::Subluminal { q } => q * q + mu * mu,
        }
    }

    /// Axial wavenumber `sign(w) sqrt((w/c)^2 - cutoff)`; below cutoff the
    /// decaying branch `-i sqrt(cutoff - (w/c)^2)` is taken.
    pub fn wavenumber(&self, omega: T, params: &Params<T>) -> Complex<T> {
        let w = omega / params.c;
        let radicand = w * w - self.cutoff_sq(params);
        if radicand >= T::zero() {
            let k = radicand.sqrt();
            Complex::new(if omega < T::zero() { -k } else { k }, T::zero())
        } else {
            Complex::new(T::zero(), -(-radicand).sqrt())
        }
    }

    /// `c^2 k / w` at a propagating frequency.
    pub fn group_velocity(&self, omega: T, params: &Params<T>) -> Option<T> {
        let k = self.wavenumber(omega, params);
        (k.im == T::zero() && omega != T::zero()).then(|| params.c * params.c * k.re / omega)
    }

    pub fn validate(&self) -> Result<()> {
        let q = match *self {
            Self::Superluminal { q } | Self::Subluminal { q } => q,
        };
        if !(q > T::zero() && q.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "q",
                reason: format!("must be finite and > 0, got {q}"),
            });
        }
        Ok(())
    }
}

/// A sorted complex time series at one distance.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries<T> {
    pub z: T,
    /// Time of the first sample.
    pub t0: T,
    pub dt: T,
    pub values: Vec<Complex<T>>,
}

impl<T: Real> TimeSeries<T> {
    pub fn time(&self, i: usize) -> T {
        self.t0 + T::from_count(i) * self.dt
    }

    pub fn real(&self) -> Vec<T> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn max_imag(&self) -> T {
        self.values.iter().map(|v| v.im.abs()).fold(T::zero(), T::max)
    }
}

fn check_distance<T: Real>(spectrum: &Spectrum<T>, z: T, law: &PropagationLaw<T>, params: &Params<T>) -> Result<()> {
    law.validate()?;
    if !(z >= T::zero() && z.is_finite()) {
        return Err(Error::Domain {
            function: "propagate_signal",
            requirement: "z >= 0",
            value: z.to_f64_lossy(),
        });
    }
    if spectrum.window.taper.is_some() {
        return Err(Error::InvalidParameter {
            name: "taper",
            reason: "tapered spectra support round trips only; propagate a damped source".into(),
        });
    }
    let grid = &spectrum.grid;
    let edge = grid.n / 2 - 1;
    let step = law.wavenumber(grid.omega(edge), params) - law.wavenumber(grid.omega(edge - 1), params);
    let advance = step.norm() * z;
    if advance > T::lit(MAX_BIN_ADVANCE) {
        return Err(Error::Aliasing {
            advance: advance.to_f64_lossy(),
        });
    }
    let slowest = law
        .group_velocity(spectrum.carrier, params)
        .unwrap_or(params.c)
        .min(params.c);
    let arrival = z / slowest;
    if grid.window <= T::lit(2.0) * arrival {
        return Err(Error::PeriodizationBound {
            window: grid.window.to_f64_lossy(),
            arrival: arrival.to_f64_lossy(),
        });
    }
    Ok(())
}

fn transported<T: Real>(spectrum: &Spectrum<T>, z: T, law: &PropagationLaw<T>, params: &Params<T>) -> Vec<Complex<T>> {
    spectrum
        .omega
        .iter()
        .zip(&spectrum.amplitudes)
        .map(|(&w, &a)| {
            let k = law.wavenumber(w, params);
            a * (-Complex::<T>::i() * k * z).exp()
        })
        .collect()
}

/// `psi(z, t) = (1/2pi) int F(w) exp(i (w t - k(w) z)) dw`.
pub fn propagate_signal<T: Real>(
    spectrum: &Spectrum<T>,
    z: T,
    law: &PropagationLaw<T>,
    params: &Params<T>,
) -> Result<TimeSeries<T>> {
    check_distance(spectrum, z, law, params)?;
    let values = synthesize(&spectrum.grid, transported(spectrum, z, law, params));
    Ok(TimeSeries {
        z,
        t0: spectrum.grid.time(0),
        dt: spectrum.grid.dt(),
        values,
    })
}

/// Modulus of the analytic signal at distance `z` (positive frequencies
/// doubled, negative ones dropped), the smooth envelope of `Re psi`.
pub fn analytic_envelope<T: Real>(
    spectrum: &Spectrum<T>,
    z: T,
    law: &PropagationLaw<T>,
    params: &Params<T>,
) -> Result<Vec<T>> {
    check_distance(spectrum, z, law, params)?;
    let two = T::lit(2.0);
    let one_sided = transported(spectrum, z, law, params)
        .into_iter()
        .zip(&spectrum.omega)
        .map(|(a, &w)| {
            if w > T::zero() {
                a * two
            } else {
                Complex::new(T::zero(), T::zero())
            }
        })
        .collect();
    Ok(synthesize(&spectrum.grid, one_sided)
        .into_iter()
        .map(|v| v.norm())
        .collect())
}
