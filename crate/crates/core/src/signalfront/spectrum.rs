use num_complex::Complex;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Wrap-around residue allowed in the displayed half window, in decades.
const PERIODIZATION_DECADES: f64 = 6.0;

/// Uniform grid of `n` frequencies spaced `2 pi / window`, offset by half a
/// bin so that every frequency has its negative on the grid. Neither zero nor
/// the Nyquist frequency is sampled; both are points where the superluminal
/// wavenumber jumps sign and no real signal could be formed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrequencyGrid<T> {
    pub n: usize,
    /// Total time window `T`; also the period of the synthesized signal.
    pub window: T,
}

impl<T: Real> Default for FrequencyGrid<T> {
    /// `N = 2^20`, `T = 256`: a time step of `2^-12`, so integer distances at
    /// `c = 1` are whole-sample delays.
    fn default() -> Self {
        Self {
            n: 1 << 20,
            window: T::lit(256.0),
        }
    }
}

impl<T: Real> FrequencyGrid<T> {
    pub fn new(n: usize, window: T) -> Result<Self> {
        if n < 4 || !n.is_power_of_two() {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: format!("must be a power of two >= 4, got {n}"),
            });
        }
        if !(window > T::zero() && window.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "window",
                reason: format!("must be finite and > 0, got {window}"),
            });
        }
        Ok(Self { n, window })
    }

    pub fn dt(&self) -> T {
        self.window / T::from_count(self.n)
    }

    pub fn d_omega(&self) -> T {
        T::TAU() / self.window
    }

    /// Frequency of FFT bin `k`: `(k + 1/2) dw`, wrapped to negative values
    /// for the upper half.
    pub fn omega(&self, k: usize) -> T {
        let half = T::lit(0.5);
        let signed = if k < self.n / 2 {
            T::from_count(k) + half
        } else {
            -(T::from_count(self.n - k) - half)
        };
        signed * self.d_omega()
    }

    /// Time of the `i`-th sample of a sorted series.
    pub fn time(&self, i: usize) -> T {
        (T::from_count(i) - T::from_count(self.n / 2)) * self.dt()
    }
}

/// Time-domain definition of the source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SourceWindow<T> {
    pub omega0: T,
    pub gamma: T,
    /// Exponential taper `exp(-sigma t)` applied before and undone after the
    /// transform; lets undamped sources (`gamma = 0`) be represented.
    pub taper: Option<T>,
}

impl<T: Real> SourceWindow<T> {
    fn effective_decay(&self) -> T {
        self.gamma + self.taper.unwrap_or_else(T::zero)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    pub grid: FrequencyGrid<T>,
    /// FFT-ordered frequencies.
    pub omega: Vec<T>,
    pub amplitudes: Vec<Complex<T>>,
    pub carrier: T,
    pub window: SourceWindow<T>,
}

/// `w0 / ((gamma + i w)^2 + w0^2)`, the transform of the damped source.
pub fn analytic_transform<T: Real>(omega: T, omega0: T, gamma: T) -> Complex<T> {
    let a = Complex::new(gamma, omega);
    Complex::new(omega0, T::zero()) / (a * a + omega0 * omega0)
}

/// The analytic transform summed over all aliases `w + m N dw`.
///
/// This is exactly the discrete transform of the sampled source, so the
/// inverse FFT returns the samples without truncation ringing at the onset.
/// For `|w|` well below Nyquist it differs from [`analytic_transform`] only
/// by terms of relative size `(w / N dw)^2`.
fn folded_transform<T: Real>(omega: T, omega0: T, decay: T, big_omega: T) -> Complex<T> {
    let scale = T::PI() / big_omega;
    let cot = |x: Complex<T>| x.cos() / x.sin();
    let lo = Complex::new(omega - omega0, -decay) * scale;
    let hi = Complex::new(omega + omega0, -decay) * scale;
    (cot(lo) - cot(hi)) * (-scale * T::lit(0.5))
}

/// `theta(t) sin(w0 t) exp(-gamma t)`.
pub fn source_signal<T: Real>(t: T, omega0: T, gamma: T) -> T {
    if t < T::zero() {
        T::zero()
    } else {
        (omega0 * t).sin() * (-gamma * t).exp()
    }
}

pub fn source_spectrum<T: Real>(window: SourceWindow<T>, grid: FrequencyGrid<T>) -> Result<Spectrum<T>> {
    let grid = FrequencyGrid::new(grid.n, grid.window)?;
    let SourceWindow { omega0, gamma, taper } = window;
    if !(omega0 > T::zero() && omega0.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "omega0",
            reason: format!("must be finite and > 0, got {omega0}"),
        });
    }
    if !(gamma >= T::zero() && gamma.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            reason: format!("must be finite and >= 0, got {gamma}"),
        });
    }
    if let Some(sigma) = taper {
        if !(sigma > T::zero() && sigma.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "taper",
                reason: format!("must be finite and > 0, got {sigma}"),
            });
        }
    } else if gamma == T::zero() {
        return Err(Error::InvalidParameter {
            name: "gamma",
            reason: "an undamped source needs a taper".into(),
        });
    }
    let decay = window.effective_decay();
    let needed = T::lit(2.0 * PERIODIZATION_DECADES) * T::LN_10();
    if decay * grid.window < needed {
        return Err(Error::PeriodizationBound {
            window: grid.window.to_f64_lossy(),
            arrival: (needed / decay).to_f64_lossy() / 2.0,
        });
    }
    if omega0 >= grid.omega(grid.n / 2 - 1) {
        return Err(Error::InvalidParameter {
            name: "omega0",
            reason: "carrier above the Nyquist frequency".into(),
        });
    }

    let big_omega = T::from_count(grid.n) * grid.d_omega();
    let omega: Vec<T> = (0..grid.n).map(|k| grid.omega(k)).collect();
    let amplitudes = omega
        .iter()
        .map(|&w| folded_transform(w, omega0, decay, big_omega))
        .collect();
    Ok(Spectrum {
        grid,
        omega,
        amplitudes,
        carrier: omega0,
        window,
    })
}

/// `(dw / 2pi) sum_k A_k exp(i w_k t_n)` on the sorted time grid.
pub(crate) fn synthesize<T: Real>(grid: &FrequencyGrid<T>, mut buf: Vec<Complex<T>>) -> Vec<Complex<T>> {
    let fft = FftPlanner::new().plan_fft_inverse(grid.n);
    fft.process(&mut buf);
    let norm = grid.d_omega() / T::TAU();
    // sample n holds t = n dt; put negative times first
    buf.rotate_left(grid.n / 2);
    // half-bin offset: exp(i dw t / 2)
    let half_step = grid.d_omega() * T::lit(0.5);
    for (i, v) in buf.iter_mut().enumerate() {
        *v = *v * Complex::from_polar(norm, half_step * grid.time(i));
    }
    buf
}

impl<T: Real> Spectrum<T> {
    /// The source back in the time domain (taper undone).
    pub fn time_series(&self) -> Vec<Complex<T>> {
        let mut out = synthesize(&self.grid, self.amplitudes.clone());
        if let Some(sigma) = self.window.taper {
            for (i, v) in out.iter_mut().enumerate() {
                *v = *v * (sigma * self.grid.time(i)).exp();
            }
        }
        out
    }

    pub fn energy(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}
