use super::propagate::TimeSeries;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_THRESHOLD: f64 = 1e-3;

/// Earliest time where `|m|` exceeds `threshold * max |m|`, linearly
/// interpolated between the bracketing samples.
pub fn first_crossing<T: Real>(magnitudes: &[T], t0: T, dt: T, threshold: T) -> Option<T> {
    if !(threshold > T::zero()) {
        return None;
    }
    let peak = magnitudes.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if !(peak > T::zero()) {
        return None;
    }
    let level = threshold * peak;
    let i = magnitudes.iter().position(|v| v.abs() > level)?;
    let t_i = t0 + T::from_count(i) * dt;
    if i == 0 {
        return Some(t_i);
    }
    let (a, b) = (magnitudes[i - 1].abs(), magnitudes[i].abs());
    Some(t_i - dt + dt * (level - a) / (b - a))
}

/// Front arrival on `|Re psi|`.
pub fn detect_front<T: Real>(series: &TimeSeries<T>, threshold: T) -> Result<T> {
    if !(threshold > T::zero()) {
        return Err(Error::InvalidParameter {
            name: "threshold",
            reason: format!("must be > 0, got {threshold}"),
        });
    }
    first_crossing(&series.real(), series.t0, series.dt, threshold).ok_or(Error::NoArrival {
        z: series.z.to_f64_lossy(),
    })
}

/// Time of the maximum of `values`, refined by a parabola through the
/// maximum and its neighbours.
pub fn detect_peak<T: Real>(values: &[T], t0: T, dt: T) -> Option<T> {
    let (i, _) = values
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, T)>, (i, &v)| match best {
            Some((_, b)) if b >= v => best,
            _ => Some((i, v)),
        })?;
    let t_i = t0 + T::from_count(i) * dt;
    if i == 0 || i + 1 == values.len() {
        return Some(t_i);
    }
    let (a, b, c) = (values[i - 1], values[i], values[i + 1]);
    let denom = a - b - b + c;
    if denom == T::zero() {
        return Some(t_i);
    }
    Some(t_i + dt * T::lit(0.5) * (a - c) / denom)
}
