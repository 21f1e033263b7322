use rayon::prelude::*;
use serde::Serialize;

use super::front::{detect_peak, first_crossing};
use super::propagate::{analytic_envelope, propagate_signal, PropagationLaw};
use super::spectrum::{source_spectrum, FrequencyGrid, SourceWindow};
use crate::domain::Params;
use crate::error::{Error, Result};
use crate::propagator::least_squares_slope;
use crate::scalar::Real;

/// Thresholds of the front-detection sweep reported alongside the main run.
pub const DEFAULT_SWEEP: [f64; 4] = [1e-1, 1e-2, 1e-3, 1e-4];

/// Allowed excess of the fitted front velocity over `c`.
pub const FRONT_VELOCITY_SLACK: f64 = 5e-3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrontExperiment<T> {
    pub law: PropagationLaw<T>,
    pub params: Params<T>,
    pub omega0: T,
    pub gamma: T,
    pub zs: Vec<T>,
    pub grid: FrequencyGrid<T>,
    pub threshold: T,
    pub sweep: Vec<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrontReport<T> {
    pub z: T,
    pub front_arrival: T,
    pub peak_arrival: T,
    /// `z / c`.
    pub light_arrival: T,
    pub threshold: T,
    /// Largest `|Re psi|` before `z/c - dt`, relative to the maximum.
    pub pre_front_level: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepEntry<T> {
    pub threshold: T,
    pub front_velocity: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrontSummary<T> {
    pub reports: Vec<FrontReport<T>>,
    pub front_velocity: T,
    pub peak_velocity: T,
    /// `c^2 k(w0) / w0` from the dispersion law.
    pub predicted_group_velocity: Option<T>,
    pub dt: T,
    /// Every front at or after `z/c - dt`.
    pub causal: bool,
    /// `front_velocity <= c (1 + 5e-3)`.
    pub front_within_bound: bool,
    pub peak_superluminal: bool,
    pub threshold_sweep: Vec<SweepEntry<T>>,
}

struct PerZ<T> {
    report: FrontReport<T>,
    sweep_fronts: Vec<T>,
}

/// Propagates one source to every distance in `zs` (concurrently) and fits
/// front and peak velocities.
pub fn front_velocity_experiment<T: Real>(exp: &FrontExperiment<T>) -> Result<FrontSummary<T>> {
    if exp.zs.len() < 4 {
        return Err(Error::InvalidParameter {
            name: "zs",
            reason: format!("need at least 4 distances, got {}", exp.zs.len()),
        });
    }
    if exp.zs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter {
            name: "zs",
            reason: "distances must be strictly increasing".into(),
        });
    }
    if !(exp.threshold > T::zero() && exp.threshold < T::one()) {
        return Err(Error::InvalidParameter {
            name: "threshold",
            reason: format!("must lie in (0, 1), got {}", exp.threshold),
        });
    }
    exp.law.validate()?;
    let spectrum = source_spectrum(
        SourceWindow {
            omega0: exp.omega0,
            gamma: exp.gamma,
            taper: None,
        },
        exp.grid,
    )?;
    let params = exp.params;
    let c = params.c;
    let dt = spectrum.grid.dt();

    let per_z: Vec<PerZ<T>> = exp
        .zs
        .par_iter()
        .map(|&z| {
            let series = propagate_signal(&spectrum, z, &exp.law, &params)?;
            let mags: Vec<T> = series.values.iter().map(|v| v.re.abs()).collect();
            let no_arrival = || Error::NoArrival { z: z.to_f64_lossy() };
            let front = first_crossing(&mags, series.t0, dt, exp.threshold).ok_or_else(no_arrival)?;
            let sweep_fronts = exp
                .sweep
                .iter()
                .map(|&thr| first_crossing(&mags, series.t0, dt, thr).ok_or_else(no_arrival))
                .collect::<Result<Vec<T>>>()?;
            let envelope = analytic_envelope(&spectrum, z, &exp.law, &params)?;
            let peak = detect_peak(&envelope, series.t0, dt).ok_or_else(no_arrival)?;
            let light = z / c;
            let max = mags.iter().copied().fold(T::zero(), T::max);
            let pre = mags
                .iter()
                .enumerate()
                .take_while(|(i, _)| series.time(*i) < light - dt)
                .map(|(_, v)| *v)
                .fold(T::zero(), T::max);
            Ok(PerZ {
                report: FrontReport {
                    z,
                    front_arrival: front,
                    peak_arrival: peak,
                    light_arrival: light,
                    threshold: exp.threshold,
                    pre_front_level: pre / max,
                },
                sweep_fronts,
            })
        })
        .collect::<Result<_>>()?;

    let fit = |arrival: &dyn Fn(&PerZ<T>) -> T| {
        let pts: Vec<(T, T)> = per_z.iter().map(|p| (arrival(p), p.report.z)).collect();
        least_squares_slope(&pts)
    };
    let front_velocity = fit(&|p| p.report.front_arrival);
    let peak_velocity = fit(&|p| p.report.peak_arrival);
    let threshold_sweep = exp
        .sweep
        .iter()
        .enumerate()
        .map(|(j, &threshold)| SweepEntry {
            threshold,
            front_velocity: fit(&|p| p.sweep_fronts[j]),
        })
        .collect();
    let reports: Vec<FrontReport<T>> = per_z.into_iter().map(|p| p.report).collect();
    let causal = reports.iter().all(|r| r.front_arrival >= r.light_arrival - dt);

    Ok(FrontSummary {
        front_velocity,
        peak_velocity,
        predicted_group_velocity: exp.law.group_velocity(exp.omega0, &params),
        dt,
        causal,
        front_within_bound: front_velocity <= c * (T::one() + T::lit(FRONT_VELOCITY_SLACK)),
        peak_superluminal: peak_velocity > c,
        threshold_sweep,
        reports,
    })
}
