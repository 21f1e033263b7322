//! Sharp-onset signals carried by a single mode family.
//!
//! The source `s(t) = theta(t) sin(w0 t) exp(-gamma t)` is built on a uniform
//! frequency grid, each component is advanced by its axial wavenumber, and
//! the resulting time series are searched for the first disturbance (front)
//! and the envelope maximum (peak). Fitting arrival time against distance
//! gives the front and peak velocities.
//!
//! Conventions: the synthesis is `s(t) = (1/2pi) int F(w) exp(i w t) dw`, so
//! an outgoing component at distance `z` picks up `exp(-i k(w) z)` with
//! `k(-w) = -k(w)`, which keeps real sources real. Frequency vectors are in
//! FFT order; time series are returned sorted on `[-T/2, T/2)`.

mod experiment;
mod front;
mod propagate;
mod spectrum;

pub use experiment::{
    front_velocity_experiment, FrontExperiment, FRONT_VELOCITY_SLACK, FrontReport, FrontSummary, SweepEntry,
    DEFAULT_SWEEP,
};
pub use front::{detect_front, detect_peak, first_crossing, DEFAULT_THRESHOLD};
pub use propagate::{analytic_envelope, propagate_signal, PropagationLaw, TimeSeries};
pub use spectrum::{
    analytic_transform, source_signal, source_spectrum, FrequencyGrid, SourceWindow, Spectrum,
};
