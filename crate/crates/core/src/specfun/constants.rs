//! Regime crossovers for the special-function evaluators.
//!
//! Chosen from accuracy sweeps against `data/specfun_oracle.csv`; rerun
//! `scripts/gen_specfun_oracle.py` and the oracle tests when changing them.

/// `|x|` at or below which J0/J1 use the power series.
pub const J_SERIES_MAX: f64 = 2.0;

/// `|x|` at or below which J0/J1 use Miller backward recurrence; above it the
/// Hankel asymptotic expansion takes over.
pub const J_MILLER_MAX: f64 = 25.0;

/// Extra recurrence depth beyond `|x|` for the Miller start index.
pub const J_MILLER_PAD: f64 = 40.0;

/// `x` at or below which K0/K1 use the logarithmic power series; above it
/// Steed's continued fraction.
pub const K_SERIES_MAX: f64 = 2.0;

/// Iteration cap for series and continued fractions.
pub const MAX_TERMS: usize = 10_000;
