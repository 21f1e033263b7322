//! Klein-Gordon wave modes in cylindrical geometry: sub- and superluminal
//! dispersion, mode fields, the causal propagator and its integral
//! representations, and a signal-front experiment.
//!
//! All numerics are generic over [`scalar::Real`] (`f32`/`f64`); the aliases
//! below fix the common double-precision case.

pub mod dispersion;
pub mod domain;
pub mod error;
pub mod modes;
pub mod propagator;
pub mod quadrature;
pub mod scalar;
pub mod signalfront;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Params = domain::Params<f64>;
pub type SpacetimePoint = domain::SpacetimePoint<f64>;
pub type IntervalClass = domain::IntervalClass<f64>;
pub type ModeSpec = dispersion::ModeSpec<f64>;
pub type DispersionPoint = dispersion::DispersionPoint<f64>;
pub type ModeValue = modes::ModeValue<f64>;
pub type QuadratureSpec = quadrature::QuadratureSpec<f64>;
pub type QuadratureResult = quadrature::QuadratureResult<f64>;
pub type PropagatorCheckReport = propagator::PropagatorCheckReport<f64>;
pub type Spectrum = signalfront::Spectrum<f64>;
pub type FrontReport = signalfront::FrontReport<f64>;
pub type FrontSummary = signalfront::FrontSummary<f64>;
