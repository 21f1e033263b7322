use thiserror::Error;

/// Errors raised when an operation is called outside its domain.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite argument to {function}")]
    NonFinite { function: &'static str },

    #[error("{function} requires {requirement} (got {value})")]
    Domain {
        function: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("frequency is imaginary: |kz| must be at least {min_abs_kz}")]
    ImaginaryFrequency { min_abs_kz: f64 },

    #[error("kz is imaginary: radicand (omega/c)^2 + q^2 - mu^2 = {radicand} is negative")]
    ImaginaryWavenumber { radicand: f64 },

    #[error("point is too close to the light cone ({detail})")]
    NearLightCone { detail: String },

    #[error("integrand envelope grows: panel magnitudes increased over {panels} consecutive panels")]
    GrowingEnvelope { panels: usize },

    #[error("time window {window} too short: must exceed twice the largest arrival time {arrival}")]
    PeriodizationBound { window: f64, arrival: f64 },

    #[error("propagation phase advance {advance} rad between adjacent frequency bins exceeds pi/4 at the Nyquist edge; use a denser frequency grid")]
    Aliasing { advance: f64 },

    #[error("signal never exceeds the detection threshold at z = {z}")]
    NoArrival { z: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
