//! Bessel functions J0, J1 and modified Bessel functions K0, K1 of real
//! argument.
//!
//! Accuracy contract (f64): J0/J1 absolute error at most `1e-12 * max(1, |J|)`
//! for `|x| <= 1e6`; K0/K1 relative error at most `1e-12` for
//! `1e-300 < x < 700`, underflowing to zero further out.
//!
//! The plain functions follow libm conventions and return NaN outside their
//! domain. [`SpecialFunction::eval`] is the checked entry point.

mod bessel_j;
mod bessel_k;
pub mod constants;
pub mod reference;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Value together with an a-priori relative error estimate.
///
/// For J0/J1 the estimate is relative to `max(1, |value|)`, matching the
/// accuracy contract near the zeros.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecFunResult<T> {
    pub value: T,
    pub estimated_rel_error: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SpecialFunction {
    J0,
    J1,
    K0,
    K1,
}

impl SpecialFunction {
    pub const ALL: [SpecialFunction; 4] = [Self::J0, Self::J1, Self::K0, Self::K1];

    pub fn name(self) -> &'static str {
        match self {
            Self::J0 => "j0",
            Self::J1 => "j1",
            Self::K0 => "k0",
            Self::K1 => "k1",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Unchecked evaluation (NaN outside the domain).
    pub fn value<T: Real>(self, x: T) -> T {
        match self {
            Self::J0 => bessel_j0(x),
            Self::J1 => bessel_j1(x),
            Self::K0 => bessel_k0(x),
            Self::K1 => bessel_k1(x),
        }
    }

    pub fn eval<T: Real>(self, x: T) -> Result<SpecFunResult<T>> {
        if !x.is_finite() {
            return Err(Error::NonFinite {
                function: self.name(),
            });
        }
        let ulps = match self {
            Self::J0 | Self::J1 => match bessel_j::regime(x.abs()) {
                bessel_j::JRegime::Series => 8.0,
                bessel_j::JRegime::Miller => 16.0,
                bessel_j::JRegime::Asymptotic => 16.0,
            },
            Self::K0 | Self::K1 => {
                if x <= T::zero() {
                    return Err(Error::Domain {
                        function: self.name(),
                        requirement: "x > 0",
                        value: x.to_f64_lossy(),
                    });
                }
                if x <= T::lit(constants::K_SERIES_MAX) {
                    32.0
                } else {
                    16.0
                }
            }
        };
        Ok(SpecFunResult {
            value: self.value(x),
            estimated_rel_error: T::lit(ulps) * T::epsilon(),
        })
    }
}

/// Bessel function of the first kind of order zero.
pub fn bessel_j0<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x.is_infinite() {
        return T::zero();
    }
    bessel_j::j01(x.abs()).0
}

/// Bessel function of the first kind of order one.
pub fn bessel_j1<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x.is_infinite() {
        return T::zero();
    }
    let v = bessel_j::j01(x.abs()).1;
    if x < T::zero() {
        -v
    } else {
        v
    }
}

/// Both J0 and J1 from a single evaluation.
pub fn bessel_j01<T: Real>(x: T) -> (T, T) {
    let (j0, j1) = bessel_j::j01(x.abs());
    (j0, if x < T::zero() { -j1 } else { j1 })
}

/// Modified Bessel function of the second kind of order zero.
pub fn bessel_k0<T: Real>(x: T) -> T {
    match k_domain(x) {
        Some(v) => v,
        None => bessel_k::k01(x).0,
    }
}

/// Modified Bessel function of the second kind of order one.
pub fn bessel_k1<T: Real>(x: T) -> T {
    match k_domain(x) {
        Some(v) => v,
        None => bessel_k::k01(x).1,
    }
}

/// Both K0 and K1 from a single evaluation.
pub fn bessel_k01<T: Real>(x: T) -> (T, T) {
    match k_domain(x) {
        Some(v) => (v, v),
        None => bessel_k::k01(x),
    }
}

fn k_domain<T: Real>(x: T) -> Option<T> {
    if x.is_nan() || x < T::zero() {
        Some(T::nan())
    } else if x == T::zero() {
        Some(T::infinity())
    } else if x.is_infinite() {
        Some(T::zero())
    } else {
        None
    }
}
