//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use rustfft::FftNum;

/// Floating point scalar the library is generic over (`f32` or `f64`).
///
/// Accuracy contracts quoted in the docs (1e-12 relative and tighter) only
/// hold for `f64`; `f32` instantiations run the same algorithms at single
/// precision.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + FftNum
    + Default
    + Debug
    + Display
    + LowerExp
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal or table coefficient.
    #[inline(always)]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts a count (loop index, panel number).
    #[inline(always)]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline(always)]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Euler-Mascheroni constant.
    fn euler_gamma() -> Self {
        Self::lit(0.577_215_664_901_532_860_606_512_090_082_402_43)
    }
}

impl Real for f32 {}
impl Real for f64 {}
