//! Scalar abstraction for the numeric core.
//!
//! Everything downstream of the bit-packed tableau (transfer matrices, the
//! decomposition solver, estimators, the dense oracle) is generic over a
//! floating-point scalar so the same code runs in `f32` or `f64`. The
//! acceptance tolerances in the test suites assume `f64`.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar usable throughout the numeric core.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Copy
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal or configuration value.
    fn of(v: f64) -> Self;

    /// Conversion back to `f64` for reporting and serialization.
    fn to64(self) -> f64;
}

impl Scalar for f32 {
    #[inline]
    fn of(v: f64) -> Self {
        v as f32
    }

    #[inline]
    fn to64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    #[inline]
    fn of(v: f64) -> Self {
        v
    }

    #[inline]
    fn to64(self) -> f64 {
        self
    }
}
