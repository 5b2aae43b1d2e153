//! Floating-point scalar abstraction.
//!
//! All formulas in this crate are written once, generic over [`Real`], and
//! instantiated at `f64` for the CLI and file formats (see the type aliases
//! at the crate root). `f32` works too and is exercised in tests.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FromPrimitive + Debug + Display + LowerExp + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FromPrimitive + Debug + Display + LowerExp + Send + Sync + 'static
{
}

/// Pulls an `f64` constant into the working scalar type.
#[inline]
pub(crate) fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("constant representable in scalar type")
}

/// Lossy view of a scalar as `f64`, used for diagnostics.
#[inline]
pub(crate) fn as_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
