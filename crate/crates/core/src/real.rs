//! Scalar abstraction shared by every numerical routine in the crate.

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};
use rustfft::FftNum;

/// Real floating-point scalar: `f32` or `f64`.
///
/// Tolerances in this crate are written for `f64`; when a routine is
/// instantiated with `f32` they are floored at a small multiple of the
/// type's machine epsilon (see [`tolerance`]).
pub trait Real: RealField + FftNum + Copy + FromPrimitive + ToPrimitive {}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

#[inline]
pub fn from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("integer representable in scalar type")
}

#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `x` as a tolerance in `T`, never tighter than 1000 ulp at unity.
#[inline]
pub fn tolerance<T: Real>(x: f64) -> T {
    let floor = T::default_epsilon() * lit::<T>(1e3);
    lit::<T>(x).max(floor)
}
