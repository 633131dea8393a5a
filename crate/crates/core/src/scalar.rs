use core::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point type the solvers are generic over. Implemented for `f32` and `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn c(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// Converts an integer count into `Self`.
    #[inline]
    fn of(k: usize) -> Self {
        Self::from_usize(k).expect("count representable in scalar type")
    }

    /// Lossy conversion back to `f64` for reporting.
    #[inline]
    fn f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Returns the nearest integer to `x` when it lies within `tol` of one.
pub(crate) fn near_integer<T: Scalar>(x: T, tol: T) -> Option<i64> {
    let r = x.round();
    if (x - r).abs() <= tol {
        r.to_i64()
    } else {
        None
    }
}
