//! Scalar abstraction shared by the algebra, special functions and
//! quadrature rules.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::Neg;

use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign, ToPrimitive};

/// Ring scalars for Clifford and quaternion arithmetic. Exact types such as
/// `num_rational::Rational64` qualify as well as the float types.
pub trait Scalar: Copy + Num + Neg<Output = Self> + PartialEq + Debug + Send + Sync + 'static {}

impl<T> Scalar for T where T: Copy + Num + Neg<Output = T> + PartialEq + Debug + Send + Sync + 'static {}

/// Floating point scalars: `f32` and `f64`.
pub trait Real:
    Scalar
    + Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Display
    + Default
{
    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal fits the scalar type")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count fits the scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}
