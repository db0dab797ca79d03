//! Numeric traits the library is generic over.
//!
//! [`Scalar`] is the minimal field-like bound used to assemble Hamiltonians
//! and is implemented for `f32`, `f64` and the exact rationals
//! `Ratio<i64>` / `Ratio<i128>`. [`Real`] adds the floating-point machinery
//! needed by the eigensolver and everything downstream of it.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::Neg;

use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num};

/// Coefficient type for qubit systems and Hamiltonian matrices.
pub trait Scalar:
    Num + Neg<Output = Self> + Copy + PartialOrd + Debug + Send + Sync + 'static
{
    /// `false` for NaN and infinities; exact types are always finite.
    fn is_finite_value(&self) -> bool;

    /// Nearest `f64`, used for diagnostics and error payloads.
    fn to_f64_lossy(&self) -> f64;

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }

    fn magnitude(&self) -> Self {
        if *self < Self::zero() {
            -*self
        } else {
            *self
        }
    }
}

/// Floating-point scalar: `f32` or `f64`.
pub trait Real: Scalar + Float + FromPrimitive + Sum + Display + LowerExp {}

macro_rules! impl_float_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            fn is_finite_value(&self) -> bool {
                <$t>::is_finite(*self)
            }

            fn to_f64_lossy(&self) -> f64 {
                *self as f64
            }
        }
        impl Real for $t {}
    )*};
}

impl_float_scalar!(f32, f64);

macro_rules! impl_ratio_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            fn is_finite_value(&self) -> bool {
                true
            }

            fn to_f64_lossy(&self) -> f64 {
                *self.numer() as f64 / *self.denom() as f64
            }
        }
    )*};
}

impl_ratio_scalar!(i64, i128);

/// Converts an `f64` literal (a tolerance or a default) into `R`.
#[inline]
pub fn lit<R: Real>(x: f64) -> R {
    R::from_f64(x).expect("f64 literal representable in target float type")
}
