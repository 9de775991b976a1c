//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Floating point type the solvers and integrators are generic over.
///
/// Implemented for `f32` and `f64`. Tolerances that the algorithms use by
/// default are taken from [`Scalar::default_tolerance`], so a single-precision
/// instantiation does not demand double-precision accuracy.
pub trait Scalar:
    RealField + Copy + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Feasibility / complementarity tolerance used when none is given.
    fn default_tolerance() -> Self;

    /// Converts an `f64` literal into this type.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn default_tolerance() -> Self {
        1e-10
    }
}

impl Scalar for f32 {
    fn default_tolerance() -> Self {
        1e-5
    }
}

/// Single-valued sign with `sgn(0) = 0`, used by the explicit schemes.
#[inline]
pub fn sign0<T: Scalar>(v: T) -> T {
    if v > T::zero() {
        T::one()
    } else if v < T::zero() {
        -T::one()
    } else {
        T::zero()
    }
}

#[inline]
pub fn clamp<T: Scalar>(v: T, lo: T, hi: T) -> T {
    if v < lo {
        lo
    } else if v > hi {
        hi
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_convention_at_zero() {
        assert_eq!(sign0(0.0_f64), 0.0);
        assert_eq!(sign0(-0.0_f64), 0.0);
        assert_eq!(sign0(1e-300_f64), 1.0);
        assert_eq!(sign0(-3.0_f32), -1.0);
    }

    #[test]
    fn clamp_saturates() {
        assert_eq!(clamp(5.0, -1.0, 1.0), 1.0);
        assert_eq!(clamp(-5.0, -1.0, 1.0), -1.0);
        assert_eq!(clamp(0.25, -1.0, 1.0), 0.25);
    }
}
