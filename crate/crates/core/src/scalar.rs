//! Scalar abstraction for the learner math.
//!
//! Everything numeric in [`crate::neural`] and the observation encoding is
//! generic over [`Scalar`] so the same code runs in single or double
//! precision. Concrete aliases live at the crate root.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point element type for observations, Q-values, and parameters.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from `f64`, used at the domain/learner boundary.
    fn from_f64(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite f64 converts to any float scalar")
    }

    /// Widening (or identity) conversion back to `f64`.
    fn to_f64(self) -> f64 {
        <Self as ToPrimitive>::to_f64(&self).expect("float scalar converts to f64")
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + Sum
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_f32_f64() {
        let x: f32 = 0.1;
        assert_eq!(<f32 as Scalar>::from_f64(x.to_f64()), x);
        assert_eq!(<f64 as Scalar>::from_f64(2.5), 2.5f64);
    }
}
