use std::fmt::{Debug, Display};

use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

/// Coefficient field for [`Poly`](super::Poly).
pub trait Scalar: Num + Clone + PartialOrd + Debug + Display + std::ops::Neg<Output = Self> {
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// Whether a remainder coefficient counts as zero relative to `scale`.
    /// Exact for rationals; floats allow rounding noise.
    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn negligible(&self, scale: f64) -> bool {
        self.abs() <= 1e-10 * scale.max(1.0)
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}
