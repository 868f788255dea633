//! Hermite, associated Laguerre and X₁-Laguerre polynomials.
//!
//! Polynomials are coefficient vectors over a [`Scalar`]: [`BigRational`] for
//! exact identity checks, `f64` for speed. The factorization operators
//! [`apply_ak`] and [`apply_bk`] act on those coefficient vectors and report
//! when a division leaves a remainder.

mod hermite;
mod laguerre;
mod poly;
mod scalar;
mod x1;

pub use hermite::{hermite_eval, hermite_poly, hermite_sequence, ScaledComplex};
pub use laguerre::{laguerre_assoc_eval, laguerre_poly, ln_factorial};
pub use poly::{Poly, RationalFn};
pub use scalar::Scalar;
pub use x1::{apply_ak, apply_ak_rational, apply_bk, apply_bk_rational, x1_laguerre, x1_ode_residual};

pub use num_rational::BigRational;

/// Exact rational from a numerator/denominator pair, e.g. `rational(3, 2)`.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}
