use num_complex::Complex64;
use num_rational::BigRational;

use super::{Poly, Scalar};

/// A complex number stored as `mantissa · e^{log_scale}`.
///
/// Hermite values of high order overflow `f64` long before the squeezed-state
/// coefficients built from them do, so the scale is carried separately.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledComplex {
    pub mantissa: Complex64,
    pub log_scale: f64,
}

impl ScaledComplex {
    pub fn value(&self) -> Complex64 {
        self.mantissa * self.log_scale.exp()
    }

    /// `ln |value|`, `-inf` for an exact zero.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.norm().ln() + self.log_scale
    }
}

const RESCALE_ABOVE: f64 = 1e150;

/// H_0(z), …, H_{n_max}(z) by the three-term recurrence
/// H_{k+1} = 2z H_k − 2k H_{k−1}, rescaling whenever the magnitude passes
/// 1e150.
pub fn hermite_sequence(n_max: usize, z: Complex64) -> Vec<ScaledComplex> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut log_scale = 0.0;
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    out.push(ScaledComplex {
        mantissa: cur,
        log_scale,
    });
    for k in 0..n_max {
        let next = 2.0 * z * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
        let big = cur.norm().max(prev.norm());
        if big > RESCALE_ABOVE {
            cur /= big;
            prev /= big;
            log_scale += big.ln();
        }
        out.push(ScaledComplex {
            mantissa: cur,
            log_scale,
        });
    }
    out
}

/// H_n(z) as a plain complex number; overflows to infinity for very large
/// arguments, where callers should use [`hermite_sequence`] instead.
pub fn hermite_eval(n: usize, z: Complex64) -> Complex64 {
    hermite_sequence(n, z)[n].value()
}

/// Exact coefficients of H_n from the explicit sum
/// H_n(x) = n! Σ_m (−1)^m (2x)^{n−2m} / (m! (n−2m)!).
pub fn hermite_poly(n: usize) -> Poly<BigRational> {
    let mut coeffs = vec![BigRational::from_i64(0); n + 1];
    let fact = |k: usize| -> BigRational {
        (1..=k as i64).fold(BigRational::from_i64(1), |acc, i| acc * BigRational::from_i64(i))
    };
    let nf = fact(n);
    for m in 0..=n / 2 {
        let p = n - 2 * m;
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let two_p = (0..p).fold(BigRational::from_i64(1), |acc, _| acc * BigRational::from_i64(2));
        coeffs[p] = BigRational::from_i64(sign) * nf.clone() * two_p / (fact(m) * fact(p));
    }
    Poly::new(coeffs)
}
