use super::{Poly, Scalar};

/// ln n!
pub fn ln_factorial(n: usize) -> f64 {
    statrs::function::factorial::ln_factorial(n as u64)
}

/// Coefficients of the associated Laguerre polynomial L^k_n from the
/// recurrence (m+1) L_{m+1} = (2m+1+k−x) L_m − (m+k) L_{m−1}.
pub fn laguerre_poly<T: Scalar>(n: usize, k: &T) -> Poly<T> {
    let one = T::one();
    let mut prev = Poly::constant(one.clone());
    if n == 0 {
        return prev;
    }
    let mut cur = Poly::linear(one.clone() + k.clone(), -one.clone());
    for m in 1..n {
        let mt = T::from_i64(m as i64);
        let a = Poly::linear(T::from_i64(2 * m as i64 + 1) + k.clone(), -one.clone());
        let next = (&(&a * &cur) - &prev.scale(&(mt.clone() + k.clone()))).scale(&(one.clone() / (mt + one.clone())));
        prev = cur;
        cur = next;
    }
    cur
}

/// L^k_n(x) by upward recurrence in n.
///
/// For the negative integer superscript k = −n the closed form
/// L^{−n}_n(x) = (−x)^n / n! is used directly.
pub fn laguerre_assoc_eval(n: usize, k: f64, x: f64) -> f64 {
    if k == -(n as f64) {
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        if x == 0.0 {
            return if n == 0 { 1.0 } else { 0.0 };
        }
        return sign * (n as f64 * x.abs().ln() - ln_factorial(n)).exp() * x.signum().powi(n as i32);
    }
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + k - x;
    for m in 1..n {
        let mf = m as f64;
        let next = ((2.0 * mf + 1.0 + k - x) * cur - (mf + k) * prev) / (mf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
