use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Scalar;
use crate::{Error, Result};

/// Dense polynomial in one variable, coefficients in ascending degree.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients and `degree()` is `None` for it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c0 + c1 x`
    pub fn linear(c0: T, c1: T) -> Self {
        Self::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Coefficient of x^i (zero past the degree).
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn to_f64(&self) -> Poly<f64> {
        Poly::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max)
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    ///
    /// Panics if `divisor` is the zero polynomial.
    pub fn div_rem(&self, divisor: &Poly<T>) -> (Poly<T>, Poly<T>) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![T::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = rem[i + dd].clone() / lead.clone();
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].clone() - q.clone() * d.clone();
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;

    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;

    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;

    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;

    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

/// A quotient of two polynomials, used where a factorization operator
/// divides by a polynomial factor.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFn<T> {
    numerator: Poly<T>,
    denominator: Poly<T>,
}

impl<T: Scalar> RationalFn<T> {
    pub fn new(numerator: Poly<T>, denominator: Poly<T>) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::domain("denominator", 0, "not identically zero"));
        }
        Ok(RationalFn { numerator, denominator })
    }

    pub fn numerator(&self) -> &Poly<T> {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly<T> {
        &self.denominator
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.numerator.eval_f64(x) / self.denominator.eval_f64(x)
    }

    /// Exact division; fails when the remainder is nonzero (beyond rounding
    /// noise for float coefficients).
    pub fn into_poly(&self) -> Result<Poly<T>> {
        let (q, r) = self.numerator.div_rem(&self.denominator);
        let scale = self.numerator.max_abs_coeff();
        if r.coeffs().iter().all(|c| c.negligible(scale)) {
            return Ok(q);
        }
        Err(Error::NotPolynomial {
            remainder_degree: r.degree().unwrap_or(0),
        })
    }
}
