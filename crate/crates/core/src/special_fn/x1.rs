use super::{laguerre_poly, Poly, RationalFn, Scalar};
use crate::{Error, Result};

fn check_k<T: Scalar>(k: &T) -> Result<()> {
    if *k > T::zero() {
        Ok(())
    } else {
        Err(Error::domain("k", k, "k > 0"))
    }
}

/// X₁-Laguerre polynomial L̂^k_ν = −(x+k+1) L^k_{ν−1} + L^k_{ν−2},
/// with L^k_{−1} ≡ 0.
pub fn x1_laguerre<T: Scalar>(nu: usize, k: &T) -> Result<Poly<T>> {
    if nu < 1 {
        return Err(Error::domain("nu", nu, "nu >= 1"));
    }
    check_k(k)?;
    let shift = Poly::linear(k.clone() + T::one(), T::one());
    let first = &shift * &laguerre_poly(nu - 1, k);
    let second = if nu >= 2 {
        laguerre_poly(nu - 2, k)
    } else {
        Poly::zero()
    };
    Ok(&second - &first)
}

/// The X₁-Laguerre ODE with denominators cleared:
///
/// x(x+k) y'' − (x−k)(x+k+1) y' + [(x−k) + (ν−1)(x+k)] y
///
/// evaluated on y = L̂^k_ν. Zero when the polynomial solves the equation.
pub fn x1_ode_residual<T: Scalar>(nu: usize, k: &T) -> Result<Poly<T>> {
    let y = x1_laguerre(nu, k)?;
    let one = T::one();
    let x = Poly::linear(T::zero(), one.clone());
    let x_plus_k = Poly::linear(k.clone(), one.clone());
    let x_minus_k = Poly::linear(-k.clone(), one.clone());
    let x_plus_k1 = Poly::linear(k.clone() + one.clone(), one.clone());
    let nu_m1 = T::from_i64(nu as i64 - 1);

    let d1 = y.derivative();
    let d2 = d1.derivative();
    let a = &(&x * &x_plus_k) * &d2;
    let b = &(&x_minus_k * &x_plus_k1) * &d1;
    let c = &(&x_minus_k + &x_plus_k.scale(&nu_m1)) * &y;
    Ok(&(&a - &b) + &c)
}

/// A_k y = −((x+k+1)²/(x+k)) d/dx (y/(x+k+1)) = (y − (x+k+1) y')/(x+k).
///
/// Returns [`Error::NotPolynomial`] when x+k does not divide the numerator.
pub fn apply_ak<T: Scalar>(y: &Poly<T>, k: &T) -> Result<Poly<T>> {
    check_k(k)?;
    let one = T::one();
    let x_plus_k1 = Poly::linear(k.clone() + one.clone(), one.clone());
    let num = y - &(&x_plus_k1 * &y.derivative());
    RationalFn::new(num, Poly::linear(k.clone(), one))?.into_poly()
}

/// The rational form of A_k y, without attempting the division.
pub fn apply_ak_rational<T: Scalar>(y: &Poly<T>, k: &T) -> Result<RationalFn<T>> {
    check_k(k)?;
    let one = T::one();
    let x_plus_k1 = Poly::linear(k.clone() + one.clone(), one.clone());
    RationalFn::new(y - &(&x_plus_k1 * &y.derivative()), Poly::linear(k.clone(), one))
}

/// B_k y = (x(x+k)/(x+k+1)) (y' − y) + k y, over the common denominator x+k+1.
pub fn apply_bk_rational<T: Scalar>(y: &Poly<T>, k: &T) -> Result<RationalFn<T>> {
    check_k(k)?;
    let one = T::one();
    let x_x_plus_k = Poly::new(vec![T::zero(), k.clone(), one.clone()]);
    let x_plus_k1 = Poly::linear(k.clone() + one.clone(), one);
    let num = &(&x_x_plus_k * &(&y.derivative() - y)) + &(&x_plus_k1 * &y.scale(k));
    RationalFn::new(num, x_plus_k1)
}

/// B_k y as a polynomial; [`Error::NotPolynomial`] when x+k+1 does not divide.
pub fn apply_bk<T: Scalar>(y: &Poly<T>, k: &T) -> Result<Poly<T>> {
    apply_bk_rational(y, k)?.into_poly()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::{rational, BigRational};

    fn ks() -> Vec<BigRational> {
        vec![rational(1, 2), rational(3, 2), rational(5, 2)]
    }

    fn lin(c0: BigRational, c1: BigRational) -> Poly<BigRational> {
        Poly::linear(c0, c1)
    }

    #[test]
    fn first_three_members() {
        for k in ks() {
            let one = rational(1, 1);
            // −(x + k + 1)
            let l1 = lin(-(k.clone() + one.clone()), rational(-1, 1));
            assert_eq!(x1_laguerre(1, &k).unwrap(), l1);
            // x² − k(k+2)
            let l2 = Poly::new(vec![
                -(k.clone() * (k.clone() + rational(2, 1))),
                rational(0, 1),
                one.clone(),
            ]);
            assert_eq!(x1_laguerre(2, &k).unwrap(), l2);
            // −½x³ + ((k+3)/2)x² + (k(k+3)/2)x − (k/2)(3+4k+k²)
            let half = rational(1, 2);
            let l3 = Poly::new(vec![
                -(k.clone() * half.clone() * (rational(3, 1) + rational(4, 1) * k.clone() + k.clone() * k.clone())),
                k.clone() * (k.clone() + rational(3, 1)) * half.clone(),
                (k.clone() + rational(3, 1)) * half.clone(),
                -half,
            ]);
            assert_eq!(x1_laguerre(3, &k).unwrap(), l3);
        }
    }

    #[test]
    fn degree_is_nu() {
        for nu in 1..=12 {
            assert_eq!(x1_laguerre(nu, &rational(3, 2)).unwrap().degree(), Some(nu));
        }
    }

    #[test]
    fn domain_errors() {
        assert!(x1_laguerre(0, &rational(1, 2)).is_err());
        assert!(x1_laguerre(2, &rational(0, 1)).is_err());
        assert!(x1_laguerre(2, &-1.0).is_err());
    }

    #[test]
    fn ode_residual_vanishes_exactly() {
        for k in ks() {
            for nu in 1..=12 {
                assert!(x1_ode_residual(nu, &k).unwrap().is_zero(), "nu={nu} k={k}");
            }
        }
        assert!(x1_ode_residual(1, &rational(1, 1)).unwrap().is_zero());
        assert!(x1_ode_residual(2, &rational(1, 2)).unwrap().is_zero());
    }

    #[test]
    fn ode_residual_small_in_floats() {
        let r = x1_ode_residual(5, &1.5).unwrap();
        assert!(r.coeffs().iter().all(|c| c.abs() < 1e-10), "{r}");
        for nu in 1..=12 {
            for &k in &[0.5, 1.5, 2.5] {
                assert!(x1_ode_residual(nu, &k).unwrap().max_abs_coeff() < 1e-10);
            }
        }
    }

    #[test]
    fn ak_lowers_family() {
        // A_k L̂^k_{n+1} = L̂^{k+1}_n; for n = 0 the target is the zero polynomial.
        for k in ks() {
            let kp1 = k.clone() + rational(1, 1);
            assert!(apply_ak(&x1_laguerre(1, &k).unwrap(), &k).unwrap().is_zero());
            for n in 1..=5 {
                let got = apply_ak(&x1_laguerre(n + 1, &k).unwrap(), &k).unwrap();
                assert_eq!(got, x1_laguerre(n, &kp1).unwrap(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn bk_raises_family() {
        // B_k L̂^{k+1}_n = n L̂^k_{n+1}
        for k in ks() {
            let kp1 = k.clone() + rational(1, 1);
            for n in 1..=6 {
                let got = apply_bk(&x1_laguerre(n, &kp1).unwrap(), &k).unwrap();
                let want = x1_laguerre(n + 1, &k).unwrap().scale(&rational(n as i64, 1));
                assert_eq!(got, want, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn zero_maps_to_zero() {
        let z = Poly::<BigRational>::zero();
        assert!(apply_ak(&z, &rational(1, 2)).unwrap().is_zero());
        assert!(apply_bk(&z, &rational(1, 2)).unwrap().is_zero());
    }

    #[test]
    fn bk_of_constant_is_rational() {
        // B_1(1) = −x(x+1)/(x+2) + 1 = (−x² + 2)/(x + 2)
        let one = Poly::constant(rational(1, 1));
        let k = rational(1, 1);
        let rf = apply_bk_rational(&one, &k).unwrap();
        assert_eq!(
            rf.numerator(),
            &Poly::new(vec![rational(2, 1), rational(0, 1), rational(-1, 1)])
        );
        assert_eq!(rf.denominator(), &lin(rational(2, 1), rational(1, 1)));
        assert!(matches!(apply_bk(&one, &k), Err(Error::NotPolynomial { .. })));
    }

    #[test]
    fn factorization_closure_has_integer_eigenvalues() {
        for &k in &[0.5, 1.5, 2.5] {
            for nu in 1..=8usize {
                // B_k A_k L̂^k_ν = (ν−1) L̂^k_ν
                let y = x1_laguerre(nu, &k).unwrap();
                let ba = apply_bk(&apply_ak(&y, &k).unwrap(), &k);
                let lambda = match ba {
                    Ok(p) if !p.is_zero() => p.leading().unwrap() / y.leading().unwrap(),
                    Ok(_) => 0.0,
                    Err(e) => panic!("{e}"),
                };
                assert!((lambda - (nu as f64 - 1.0)).abs() < 1e-9);
                // A_k B_k L̂^{k+1}_ν = ν L̂^{k+1}_ν
                let y = x1_laguerre(nu, &(k + 1.0)).unwrap();
                let ab = apply_ak(&apply_bk(&y, &k).unwrap(), &k).unwrap();
                let lambda = ab.leading().unwrap() / y.leading().unwrap();
                assert!((lambda - lambda.round()).abs() < 1e-9 && lambda.round() == nu as f64);
            }
        }
    }
}
