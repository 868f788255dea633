//! Composite Gauss–Legendre quadrature on a finite interval.
//!
//! Radial integrals run over [0, R_cut]; the panel count is doubled until the
//! result stops moving, and the last change is reported as the error estimate.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

use crate::{Error, Result};

/// Nodes per panel.
pub const PANEL_ORDER: usize = 20;
const START_PANELS: usize = 4;
const MAX_PANELS: usize = 1 << 12;

/// Flattened nodes and weights of `panels` equal Gauss–Legendre panels on [a, b].
#[derive(Clone, Debug)]
pub struct CompositeRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub panels: usize,
}

impl CompositeRule {
    pub fn new(a: f64, b: f64, panels: usize, order: usize) -> Self {
        let order = NonZeroUsize::new(order).expect("order must be positive");
        let base = GaussLegendre::new(order);
        let h = (b - a) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * order.get());
        let mut weights = Vec::with_capacity(panels * order.get());
        for p in 0..panels {
            let lo = a + p as f64 * h;
            for &(x, w) in base.as_node_weight_pairs() {
                nodes.push(lo + 0.5 * h * (x + 1.0));
                weights.push(0.5 * h * w);
            }
        }
        CompositeRule { nodes, weights, panels }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// A converged integral (or vector of integrals) with its error estimate.
#[derive(Clone, Debug)]
pub struct Converged<T> {
    pub value: T,
    pub error_estimate: f64,
    pub panels: usize,
}

/// Doubles the panel count until every component of `eval(rule)` changes by
/// less than `tol`.
pub fn converge(a: f64, b: f64, tol: f64, eval: impl Fn(&CompositeRule) -> Vec<f64>) -> Result<Converged<Vec<f64>>> {
    let mut panels = START_PANELS;
    let mut prev = eval(&CompositeRule::new(a, b, panels, PANEL_ORDER));
    loop {
        panels *= 2;
        let cur = eval(&CompositeRule::new(a, b, panels, PANEL_ORDER));
        let change = prev.iter().zip(&cur).map(|(p, c)| (p - c).abs()).fold(0.0, f64::max);
        if change < tol {
            return Ok(Converged {
                value: cur,
                error_estimate: change,
                panels,
            });
        }
        if panels >= MAX_PANELS {
            return Err(Error::Quadrature {
                estimate: change,
                tolerance: tol,
            });
        }
        prev = cur;
    }
}

/// Scalar form of [`converge`].
pub fn integrate(a: f64, b: f64, tol: f64, f: impl Fn(f64) -> f64) -> Result<Converged<f64>> {
    let c = converge(a, b, tol, |rule| vec![rule.integrate(&f)])?;
    Ok(Converged {
        value: c.value[0],
        error_estimate: c.error_estimate,
        panels: c.panels,
    })
}

/// Radius beyond which x^p e^{−x} < 1e−16 with x = ωr², i.e. the Gaussian
/// tail of an integrand r^{2p} e^{−ωr²} is negligible.
pub fn radial_cutoff(omega: f64, p: f64) -> f64 {
    let target = 16.0 * std::f64::consts::LN_10;
    let mut x: f64 = target;
    while x - p * x.ln() < target {
        x += 1.0;
    }
    (x / omega).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exactness() {
        let rule = CompositeRule::new(0.0, 2.0, 3, 5);
        // degree 9 is exact for 5-point rules
        let got = rule.integrate(|x| x.powi(9));
        assert!((got - 2f64.powi(10) / 10.0).abs() < 1e-11);
    }

    #[test]
    fn gaussian_half_line() {
        let rc = radial_cutoff(1.0, 0.0);
        let c = integrate(0.0, rc, 1e-12, |r| (-r * r).exp()).unwrap();
        assert!((c.value - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn cutoff_covers_polynomial_growth() {
        let r0 = radial_cutoff(1.0, 0.0);
        let r1 = radial_cutoff(1.0, 20.0);
        assert!(r1 > r0);
        let x = r1 * r1;
        assert!(20.0 * x.ln() - x < -16.0 * std::f64::consts::LN_10);
        assert!((radial_cutoff(4.0, 3.0) - radial_cutoff(1.0, 3.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn nonconvergence_is_reported() {
        let err = integrate(0.0, 1.0, 1e-10, |x| (1.0 / (x + 1e-300)).sin() / x.sqrt()).unwrap_err();
        assert!(matches!(err, Error::Quadrature { .. }));
    }
}
