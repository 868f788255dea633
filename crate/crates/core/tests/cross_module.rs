//! Checks that tie the public modules together.

use isoq_core::figures::linspace;
use isoq_core::radial::{energy, OscillatorConfig};
use isoq_core::states::{ModeParams, ModeState, ThreeModeParams, DEFAULT_TRUNCATION_CAP};
use isoq_core::stats::mandel_q;
use isoq_core::wigner::{wigner_closed, wigner_mode_closed};
use isoq_core::Complex64;
use proptest::prelude::*;

fn complex(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Q from the truncated Fock amplitudes, with no closed form involved.
    #[test]
    fn mandel_q_matches_fock_populations(
        r in 0.0f64..0.6, phi in 0.0f64..6.28, a in -2.0f64..2.0, b in -2.0f64..2.0,
    ) {
        let p = ModeParams::from_xi(Complex64::from_polar(r, phi), complex(a, b)).unwrap();
        let s = ModeState::build(&p, 1e-14, DEFAULT_TRUNCATION_CAP).unwrap();
        let (mut n1, mut n2) = (0.0, 0.0);
        for n in 0..=s.n_max() {
            let w = s.amplitude(n).norm_sqr();
            n1 += n as f64 * w;
            n2 += (n * n) as f64 * w;
        }
        prop_assume!(n1 > 1e-3);
        let fock = (n2 - n1 * n1 - n1) / n1;
        let q = mandel_q(p.xi(), p.alpha()).unwrap();
        prop_assert!((q - fock).abs() < 1e-8 * (1.0 + q.abs()), "{q} vs {fock}");
    }

    #[test]
    fn coherent_wigner_is_a_product_of_gaussians(
        a in -1.5f64..1.5, b in -1.5f64..1.5, x in -2.0f64..2.0, y in -2.0f64..2.0,
    ) {
        let alpha0 = complex(a, b);
        let m = ModeParams::from_xi(Complex64::new(0.0, 0.0), alpha0).unwrap();
        let z = complex(x, y);
        let single = (-2.0 * (z - alpha0).norm_sqr()).exp();
        prop_assert!((wigner_mode_closed(&m, z).unwrap() - single).abs() < 1e-12);
        let p = ThreeModeParams { r: m, plus: m, minus: m };
        prop_assert!((wigner_closed(&p, [z; 3]).unwrap() - single.powi(3)).abs() < 1e-12);
    }

    #[test]
    fn spectrum_is_equally_spaced(omega in 0.1f64..5.0, l in 0u32..6, n in 0usize..20) {
        let cfg = OscillatorConfig::new(omega, l).unwrap();
        prop_assert!((energy(n + 1, &cfg) - energy(n, &cfg) - 4.0 * omega).abs() < 1e-12 * (1.0 + omega * n as f64));
    }
}

#[test]
fn linspace_hits_both_endpoints() {
    let v = linspace(0.05, 0.95, 90);
    assert_eq!(v.len(), 91);
    assert_eq!((v[0], v[90]), (0.05, 0.95));
    assert!(v.windows(2).all(|w| w[1] > w[0]));
}
