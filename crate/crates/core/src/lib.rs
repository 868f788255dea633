//! Numerics for the three-dimensional generalized isotonic oscillator.
//!
//! The crate is organised bottom-up:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`special_fn`] | Hermite, associated Laguerre and X₁-Laguerre polynomials, the A_k/B_k factorization operators |
//! | [`radial`] | potential, eigenfunctions, superpotential, SUSY intertwiners and the ladder operators a_r, a_r† |
//! | [`states`] | squeeze/displacement parameters, c_n and c_{l,m} coefficients, normalization, three-mode states |
//! | [`stats`] | ⟨n̂⟩, ⟨n̂²⟩, Mandel Q, quadrature and angular-momentum squeezing indicators |
//! | [`wigner`] | transition elements of the displaced parity operator, series and closed Wigner functions |
//! | [`figures`] | the parameter sweeps and grids exposed by the CLI |
//! | [`validate`] | the invariant suites run by `isoq validate` |
//!
//! Every closed form has an independent route (series, quadrature or exact
//! rational arithmetic) that it is checked against, either in the unit tests
//! or in [`validate`].

// Guards are written `!(x > 0.0)` on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod figures;
pub mod quadrature;
pub mod radial;
pub mod special_fn;
pub mod states;
pub mod stats;
pub mod validate;
pub mod wigner;

pub use error::{Error, Result};
pub use num_complex::Complex64;
