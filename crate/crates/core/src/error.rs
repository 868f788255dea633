use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the domain of the operation.
    #[error("{name} = {value} violates {bound}")]
    Domain {
        name: &'static str,
        value: String,
        bound: &'static str,
    },

    /// A factorization operator produced a genuinely rational function.
    #[error("result is not a polynomial (nonzero remainder of degree {remainder_degree})")]
    NotPolynomial { remainder_degree: usize },

    #[error("Fock truncation would exceed the cap of {cap} levels (tail mass {tail:e})")]
    TruncationCap { cap: usize, tail: f64 },

    #[error("quadrature did not converge: estimated error {estimate:e} > {tolerance:e}")]
    Quadrature { estimate: f64, tolerance: f64 },

    #[error("Mandel Q undefined: mean photon number {mean_n:e} is zero")]
    UndefinedQ { mean_n: f64 },

    #[error("spin squeezing undefined: |<L_z>| = {lz:e} below threshold {threshold:e}")]
    DegenerateLz { lz: f64, threshold: f64 },

    #[error("{what} has imaginary residue {residue:e} above tolerance")]
    NonReal { what: &'static str, residue: f64 },

    #[error("series normalization constant is not phase-space independent (relative spread {spread:e})")]
    Calibration { spread: f64 },
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: impl std::fmt::Display, bound: &'static str) -> Self {
        Error::Domain {
            name,
            value: value.to_string(),
            bound,
        }
    }
}
