use thiserror::Error;

/// Errors raised by the solvers and the model layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input violates a precondition (bad length, non-causal AR polynomial, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The spectral density evaluated on the grid is not strictly positive.
    #[error("spectral density is not positive at omega_{index} = {omega:.6}: f = {value:.6e}")]
    NotPositive { index: usize, omega: f64, value: f64 },

    /// The Levinson recursion met a reflection coefficient on or outside the unit circle.
    #[error("covariance is not positive definite: |reflection coefficient| = {kappa:.6} at order {order}")]
    NotPositiveDefinite { order: usize, kappa: f64 },

    /// A dense symmetric factorization failed.
    #[error("dense Cholesky factorization failed for n = {n}")]
    Factorization { n: usize },

    /// sigma^2 |psi|^2 does not reproduce the spectral density.
    #[error("factorization residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    FactorizationQuality { residual: f64, tolerance: f64 },

    /// Two routes that must agree do not.
    #[error("numerical consistency check `{what}` failed: {value:.3e} > {tolerance:.3e}")]
    Consistency { what: String, value: f64, tolerance: f64 },

    /// A truncated infinite sum left too much mass outside the window.
    #[error("truncation tail {tail:.3e} exceeds tolerance {tolerance:.3e}")]
    Truncation { tail: f64, tolerance: f64 },
}

impl Error {
    /// True for errors caused by bad inputs, as opposed to numerical checks.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::NotPositive { .. }
                | Error::NotPositiveDefinite { .. }
                | Error::Factorization { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
