//! Solvers for the discrete-time Wiener-Hopf equations
//!
//! ```text
//! g_l = sum_{j>=0} h_j c(l - j),   l >= 0
//! ```
//!
//! where `c` is a symmetric positive-definite covariance sequence. Three
//! independent routes are provided:
//!
//! - [`wiener::solve_wh_classical`]: causal-part extraction after spectral
//!   factorization, `H = sigma^{-2} phi [phi^* G_+]_+`;
//! - [`wiener::solve_wh_prediction`]: deconvolution through linear prediction,
//!   `H = sigma^{-2} phi sum_l g_l (e^{ilw} - sum_{s<=l} phi_s e^{i(l-s)w})`;
//! - [`toeplitz::toeplitz_solve_truncated`]: a dense truncated solve used as the
//!   oracle.
//!
//! [`approx`] studies the finite AR(p) approximation `H_p` and its error decay.

pub mod approx;
pub mod cli;
pub mod covmodel;
pub mod error;
pub mod grid;
pub mod identities;
pub mod seq;
pub mod toeplitz;
pub mod wiener;

pub use covmodel::{
    acf_from_arma, acf_from_ma_kernel, eval_spectral_density, invert_power_series,
    levinson_durbin, wold_from_covariance, ARFit, CovarianceSequence, ModelSpec,
    WoldFactorization,
};
pub use error::{Error, Result};
pub use grid::SpectralGrid;
pub use seq::{BiSeq, CausalSeq};
