use log::debug;
use serde::Serialize;

use super::{eval_spectral_density, levinson_durbin, CovarianceSequence};
use crate::error::{Error, Result};
use crate::grid::{next_pow2, SpectralGrid};

/// Coefficients `b` with `a * b = (1, 0, 0, ...)` over `out_len` terms.
pub fn invert_power_series(coeffs: &[f64], out_len: usize) -> Result<Vec<f64>> {
    if coeffs.first() != Some(&1.0) {
        return Err(Error::Domain("power series must start with a_0 = 1".into()));
    }
    let mut b = vec![0.0; out_len];
    if out_len == 0 {
        return Ok(b);
    }
    b[0] = 1.0;
    for n in 1..out_len {
        let upto = n.min(coeffs.len() - 1);
        let s: f64 = (1..=upto).map(|k| coeffs[k] * b[n - k]).sum();
        b[n] = -s;
    }
    Ok(b)
}

/// Default truncation for the "infinite" MA/AR sequences: `max(64, 4 L_c)`.
pub fn default_truncation(cov: &CovarianceSequence) -> usize {
    (4 * cov.truncation_length()).max(64)
}

const PSI_TAIL_TOL: f64 = 1e-12;
const MAX_TRUNCATION_GROWTH: usize = 16;

/// `f = sigma^2 |psi|^2 = sigma^2 |phi|^{-2}` with `phi(w) = 1 - sum_j phi_j e^{ijw}`
/// and `psi = 1 / phi`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WoldFactorization {
    pub sigma2: f64,
    /// `psi_0 = 1, psi_1, ..., psi_{L_w}`.
    pub psi: Vec<f64>,
    /// `phi_1, ..., phi_order`; zero beyond.
    pub phi: Vec<f64>,
    pub truncation_length: usize,
    /// `max_k |sigma^2 |psi(w_k)|^2 - f(w_k)| / f(w_k)` when known.
    pub residual: Option<f64>,
}

impl WoldFactorization {
    /// Factorization of an AR model given directly by its coefficients.
    pub fn from_ar(sigma2: f64, phi: Vec<f64>, truncation_length: usize) -> Result<Self> {
        if !(sigma2 > 0.0) {
            return Err(Error::Domain(format!("sigma2 must be positive, got {sigma2}")));
        }
        let truncation_length = truncation_length.max(phi.len());
        let mut tilde = Vec::with_capacity(phi.len() + 1);
        tilde.push(1.0);
        tilde.extend(phi.iter().map(|p| -p));
        let psi = invert_power_series(&tilde, truncation_length + 1)?;
        Ok(WoldFactorization {
            sigma2,
            psi,
            phi,
            truncation_length,
            residual: None,
        })
    }

    pub fn white_noise(variance: f64) -> Result<Self> {
        Self::from_ar(variance, Vec::new(), 0)
    }

    /// Number of stored AR coefficients.
    pub fn order(&self) -> usize {
        self.phi.len()
    }

    /// `phi_j` for `j >= 1`, zero past the stored order.
    pub fn phi(&self, j: usize) -> f64 {
        if j == 0 {
            return -1.0;
        }
        self.phi.get(j - 1).copied().unwrap_or(0.0)
    }

    /// `psi_j`, zero past the truncation.
    pub fn psi(&self, j: usize) -> f64 {
        self.psi.get(j).copied().unwrap_or(0.0)
    }

    /// `(1, -phi_1, -phi_2, ...)`, the coefficients of `phi(w)`.
    pub fn phi_tilde(&self) -> Vec<f64> {
        std::iter::once(1.0)
            .chain(self.phi.iter().map(|p| -p))
            .collect()
    }

    /// `sum_{j > L_w}|psi_j|` estimated from the next `L_w` terms of the series.
    pub fn psi_tail(&self) -> f64 {
        psi_tail(&self.phi_tilde(), self.psi.len())
    }

    /// `sigma^2 |psi(w_k)|^2` on a grid.
    pub fn density_on(&self, grid: &SpectralGrid) -> Result<Vec<f64>> {
        Ok(grid
            .eval_causal(&self.psi)?
            .into_iter()
            .map(|z| self.sigma2 * z.norm_sqr())
            .collect())
    }
}

fn psi_tail(tilde: &[f64], len: usize) -> f64 {
    let ext = invert_power_series(tilde, 2 * len).expect("phi_tilde starts with 1");
    ext[len..].iter().map(|x| x.abs()).sum()
}

/// Options for [`wold_from_covariance_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct WoldOptions {
    pub order: usize,
    /// `L_w`; defaults to `max(64, 4 L_c)` and grows until the psi tail is negligible.
    pub truncation: Option<usize>,
    /// Defaults to the next power of two `>= 8 L_w`.
    pub n_grid: Option<usize>,
    pub tolerance: f64,
}

impl WoldOptions {
    pub fn new(order: usize) -> Self {
        WoldOptions {
            order,
            truncation: None,
            n_grid: None,
            tolerance: 1e-8,
        }
    }
}

pub fn wold_from_covariance(
    cov: &CovarianceSequence,
    order: usize,
    n_grid: Option<usize>,
) -> Result<WoldFactorization> {
    wold_from_covariance_with(
        cov,
        &WoldOptions {
            n_grid,
            ..WoldOptions::new(order)
        },
    )
}

/// High-order Levinson fit plus power-series inversion, with the
/// factorization residual checked on the grid.
pub fn wold_from_covariance_with(
    cov: &CovarianceSequence,
    opts: &WoldOptions,
) -> Result<WoldFactorization> {
    let (sigma2, phi) = if cov.is_white_noise() {
        (cov.variance(), Vec::new())
    } else {
        let fit = levinson_durbin(cov, opts.order)?;
        (fit.sigma2, fit.coeffs)
    };

    let base = opts.truncation.unwrap_or_else(|| default_truncation(cov));
    let mut lw = base.max(phi.len());
    let mut tilde = vec![1.0];
    tilde.extend(phi.iter().map(|p| -p));
    if opts.truncation.is_none() && !phi.is_empty() {
        while psi_tail(&tilde, lw + 1) > PSI_TAIL_TOL && lw < MAX_TRUNCATION_GROWTH * base {
            lw *= 2;
        }
    }
    let mut wold = WoldFactorization::from_ar(sigma2, phi, lw)?;
    debug!("wold: order {} L_w {} psi tail {:.2e}", wold.order(), lw, wold.psi_tail());

    let n = opts.n_grid.unwrap_or_else(|| next_pow2(8 * (lw + 1)));
    let f = eval_spectral_density(cov, n)?;
    let fit = wold.density_on(&f.grid)?;
    let residual = fit
        .iter()
        .zip(&f.values)
        .map(|(a, b)| (a - b).abs() / b)
        .fold(0.0, f64::max);
    wold.residual = Some(residual);
    if residual > opts.tolerance {
        return Err(Error::FactorizationQuality {
            residual,
            tolerance: opts.tolerance,
        });
    }
    Ok(wold)
}
