//! Covariance sequences, spectral densities and the Wold factorization
//! `f = sigma^2 |psi|^2 = sigma^2 |phi|^{-2}` every solver builds on.

mod levinson;
mod wold;

pub use levinson::{ar_is_causal, levinson_durbin, solve_symmetric_toeplitz, ARFit};
pub use wold::{
    default_truncation, invert_power_series, wold_from_covariance, wold_from_covariance_with,
    WoldFactorization, WoldOptions,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::SpectralGrid;

/// Autocovariances `c(0), ..., c(L_c)`; `c(-r) = c(r)` and `c(r) = 0` for `r > L_c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovarianceSequence {
    values: Vec<f64>,
}

impl CovarianceSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        let c0 = *values
            .first()
            .ok_or_else(|| Error::Domain("empty covariance sequence".into()))?;
        if !(c0 > 0.0) || !c0.is_finite() {
            return Err(Error::Domain(format!("c(0) must be positive, got {c0}")));
        }
        let bound = c0 * (1.0 + 1e-12);
        if let Some((r, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || v.abs() > bound)
        {
            return Err(Error::Domain(format!(
                "|c({r})| = {} exceeds c(0) = {c0}",
                v.abs()
            )));
        }
        Ok(CovarianceSequence { values })
    }

    /// `c(0) = variance`, all other lags zero.
    pub fn white_noise(variance: f64) -> Result<Self> {
        CovarianceSequence::new(vec![variance])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest stored lag `L_c`.
    pub fn truncation_length(&self) -> usize {
        self.values.len() - 1
    }

    pub fn variance(&self) -> f64 {
        self.values[0]
    }

    /// `c(r)` for any signed lag.
    pub fn get(&self, r: isize) -> f64 {
        self.values
            .get(r.unsigned_abs())
            .copied()
            .unwrap_or(0.0)
    }

    /// Same sequence stored out to lag `max_lag` (zero padded or cut).
    pub fn with_max_lag(&self, max_lag: usize) -> CovarianceSequence {
        let mut v = self.values.clone();
        v.resize(max_lag + 1, 0.0);
        CovarianceSequence { values: v }
    }

    pub fn is_white_noise(&self) -> bool {
        self.values[1..].iter().all(|&x| x == 0.0)
    }

    /// The `n x n` matrix `(c(s - t))` in row-major order.
    pub fn toeplitz_rows(&self, n: usize) -> Vec<f64> {
        let mut m = vec![0.0; n * n];
        for s in 0..n {
            for t in 0..n {
                m[s * n + t] = self.get(s as isize - t as isize);
            }
        }
        m
    }

    /// Checks positivity of `f` on a grid of `n_grid` points.
    pub fn validate(&self, n_grid: usize) -> Result<SpectralDensity> {
        eval_spectral_density(self, n_grid)
    }
}

/// Samples of `f(omega_k)` with their extremes.
#[derive(Debug, Clone)]
pub struct SpectralDensity {
    pub grid: SpectralGrid,
    pub values: Vec<f64>,
    pub min: f64,
    pub max: f64,
}

/// `c(r) = sigma^2 sum_j psi_j psi_{j+|r|}` for `r = 0..=max_lag`.
pub fn acf_from_ma_kernel(psi: &[f64], sigma2: f64, max_lag: usize) -> Result<CovarianceSequence> {
    if !(sigma2 > 0.0) {
        return Err(Error::Domain(format!("sigma2 must be positive, got {sigma2}")));
    }
    match psi.first() {
        Some(&p0) if p0 == 1.0 => {}
        _ => return Err(Error::Domain("MA kernel must start with psi_0 = 1".into())),
    }
    let values = (0..=max_lag)
        .map(|r| {
            let s: f64 = psi
                .iter()
                .zip(psi.iter().skip(r))
                .map(|(a, b)| a * b)
                .sum();
            sigma2 * s
        })
        .collect();
    CovarianceSequence::new(values)
}

const KERNEL_TAIL_REL: f64 = 1e-17;
const KERNEL_MAX_LEN: usize = 1 << 22;

/// Expands `psi(z) = (1 + sum ma_j z^j) / (1 - sum ar_j z^j)` until the
/// trailing window is negligible.
pub fn arma_ma_kernel(ar: &[f64], ma: &[f64]) -> Result<Vec<f64>> {
    if !ar_is_causal(ar) {
        return Err(Error::Domain(format!(
            "AR polynomial {ar:?} has a root in the closed unit disk"
        )));
    }
    let p = ar.len();
    let q = ma.len();
    let window = p.max(1);
    let mut psi = vec![1.0];
    let mut abs_total = 1.0;
    let mut j = 1;
    loop {
        let mut v = if j <= q { ma[j - 1] } else { 0.0 };
        for (i, a) in ar.iter().enumerate().take(j) {
            v += a * psi[j - 1 - i];
        }
        psi.push(v);
        abs_total += v.abs();
        if j >= p.max(q) {
            let recent: f64 = psi[psi.len() - window..].iter().map(|x| x.abs()).sum();
            if recent <= KERNEL_TAIL_REL * abs_total {
                break;
            }
        }
        j += 1;
        if j > KERNEL_MAX_LEN {
            return Err(Error::Domain("ARMA kernel did not decay".into()));
        }
    }
    Ok(psi)
}

/// Autocovariances of the causal ARMA process
/// `X_t - sum ar_j X_{t-j} = e_t + sum ma_j e_{t-j}`.
pub fn acf_from_arma(
    ar: &[f64],
    ma: &[f64],
    sigma2: f64,
    max_lag: usize,
) -> Result<CovarianceSequence> {
    if !(sigma2 > 0.0) {
        return Err(Error::Domain(format!("sigma2 must be positive, got {sigma2}")));
    }
    let psi = arma_ma_kernel(ar, ma)?;
    acf_from_ma_kernel(&psi, sigma2, max_lag)
}

/// Samples `f(omega_k) = c(0) + 2 sum_{r>=1} c(r) cos(r omega_k)`.
pub fn eval_spectral_density(cov: &CovarianceSequence, n_grid: usize) -> Result<SpectralDensity> {
    let lc = cov.truncation_length();
    if n_grid < 2 * lc + 2 {
        return Err(Error::Domain(format!(
            "grid of {n_grid} points cannot resolve {lc} lags (need >= {})",
            2 * lc + 2
        )));
    }
    let grid = SpectralGrid::new(n_grid)?;
    let mut half = cov.values().to_vec();
    half[0] *= 0.5;
    let values: Vec<f64> = grid
        .eval_causal(&half)?
        .into_iter()
        .map(|z| 2.0 * z.re)
        .collect();
    if let Some((k, &v)) = values.iter().enumerate().find(|(_, v)| !(**v > 0.0)) {
        return Err(Error::NotPositive {
            index: k,
            omega: grid.omega(k),
            value: v,
        });
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(SpectralDensity {
        grid,
        values,
        min,
        max,
    })
}

/// Covariance model as read from JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ModelSpec {
    /// Explicit `c(0), c(1), ...`; unspecified lags are zero.
    Sequence { values: Vec<f64> },
    Arma {
        #[serde(default)]
        ar: Vec<f64>,
        #[serde(default)]
        ma: Vec<f64>,
        sigma2: f64,
    },
    /// `psi` includes `psi_0 = 1`.
    MaKernel { psi: Vec<f64>, sigma2: f64 },
}

impl ModelSpec {
    /// Covariance out to at least `max_lag`.
    pub fn covariance(&self, max_lag: usize) -> Result<CovarianceSequence> {
        match self {
            ModelSpec::Sequence { values } => {
                let cov = CovarianceSequence::new(values.clone())?;
                let lag = max_lag.max(cov.truncation_length());
                Ok(cov.with_max_lag(lag))
            }
            ModelSpec::Arma { ar, ma, sigma2 } => acf_from_arma(ar, ma, *sigma2, max_lag),
            ModelSpec::MaKernel { psi, sigma2 } => {
                acf_from_ma_kernel(psi, *sigma2, max_lag.max(psi.len().saturating_sub(1)))
            }
        }
    }
}
