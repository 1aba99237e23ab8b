use serde::Serialize;

use super::CovarianceSequence;
use crate::error::{Error, Result};

/// Best-fitting AR(p) predictor: `X_t ~ sum_{j=1}^p coeffs[j-1] X_{t-j}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ARFit {
    pub p: usize,
    pub coeffs: Vec<f64>,
    /// Innovation variance `sigma_p^2`.
    pub sigma2: f64,
    /// Partial autocorrelations `kappa_1..kappa_p`.
    pub reflection: Vec<f64>,
    /// `sigma_0^2, sigma_1^2, ..., sigma_p^2` along the recursion.
    pub variances: Vec<f64>,
}

impl ARFit {
    /// `max_l |sum_j phi_{p,j} c(l-j) - c(l)| / c(0)` over `l = 1..=p`.
    pub fn normal_equation_residual(&self, cov: &CovarianceSequence) -> f64 {
        (1..=self.p)
            .map(|l| {
                let lhs: f64 = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, a)| a * cov.get(l as isize - (i as isize + 1)))
                    .sum();
                (lhs - cov.get(l as isize)).abs()
            })
            .fold(0.0, f64::max)
            / cov.variance()
    }

    /// Autocovariance of the fitted AR(p) model out to `max_lag`: equal to `c`
    /// up to lag `p`, continued by `c(r) = sum_j phi_{p,j} c(r - j)`.
    pub fn model_acf(&self, cov: &CovarianceSequence, max_lag: usize) -> Result<CovarianceSequence> {
        let mut c: Vec<f64> = (0..=max_lag).map(|r| cov.get(r as isize)).collect();
        for r in (self.p + 1)..=max_lag {
            c[r] = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a * c[r - i - 1])
                .sum();
        }
        CovarianceSequence::new(c)
    }
}

/// Levinson-Durbin recursion for the Yule-Walker equations of order `p`.
///
/// The caller is expected to have validated positivity of the spectral
/// density; a reflection coefficient with `|kappa| >= 1` is still reported.
pub fn levinson_durbin(cov: &CovarianceSequence, p: usize) -> Result<ARFit> {
    if p > cov.truncation_length() {
        return Err(Error::Domain(format!(
            "AR order {p} exceeds covariance length {}",
            cov.truncation_length()
        )));
    }
    let c = cov.values();
    let mut phi = vec![0.0; p];
    let mut prev = vec![0.0; p];
    let mut reflection = Vec::with_capacity(p);
    let mut variances = Vec::with_capacity(p + 1);
    let mut sigma = c[0];
    variances.push(sigma);
    for m in 1..=p {
        let acc: f64 = (1..m).map(|j| phi[j - 1] * c[m - j]).sum();
        let kappa = (c[m] - acc) / sigma;
        if !(kappa.abs() < 1.0) {
            return Err(Error::NotPositiveDefinite { order: m, kappa: kappa.abs() });
        }
        prev[..m - 1].copy_from_slice(&phi[..m - 1]);
        for j in 1..m {
            phi[j - 1] = prev[j - 1] - kappa * prev[m - j - 1];
        }
        phi[m - 1] = kappa;
        sigma *= 1.0 - kappa * kappa;
        reflection.push(kappa);
        variances.push(sigma);
    }
    Ok(ARFit {
        p,
        coeffs: phi,
        sigma2: sigma,
        reflection,
        variances,
    })
}

/// True when `1 - sum ar_j z^j` has no zeros in `|z| <= 1`, decided by the
/// step-down (reverse Levinson) recursion.
pub fn ar_is_causal(ar: &[f64]) -> bool {
    let mut a = ar.to_vec();
    while let Some(&kappa) = a.last() {
        if !(kappa.abs() < 1.0) {
            return false;
        }
        let m = a.len();
        let denom = 1.0 - kappa * kappa;
        let lower: Vec<f64> = (1..m)
            .map(|j| (a[j - 1] + kappa * a[m - j - 1]) / denom)
            .collect();
        a = lower;
    }
    true
}

/// Solves `T x = b` for the symmetric Toeplitz matrix with first column
/// `col` by Levinson's algorithm (`O(n^2)`).
pub fn solve_symmetric_toeplitz(col: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    if col.len() < n {
        return Err(Error::Domain(format!(
            "Toeplitz column has {} entries, system has {n}",
            col.len()
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let r0 = col[0];
    if !(r0 > 0.0) {
        return Err(Error::NotPositiveDefinite { order: 0, kappa: f64::INFINITY });
    }
    let r: Vec<f64> = col[1..n].iter().map(|v| v / r0).collect();
    let b: Vec<f64> = b.iter().map(|v| v / r0).collect();
    let mut x = vec![0.0; n];
    x[0] = b[0];
    if n == 1 {
        return Ok(x);
    }
    let mut y = vec![0.0; n];
    y[0] = -r[0];
    let mut alpha = -r[0];
    let mut beta = 1.0;
    let mut z = vec![0.0; n];
    for k in 1..n {
        beta *= 1.0 - alpha * alpha;
        if !(beta > 0.0) {
            return Err(Error::NotPositiveDefinite { order: k, kappa: alpha.abs() });
        }
        let dot: f64 = (0..k).map(|i| r[i] * x[k - 1 - i]).sum();
        let mu = (b[k] - dot) / beta;
        for i in 0..k {
            z[i] = x[i] + mu * y[k - 1 - i];
        }
        x[..k].copy_from_slice(&z[..k]);
        x[k] = mu;
        if k < n - 1 {
            let dot: f64 = (0..k).map(|i| r[i] * y[k - 1 - i]).sum();
            alpha = (-r[k] - dot) / beta;
            for i in 0..k {
                z[i] = y[i] + alpha * y[k - 1 - i];
            }
            y[..k].copy_from_slice(&z[..k]);
            y[k] = alpha;
        }
    }
    Ok(x)
}
