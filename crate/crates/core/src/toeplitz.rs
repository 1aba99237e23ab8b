//! Finite and semi-infinite Toeplitz machinery.
//!
//! The dense routines go through a symmetric (Cholesky) factorization so that
//! they stay independent of the Levinson recursions used everywhere else.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::covmodel::{solve_symmetric_toeplitz, CovarianceSequence, WoldFactorization};
use crate::error::{Error, Result};
use crate::seq::{convolve_truncated, CausalSeq};

/// `T_n(f) = (c(s - t); 0 <= s, t <= n - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSpec {
    pub cov: CovarianceSequence,
    pub n: usize,
}

impl ToeplitzSpec {
    pub fn new(cov: CovarianceSequence, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("Toeplitz dimension must be >= 1".into()));
        }
        Ok(ToeplitzSpec { cov, n })
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |s, t| self.cov.get(s as isize - t as isize))
    }

    fn cholesky(&self) -> Result<nalgebra::Cholesky<f64, nalgebra::Dyn>> {
        self.matrix()
            .cholesky()
            .ok_or(Error::Factorization { n: self.n })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseSolve {
    pub h: CausalSeq,
    /// `(max_i L_ii / min_i L_ii)^2`, a lower bound on the 2-norm condition number.
    pub condition_estimate: f64,
}

/// Solves `T_n(f) h = g` (with `g` zero padded to `n`) by dense Cholesky.
pub fn toeplitz_solve_truncated(spec: &ToeplitzSpec, g: &CausalSeq) -> Result<DenseSolve> {
    if g.len() > spec.n {
        return Err(Error::Domain(format!(
            "right-hand side has {} entries, system has {}",
            g.len(),
            spec.n
        )));
    }
    let chol = spec.cholesky()?;
    let diag = chol.l_dirty().diagonal();
    let (lo, hi) = diag
        .iter()
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &d| (lo.min(d), hi.max(d)));
    let rhs = DVector::from_fn(spec.n, |i, _| g.get(i));
    let h = chol.solve(&rhs);
    Ok(DenseSolve {
        h: CausalSeq::new(h.iter().copied().collect()),
        condition_estimate: (hi / lo).powi(2),
    })
}

/// `T_n(f)^{-1}` by dense Cholesky.
pub fn dense_inverse(spec: &ToeplitzSpec) -> Result<DMatrix<f64>> {
    Ok(spec.cholesky()?.inverse())
}

/// Row `k` of the semi-infinite inverse `T(f)^{-1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InverseRow {
    pub k: usize,
    pub values: Vec<f64>,
}

/// `d_k = sigma^{-2} (1, -phi) * (e_k - sum_{s=1}^{k} phi_s e_{k-s})`.
pub fn inverse_row(wold: &WoldFactorization, k: usize, out_len: usize) -> InverseRow {
    let tilde = wold.phi_tilde();
    let v: Vec<f64> = (0..=k)
        .map(|i| tilde.get(k - i).copied().unwrap_or(0.0))
        .collect();
    let scale = 1.0 / wold.sigma2;
    let values = convolve_truncated(&tilde, &v, out_len)
        .into_iter()
        .map(|x| x * scale)
        .collect();
    InverseRow { k, values }
}

/// Fourier coefficients `gamma(k)` of `1 / f`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InverseACF {
    pub gamma: Vec<f64>,
}

impl InverseACF {
    pub fn get(&self, k: isize) -> f64 {
        self.gamma.get(k.unsigned_abs()).copied().unwrap_or(0.0)
    }
}

/// `gamma(k) = sigma^{-2} sum_s phi~_s phi~_{s+|k|}` for `k = 0..=max_lag`.
pub fn inverse_acf(wold: &WoldFactorization, max_lag: usize) -> InverseACF {
    let tilde = wold.phi_tilde();
    let gamma = (0..=max_lag)
        .map(|k| {
            let s: f64 = tilde.iter().zip(tilde.iter().skip(k)).map(|(a, b)| a * b).sum();
            s / wold.sigma2
        })
        .collect();
    InverseACF { gamma }
}

/// `T_n^{-1}` assembled entry by entry from finite-predictor coefficients and
/// the inverse autocovariance:
///
/// ```text
/// d^(n)_{k,j} = gamma(j - k) + sum_{l outside 0..n} beta_l[k] gamma(j - l)
/// ```
///
/// where `beta_l = T_n^{-1} (c(s - l))_s` holds the coefficients of the
/// projection of `X_l` onto `X_0, ..., X_{n-1}`. The covariance beyond the
/// AR order is the AR extension, so the result is exact for
/// `n <= order + 1` and inverts the AR(order) approximation otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteInverse {
    pub n: usize,
    /// Half-width `M` of the window of out-of-range targets actually summed.
    pub window: usize,
    /// Bound on the dropped part of the sum.
    pub tail: f64,
    gamma: InverseACF,
    /// `left[u - 1] = beta_{-u}`.
    left: Vec<Vec<f64>>,
}

impl FiniteInverse {
    /// Window `4 L_w`, tail tolerance `1e-8`.
    pub fn new(spec: &ToeplitzSpec, wold: &WoldFactorization) -> Result<Self> {
        Self::with_window(spec, wold, 4 * wold.truncation_length, 1e-8)
    }

    pub fn with_window(
        spec: &ToeplitzSpec,
        wold: &WoldFactorization,
        window: usize,
        tolerance: f64,
    ) -> Result<Self> {
        let n = spec.n;
        let p = wold.order();
        // gamma vanishes past the AR order, so a wider window adds nothing
        let m = window.min(p);
        let gamma = inverse_acf(wold, p);

        let ext = extend_acf(&spec.cov, wold, n + m);
        let col = &ext[..n];
        let mut left = Vec::with_capacity(m);
        for u in 1..=m {
            let rhs: Vec<f64> = (0..n).map(|s| ext[s + u]).collect();
            left.push(solve_symmetric_toeplitz(col, &rhs)?);
        }

        let dropped = gamma.gamma.iter().skip(m + 1).fold(0.0, |a, g| a + g.abs());
        let beta_max = left
            .iter()
            .flatten()
            .fold(1.0_f64, |a, b| a.max(b.abs()));
        let tail = 2.0 * dropped * beta_max;
        if tail > tolerance {
            return Err(Error::Truncation { tail, tolerance });
        }
        Ok(FiniteInverse {
            n,
            window: m,
            tail,
            gamma,
            left,
        })
    }

    pub fn entry(&self, k: usize, j: usize) -> f64 {
        let n = self.n;
        let mut d = self.gamma.get(j as isize - k as isize);
        for (i, beta) in self.left.iter().enumerate() {
            let u = (i + 1) as isize;
            // l = -u, and by persymmetry beta_{n-1+u}[k] = beta_{-u}[n-1-k]
            d += beta[k] * self.gamma.get(j as isize + u);
            d += beta[n - 1 - k] * self.gamma.get(j as isize - (n as isize - 1 + u));
        }
        d
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |k, j| self.entry(k, j))
    }
}

/// `c(0..len)`, continued past the AR order by `c(r) = sum_j phi_j c(r - j)`.
fn extend_acf(cov: &CovarianceSequence, wold: &WoldFactorization, len: usize) -> Vec<f64> {
    let p = wold.order();
    let mut c: Vec<f64> = (0..len).map(|r| cov.get(r as isize)).collect();
    for r in (p + 1)..len {
        c[r] = (1..=p).map(|j| wold.phi(j) * c[r - j]).sum();
    }
    c
}

/// Single entry `d^(n)_{k,j}`; see [`FiniteInverse`].
pub fn finite_inverse_entry(
    spec: &ToeplitzSpec,
    wold: &WoldFactorization,
    k: usize,
    j: usize,
) -> Result<f64> {
    if k >= spec.n || j >= spec.n {
        return Err(Error::Domain(format!(
            "entry ({k}, {j}) outside a {0}x{0} matrix",
            spec.n
        )));
    }
    Ok(FiniteInverse::new(spec, wold)?.entry(k, j))
}

/// `max |T_n(f)^{-1} - sigma^{-2} L L^T|` over the block `band <= i, j < n - band`,
/// with `L` the lower-triangular Toeplitz matrix of `(1, -phi_1, ...)`.
pub fn cholesky_identity_residual(
    spec: &ToeplitzSpec,
    wold: &WoldFactorization,
    band: usize,
) -> Result<f64> {
    let n = spec.n;
    if 2 * band >= n {
        return Err(Error::Domain(format!(
            "edge band {band} leaves no interior in dimension {n}"
        )));
    }
    let inv = dense_inverse(spec)?;
    let tilde = wold.phi_tilde();
    let t = |i: usize| tilde.get(i).copied().unwrap_or(0.0);
    let mut worst = 0.0_f64;
    for i in band..n - band {
        for j in i..n - band {
            // (L L^T)_{ij} = sum_{m <= i} phi~_{i-m} phi~_{j-m}
            let lo = j.saturating_sub(tilde.len() - 1);
            let llt: f64 = (lo..=i).map(|m| t(i - m) * t(j - m)).sum();
            worst = worst.max((inv[(i, j)] - llt / wold.sigma2).abs());
        }
    }
    Ok(worst)
}
