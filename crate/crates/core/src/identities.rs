//! Residuals of the identities tying the solvers together. Each function
//! evaluates both sides independently and returns the sup-norm gap.

use num_complex::Complex64;
use serde::Serialize;

use crate::covmodel::{eval_spectral_density, CovarianceSequence, WoldFactorization};
use crate::error::Result;
use crate::grid::{sup_diff, SpectralGrid};
use crate::seq::{convolve, BiSeq, CausalSeq};
use crate::wiener::{
    concurrent_from_twosided, g_minus, m_step_filter, multistep_coeffs, phi_tail, phi_tail_coeffs,
    two_sided_filter, FilterSolution,
};

/// `e^{ilw} + psi* phi_l* = e^{ilw} psi* (1 - sum_{s=1}^{l} phi_s e^{-isw})`.
pub fn alt_exp_residual(wold: &WoldFactorization, ell: usize, grid: &SpectralGrid) -> Result<f64> {
    let psi_c = grid.eval_causal_conj(&wold.psi)?;
    let tail = phi_tail(wold, ell, grid)?;
    let e = grid.exp_samples(ell as isize);
    let lhs: Vec<Complex64> = e
        .iter()
        .zip(&psi_c)
        .zip(&tail)
        .map(|((ek, pk), tk)| ek + pk * tk.conj())
        .collect();

    let head: Vec<f64> = std::iter::once(0.0)
        .chain((1..=ell).map(|s| wold.phi(s)))
        .collect();
    let head_c = grid.eval_causal_conj(&head)?;
    let rhs: Vec<Complex64> = e
        .iter()
        .zip(&psi_c)
        .zip(&head_c)
        .map(|((ek, pk), hk)| ek * pk * (1.0 - hk))
        .collect();
    Ok(sup_diff(&lhs, &rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailControlled {
    pub residual: f64,
    /// Coefficient mass the truncated side cannot see.
    pub tail: f64,
}

impl TailControlled {
    pub fn holds(&self, tol: f64) -> bool {
        self.residual <= self.tail + tol
    }
}

/// For fixed `j`, `sum_{l=1}^{L_w} phi_j(l) e^{ilw}` against `psi(w) phi_j(w)`.
pub fn multistep_generating_residual(
    wold: &WoldFactorization,
    j: usize,
    grid: &SpectralGrid,
) -> Result<TailControlled> {
    let lmax = wold.truncation_length;
    let mut series = vec![0.0; lmax + 1];
    for (ell, s) in series.iter_mut().enumerate().skip(1) {
        *s = multistep_coeffs(wold, ell, j + 1)?.values[j];
    }
    let lhs = grid.eval_causal(&series)?;

    let psi = grid.eval_causal(&wold.psi)?;
    let pj = phi_tail(wold, j, grid)?;
    let rhs: Vec<Complex64> = psi.iter().zip(&pj).map(|(a, b)| a * b).collect();

    let product = convolve(&wold.psi, &phi_tail_coeffs(wold, j));
    let tail = product.iter().skip(lmax + 1).map(|x| x.abs()).sum::<f64>()
        + wold.psi_tail() * phi_tail_coeffs(wold, j).iter().map(|x| x.abs()).sum::<f64>();
    Ok(TailControlled {
        residual: sup_diff(&lhs, &rhs),
        tail,
    })
}

/// `F(g_+-)(w) = f(w) H(w)` with `g_-` from the anticausal extension.
pub fn deconvolution_residual(
    g: &CausalSeq,
    solution: &FilterSolution,
    cov: &CovarianceSequence,
    wold: &WoldFactorization,
    grid: &SpectralGrid,
) -> Result<f64> {
    let ext: BiSeq = g_minus(g, wold, wold.truncation_length);
    let lhs = grid.eval_bi(&ext)?;
    let f = eval_spectral_density(cov, grid.len())?;
    let rhs: Vec<Complex64> = solution
        .transfer
        .iter()
        .zip(&f.values)
        .map(|(h, fk)| h * fk)
        .collect();
    Ok(sup_diff(&lhs, &rhs))
}

/// `max_j |h_j - phi_j(m)|` between the m-step filter and the multistep
/// coefficients.
pub fn m_step_residual(wold: &WoldFactorization, m: usize, grid: &SpectralGrid) -> Result<f64> {
    let h = m_step_filter(wold, m, grid)?.h;
    let phi = multistep_coeffs(wold, m, h.len())?;
    Ok(h.values()
        .iter()
        .zip(&phi.values)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Deconvolves the cross-covariance of `Y = X_m` into two-sided weights,
/// maps them to a causal filter and compares with the m-step filter.
pub fn concurrent_residual(
    cov: &CovarianceSequence,
    wold: &WoldFactorization,
    m: usize,
    grid: &SpectralGrid,
    half_width: usize,
) -> Result<f64> {
    // s_l = cov(X_m, X_{-l}) = c(m + l)
    let lc = cov.truncation_length() as isize;
    let mi = m as isize;
    let pos = (0..=(lc - mi).max(0)).map(|l| cov.get(mi + l)).collect();
    let neg = (1..=(lc + mi)).map(|l| cov.get(mi - l)).collect();
    let cross = BiSeq::new(neg, CausalSeq::new(pos));
    let a = two_sided_filter(&cross, cov, grid, half_width)?;

    let direct = m_step_filter(wold, m, grid)?.h;
    let h = concurrent_from_twosided(&a, wold, direct.len())?;
    Ok(h.values()
        .iter()
        .zip(direct.values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}
