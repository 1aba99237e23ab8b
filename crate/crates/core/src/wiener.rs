//! Wiener-Hopf solvers and the prediction-coefficient machinery.
//!
//! The classical route forms `[phi(w)^* G_+(w)]_+` by an exact linear
//! convolution and restriction to the non-negative indices. The prediction
//! route accumulates `sum_l g_l (e^{ilw} - sum_{s=1}^{l} phi_s e^{i(l-s)w})`
//! directly and, as a cross-check, also evaluates the numerator-over-`f`
//! form on the grid.

use num_complex::Complex64;
use serde::Serialize;

use crate::covmodel::{CovarianceSequence, WoldFactorization};
use crate::error::{Error, Result};
use crate::grid::SpectralGrid;
use crate::seq::{anticausal_part, causal_part, convolve, convolve_truncated, BiSeq, CausalSeq};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Classical,
    Prediction,
    Oracle,
    ArP,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Classical => "classical",
            Method::Prediction => "prediction",
            Method::Oracle => "oracle",
            Method::ArP => "ar_p",
        }
    }
}

/// Filter coefficients together with their transfer function on a grid.
#[derive(Debug, Clone)]
pub struct FilterSolution {
    pub h: CausalSeq,
    /// `H(w_k) = sum_j h_j e^{ij w_k}`.
    pub transfer: Vec<Complex64>,
    pub method: Method,
    /// Energy of the coefficients dropped by the output truncation.
    pub tail_energy: f64,
    /// Normal-equation residual, once checked against a covariance.
    pub residual: Option<f64>,
}

impl FilterSolution {
    pub fn new(h: CausalSeq, grid: &SpectralGrid, method: Method) -> Result<Self> {
        let transfer = grid.eval_causal(h.values())?;
        Ok(FilterSolution {
            h,
            transfer,
            method,
            tail_energy: 0.0,
            residual: None,
        })
    }

    /// Records `max_l |g_l - sum_j h_j c(l-j)|` for `l = 0..=check_len`.
    pub fn with_residual(mut self, cov: &CovarianceSequence, g: &CausalSeq, check_len: usize) -> Self {
        self.residual = Some(verify_normal_equations(cov, &self.h, g, check_len).max);
        self
    }
}

/// Default output length `L_w + len(g)`.
pub fn default_output_len(g: &CausalSeq, wold: &WoldFactorization) -> usize {
    wold.truncation_length + g.len()
}

/// Default residual check length `len(g) + 20`.
pub fn default_check_len(g: &CausalSeq) -> usize {
    g.len() + 20
}

fn finish(mut h: Vec<f64>, out_len: usize, grid: &SpectralGrid, method: Method) -> Result<FilterSolution> {
    let tail = h.iter().skip(out_len).fold(0.0, |acc, x| acc + x * x);
    h.resize(out_len, 0.0);
    let mut sol = FilterSolution::new(CausalSeq::new(h), grid, method)?;
    sol.tail_energy = tail;
    Ok(sol)
}

/// Coefficients of `phi(w)^* G_+(w)` as a two-sided sequence.
fn conj_phi_times_g(g: &CausalSeq, wold: &WoldFactorization) -> BiSeq {
    let mut rev = wold.phi_tilde();
    rev.reverse();
    let full = convolve(&rev, g.values());
    BiSeq::from_offset(&full, wold.order())
}

/// `H = sigma^{-2} phi [phi^* G_+]_+`.
pub fn solve_wh_classical(
    g: &CausalSeq,
    wold: &WoldFactorization,
    grid: &SpectralGrid,
) -> Result<FilterSolution> {
    solve_wh_classical_len(g, wold, grid, default_output_len(g, wold))
}

pub fn solve_wh_classical_len(
    g: &CausalSeq,
    wold: &WoldFactorization,
    grid: &SpectralGrid,
    out_len: usize,
) -> Result<FilterSolution> {
    let plus = causal_part(&conj_phi_times_g(g, wold));
    let scale = 1.0 / wold.sigma2;
    let h: Vec<f64> = convolve(&wold.phi_tilde(), plus.values())
        .into_iter()
        .map(|x| x * scale)
        .collect();
    finish(h, out_len, grid, Method::Classical)
}

/// Which form of the prediction solution is returned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictionRoute {
    /// Coefficient-domain convolution; authoritative.
    Coefficient,
    /// Numerator over `f` on the grid followed by an inverse transform.
    Grid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionOptions {
    pub route: PredictionRoute,
    /// Allowed disagreement between the two routes.
    pub route_tol: f64,
    pub out_len: Option<usize>,
}

impl Default for PredictionOptions {
    fn default() -> Self {
        PredictionOptions {
            route: PredictionRoute::Coefficient,
            route_tol: 1e-8,
            out_len: None,
        }
    }
}

/// `u_m = g_m - sum_{l>m} g_l phi_{l-m}`: the coefficients of
/// `sum_l g_l (e^{ilw} - sum_{s=1}^{l} phi_s e^{i(l-s)w})`. For `l = 0` the
/// inner sum is empty.
pub fn prediction_numerator(g: &CausalSeq, wold: &WoldFactorization) -> CausalSeq {
    let mut u = vec![0.0; g.len()];
    for (l, &gl) in g.values().iter().enumerate() {
        if gl == 0.0 {
            continue;
        }
        u[l] += gl;
        for s in 1..=l.min(wold.order()) {
            u[l - s] -= gl * wold.phi(s);
        }
    }
    CausalSeq::new(u)
}

/// Grid samples of `sum_l g_l (e^{ilw} + psi(w)^* phi_l(w)^*) / f(w)`.
pub fn prediction_grid_transfer(
    g: &CausalSeq,
    wold: &WoldFactorization,
    grid: &SpectralGrid,
) -> Result<Vec<Complex64>> {
    // w_s = sum_l g_l phi_{l+s}, so that sum_l g_l phi_l(w) = sum_s w_s e^{isw}
    let order = wold.order();
    let mut w = vec![0.0; order + 1];
    for (l, &gl) in g.values().iter().enumerate().take(order) {
        for (s, ws) in w.iter_mut().enumerate().skip(1).take(order - l) {
            *ws += gl * wold.phi(l + s);
        }
    }
    let gp = grid.eval_causal(g.values())?;
    let psi = grid.eval_causal(&wold.psi)?;
    let wt = grid.eval_causal(&w)?;
    Ok(gp
        .iter()
        .zip(&psi)
        .zip(&wt)
        .map(|((gk, pk), wk)| {
            let f = wold.sigma2 * pk.norm_sqr();
            (gk + pk.conj() * wk.conj()) / f
        })
        .collect())
}

/// Prediction-based solution with default options.
pub fn solve_wh_prediction(
    g: &CausalSeq,
    wold: &WoldFactorization,
    grid: &SpectralGrid,
) -> Result<FilterSolution> {
    solve_wh_prediction_with(g, wold, grid, &PredictionOptions::default())
}

/// Computes both prediction routes and fails if they disagree beyond
/// `opts.route_tol`.
pub fn solve_wh_prediction_with(
    g: &CausalSeq,
    wold: &WoldFactorization,
    grid: &SpectralGrid,
    opts: &PredictionOptions,
) -> Result<FilterSolution> {
    let out_len = opts.out_len.unwrap_or_else(|| default_output_len(g, wold));
    let u = prediction_numerator(g, wold);
    let scale = 1.0 / wold.sigma2;
    let full_len = wold.order() + u.len();
    let coef: Vec<f64> = convolve_truncated(&wold.phi_tilde(), u.values(), full_len)
        .into_iter()
        .map(|x| x * scale)
        .collect();

    let grid_coef = grid.coefficients(&prediction_grid_transfer(g, wold, grid)?)?;
    let gap = grid_coef
        .iter()
        .enumerate()
        .map(|(j, z)| (z.re - coef.get(j).copied().unwrap_or(0.0)).abs().max(z.im.abs()))
        .fold(0.0, f64::max);
    if gap > opts.route_tol {
        return Err(Error::Consistency {
            what: "prediction coefficient route vs grid route".into(),
            value: gap,
            tolerance: opts.route_tol,
        });
    }
    let h = match opts.route {
        PredictionRoute::Coefficient => coef,
        PredictionRoute::Grid => grid_coef.iter().map(|z| z.re).collect(),
    };
    finish(h, out_len, grid, Method::Prediction)
}

/// Extension `g_l, l < 0` (ordered `-1, -2, ...`) from
/// `G_- = -psi^* [phi^* G_+]_-`, paired with the given `g`.
pub fn g_minus(g: &CausalSeq, wold: &WoldFactorization, out_len: usize) -> BiSeq {
    let minus = anticausal_part(&conj_phi_times_g(g, wold));
    let neg: Vec<f64> = convolve_truncated(&minus, &wold.psi, out_len)
        .into_iter()
        .map(|x| -x)
        .collect();
    BiSeq::new(neg, g.clone())
}

/// `phi_j(l)`, the coefficient of `X_{-j}` in the best `l`-step predictor.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultistepCoeffs {
    pub ell: usize,
    pub values: Vec<f64>,
}

/// `phi_j(l) = sum_{s=1}^{l} phi_{j+s} psi_{l-s}` for `j = 0..out_len`.
pub fn multistep_coeffs(wold: &WoldFactorization, ell: usize, out_len: usize) -> Result<MultistepCoeffs> {
    if ell == 0 {
        return Err(Error::Domain("prediction horizon must be >= 1".into()));
    }
    let order = wold.order();
    let values = (0..out_len)
        .map(|j| {
            if j >= order {
                return 0.0;
            }
            (1..=ell.min(order - j))
                .map(|s| wold.phi(j + s) * wold.psi(ell - s))
                .sum()
        })
        .collect();
    Ok(MultistepCoeffs { ell, values })
}

/// Coefficients `(0, phi_{l+1}, phi_{l+2}, ...)` of `phi_l(w)`.
pub fn phi_tail_coeffs(wold: &WoldFactorization, ell: usize) -> Vec<f64> {
    let order = wold.order();
    if ell >= order {
        return Vec::new();
    }
    std::iter::once(0.0)
        .chain((ell + 1..=order).map(|j| wold.phi(j)))
        .collect()
}

/// Samples of `phi_l(w) = sum_{s>=1} phi_{l+s} e^{isw}`.
pub fn phi_tail(wold: &WoldFactorization, ell: usize, grid: &SpectralGrid) -> Result<Vec<Complex64>> {
    grid.eval_causal(&phi_tail_coeffs(wold, ell))
}

/// `H_m = phi [psi e^{-imw}]_+`, the `m`-step-ahead predictor.
pub fn m_step_filter(wold: &WoldFactorization, m: usize, grid: &SpectralGrid) -> Result<FilterSolution> {
    if m == 0 {
        return Err(Error::Domain("prediction horizon must be >= 1".into()));
    }
    let shifted: Vec<f64> = wold.psi.iter().skip(m).copied().collect();
    // psi is exact up to its truncation, so only the first len(shifted) terms are
    let len = shifted.len();
    let h = convolve_truncated(&wold.phi_tilde(), &shifted, len);
    finish(h, len, grid, Method::Classical)
}

/// Causal filter from a two-sided one: `h_j = a_{-j} + sum_{l>=1} a_l phi_j(l)`,
/// where `a_k` is the weight on `X_k`.
pub fn concurrent_from_twosided(a: &BiSeq, wold: &WoldFactorization, out_len: usize) -> Result<CausalSeq> {
    let mut h = vec![0.0; out_len];
    if let Some(h0) = h.first_mut() {
        *h0 += a.pos.get(0);
    }
    for (i, &v) in a.neg.iter().enumerate() {
        if let Some(hj) = h.get_mut(i + 1) {
            *hj += v;
        }
    }
    for (l, &al) in a.pos.values().iter().enumerate().skip(1) {
        if al == 0.0 {
            continue;
        }
        let phi_l = multistep_coeffs(wold, l, out_len)?;
        for (hj, p) in h.iter_mut().zip(&phi_l.values) {
            *hj += al * p;
        }
    }
    Ok(CausalSeq::new(h))
}

/// Two-sided filter weights `a_k` (on `X_k`, `|k| <= half_width`) whose
/// transform is `F(s)(w) / f(w)` for the cross-covariance
/// `s_l = cov(Y, X_{-l})`.
pub fn two_sided_filter(
    cross_cov: &BiSeq,
    cov: &CovarianceSequence,
    grid: &SpectralGrid,
    half_width: usize,
) -> Result<BiSeq> {
    let n = grid.len();
    if 2 * half_width + 1 > n {
        return Err(Error::Domain(format!(
            "half width {half_width} does not fit on a grid of {n} points"
        )));
    }
    let f = crate::covmodel::eval_spectral_density(cov, n)?;
    let s = grid.eval_bi(cross_cov)?;
    let ratio: Vec<Complex64> = s.iter().zip(&f.values).map(|(z, fk)| z / fk).collect();
    let b = grid.coefficients(&ratio)?;
    // b_j is the weight on X_{-j}; a_k = b_{-k}
    let pos = (0..=half_width).map(|k| b[(n - k) % n].re).collect();
    let neg = (1..=half_width).map(|k| b[k].re).collect();
    Ok(BiSeq::new(neg, CausalSeq::new(pos)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub max: f64,
    /// `|g_l - sum_j h_j c(l-j)|` for `l = 0..=check_len`.
    pub per_lag: Vec<f64>,
}

/// Independent check of `g_l = sum_j h_j c(l-j)`.
pub fn verify_normal_equations(
    cov: &CovarianceSequence,
    h: &CausalSeq,
    g: &CausalSeq,
    check_len: usize,
) -> ResidualReport {
    let per_lag: Vec<f64> = (0..=check_len)
        .map(|l| {
            let s: f64 = h
                .values()
                .iter()
                .enumerate()
                .map(|(j, hj)| hj * cov.get(l as isize - j as isize))
                .sum();
            (g.get(l) - s).abs()
        })
        .collect();
    let max = per_lag.iter().copied().fold(0.0, f64::max);
    ResidualReport { max, per_lag }
}
