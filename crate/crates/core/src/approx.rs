//! Finite-order approximation `H_p` built from the best-fitting AR(p)
//! coefficients, and the empirical study of how fast it converges to `H`.

use serde::Serialize;

use crate::covmodel::{
    levinson_durbin, wold_from_covariance_with, ARFit, CovarianceSequence, WoldFactorization,
    WoldOptions,
};
use crate::error::{Error, Result};
use crate::grid::{next_pow2, sup_diff, sup_norm, SpectralGrid};
use crate::seq::CausalSeq;
use crate::wiener::{solve_wh_classical_len, FilterSolution, Method};

/// Pseudo-Wold factorization of the AR(p) fit; `psi` is kept minimal since
/// the classical solve only needs `phi`.
pub fn ar_wold(fit: &ARFit) -> Result<WoldFactorization> {
    WoldFactorization::from_ar(fit.sigma2, fit.coeffs.clone(), fit.p)
}

/// `H_p = sigma_p^{-2} phi^(p) [phi^(p)* G_+]_+`. The coefficients are exact
/// and have length `p + len(g)`.
pub fn fit_hp(
    g: &CausalSeq,
    cov: &CovarianceSequence,
    p: usize,
    grid: &SpectralGrid,
) -> Result<FilterSolution> {
    if p == 0 {
        return Err(Error::Domain("AR order must be >= 1".into()));
    }
    let fit = levinson_durbin(cov, p)?;
    hp_from_fit(g, &fit, grid)
}

fn hp_from_fit(g: &CausalSeq, fit: &ARFit, grid: &SpectralGrid) -> Result<FilterSolution> {
    let wold = ar_wold(fit)?;
    let mut sol = solve_wh_classical_len(g, &wold, grid, fit.p + g.len())?;
    sol.method = Method::ArP;
    Ok(sol)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BaxterTerms {
    /// `sum_{j<=p} |phi_{p,j} - phi_j|`.
    pub lhs: f64,
    /// `sum_{j>p} |phi_j|` up to the reference order.
    pub ar_tail: f64,
    /// `sum |phi_j|` over the last quarter of the reference fit; a proxy for
    /// what the reference order leaves out.
    pub reference_tail: f64,
}

/// Both sides of Baxter's inequality at order `p`, with the infinite-order
/// coefficients replaced by a fit of order `reference_order >= 4p`.
pub fn baxter_terms(cov: &CovarianceSequence, p: usize, reference_order: usize) -> Result<BaxterTerms> {
    if reference_order < 4 * p {
        return Err(Error::Domain(format!(
            "reference order {reference_order} must be at least 4p = {}",
            4 * p
        )));
    }
    let reference = levinson_durbin(cov, reference_order)?;
    let fit = levinson_durbin(cov, p)?;
    Ok(baxter_from(&fit, &reference))
}

fn baxter_from(fit: &ARFit, reference: &ARFit) -> BaxterTerms {
    let r = &reference.coeffs;
    let lhs = fit.coeffs.iter().zip(r).map(|(a, b)| (a - b).abs()).sum();
    let ar_tail = r.iter().skip(fit.p).map(|x| x.abs()).sum();
    let reference_tail = r.iter().skip(3 * r.len() / 4).map(|x| x.abs()).sum();
    BaxterTerms {
        lhs,
        ar_tail,
        reference_tail,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxConfig {
    /// Strictly increasing AR orders.
    pub p_list: Vec<usize>,
    /// Defaults to the next power of two `>= 4 (reference_order + len(g))`.
    pub n_grid: Option<usize>,
    /// Order of the fit standing in for the true factorization.
    pub reference_order: usize,
    pub g: CausalSeq,
    /// Exponent `K` in the bound `p^{-K+1} sup|g| + p^{-K} sup|G_+|`.
    pub smoothness_k: f64,
}

impl ApproxConfig {
    pub fn validate(&self) -> Result<()> {
        let max_p = match self.p_list.last() {
            Some(&p) => p,
            None => return Err(Error::Domain("p_list is empty".into())),
        };
        if self.p_list[0] == 0 || self.p_list.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain("p_list must be strictly increasing and >= 1".into()));
        }
        if self.reference_order < 4 * max_p {
            return Err(Error::Domain(format!(
                "reference order {} must be at least 4 max(p) = {}",
                self.reference_order,
                4 * max_p
            )));
        }
        if self.g.is_empty() {
            return Err(Error::Domain("right-hand side is empty".into()));
        }
        Ok(())
    }

    fn grid_size(&self) -> usize {
        self.n_grid
            .unwrap_or_else(|| next_pow2(4 * (self.reference_order + self.g.len())))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayRow {
    pub p: usize,
    /// `sup_w |H(w) - H_p(w)|` on the grid.
    pub sup_err: f64,
    pub baxter_lhs: f64,
    pub ar_tail: f64,
    pub sup_g: f64,
    #[serde(rename = "sup_Gplus")]
    pub sup_gplus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayStudy {
    pub rows: Vec<DecayRow>,
    /// Least-squares slope of `log sup_err` against `log p`.
    pub loglog_slope: Option<f64>,
    /// Least-squares slope of `log sup_err` against `p`.
    pub semilog_slope: Option<f64>,
    /// `sup_err / bound` at the first `p >= 8`.
    pub c_fit: Option<f64>,
    /// Whether `sup_err <= 2 C_fit bound` at every larger `p`.
    pub uniform_ok: Option<bool>,
    /// `sup_w |H_R - H_{R/2}|` for the reference order `R`.
    pub reference_residual: f64,
    /// Factorization residual of the reference fit.
    pub reference_factorization: Option<f64>,
}

impl DecayStudy {
    /// `p^{-K+1} sup|g| + p^{-K} sup|G_+|`.
    pub fn bound(p: usize, k: f64, row: &DecayRow) -> f64 {
        let p = p as f64;
        p.powf(1.0 - k) * row.sup_g + p.powf(-k) * row.sup_gplus
    }
}

/// Runs `H_p` for every `p` in the config against the reference-order `H`.
pub fn decay_study(cov: &CovarianceSequence, config: &ApproxConfig) -> Result<DecayStudy> {
    config.validate()?;
    let grid = SpectralGrid::new(config.grid_size())?;
    let g = &config.g;
    let r = config.reference_order;

    let reference_wold = wold_from_covariance_with(cov, &WoldOptions::new(r))?;
    let reference = levinson_durbin(cov, r)?;
    let h_ref = hp_from_fit(g, &reference, &grid)?;
    let h_half = fit_hp(g, cov, r / 2, &grid)?;
    let reference_residual = sup_diff(&h_ref.transfer, &h_half.transfer);

    let sup_g = g.sup_abs();
    let sup_gplus = sup_norm(&grid.eval_causal(g.values())?);

    let mut rows = Vec::with_capacity(config.p_list.len());
    for &p in &config.p_list {
        let fit = levinson_durbin(cov, p)?;
        let hp = hp_from_fit(g, &fit, &grid)?;
        let bax = baxter_from(&fit, &reference);
        rows.push(DecayRow {
            p,
            sup_err: sup_diff(&h_ref.transfer, &hp.transfer),
            baxter_lhs: bax.lhs,
            ar_tail: bax.ar_tail,
            sup_g,
            sup_gplus,
        });
        log::debug!("decay: p {p} sup_err {:.3e}", rows.last().map_or(0.0, |r| r.sup_err));
    }

    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.sup_err > 0.0)
        .map(|r| (r.p as f64, r.sup_err.ln()))
        .collect();
    let loglog_slope = ls_slope(pts.iter().map(|&(p, e)| (p.ln(), e)));
    let semilog_slope = ls_slope(pts.iter().copied());

    let k = config.smoothness_k;
    let (c_fit, uniform_ok) = match rows.iter().position(|r| r.p >= 8) {
        Some(i0) => {
            let base = &rows[i0];
            let c = base.sup_err / DecayStudy::bound(base.p, k, base);
            let ok = rows[i0 + 1..]
                .iter()
                .all(|r| r.sup_err <= 2.0 * c * DecayStudy::bound(r.p, k, r));
            (Some(c), Some(ok))
        }
        None => (None, None),
    };

    Ok(DecayStudy {
        rows,
        loglog_slope,
        semilog_slope,
        c_fit,
        uniform_ok,
        reference_residual,
        reference_factorization: reference_wold.residual,
    })
}

fn ls_slope(points: impl Iterator<Item = (f64, f64)>) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points.collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
