//! Shared covariance fixtures for the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wiener_hopf::covmodel::{acf_from_arma, acf_from_ma_kernel, wold_from_covariance};
use wiener_hopf::{CausalSeq, CovarianceSequence, SpectralGrid, WoldFactorization};

pub struct Fixture {
    pub name: &'static str,
    pub cov: CovarianceSequence,
    pub wold: WoldFactorization,
    /// Exact AR order when the truth is autoregressive.
    pub ar_order: Option<usize>,
}

impl Fixture {
    fn new(name: &'static str, cov: CovarianceSequence, order: usize, ar_order: Option<usize>) -> Self {
        let wold = wold_from_covariance(&cov, order, None)
            .unwrap_or_else(|e| panic!("{name}: factorization failed: {e}"));
        Fixture { name, cov, wold, ar_order }
    }

    /// Grid wide enough for the solver outputs and for the covariance.
    pub fn grid(&self) -> SpectralGrid {
        let need = (self.wold.truncation_length + 1) * 8;
        SpectralGrid::for_length(need.max(2 * self.cov.truncation_length() + 2))
    }

    /// `g_l = c(l + 1)` for `l < 300`.
    pub fn cross_cov_rhs(&self) -> CausalSeq {
        let v: Vec<f64> = (1..=300).map(|l| self.cov.get(l)).collect();
        CausalSeq::new(v)
    }
}

pub const MAX_LAG: usize = 256;

/// `psi_0 = 1`, `psi_j = 0.5 (1 + j)^{-5}`, cut at `j = 2048`.
pub fn polynomial_kernel() -> Vec<f64> {
    (0..=2048)
        .map(|j| if j == 0 { 1.0 } else { 0.5 * (1.0 + j as f64).powi(-5) })
        .collect()
}

pub fn white_noise() -> Fixture {
    let cov = CovarianceSequence::white_noise(1.0).unwrap().with_max_lag(MAX_LAG);
    Fixture::new("white noise", cov, 64, Some(0))
}

pub fn ar1() -> Fixture {
    Fixture::new("AR(1) 0.5", acf_from_arma(&[0.5], &[], 1.0, MAX_LAG).unwrap(), 64, Some(1))
}

pub fn ar2() -> Fixture {
    Fixture::new(
        "AR(2) (0.5, -0.3)",
        acf_from_arma(&[0.5, -0.3], &[], 1.0, MAX_LAG).unwrap(),
        64,
        Some(2),
    )
}

pub fn ma1() -> Fixture {
    Fixture::new("MA(1) 0.4", acf_from_ma_kernel(&[1.0, 0.4], 1.0, MAX_LAG).unwrap(), 64, None)
}

pub fn arma11() -> Fixture {
    Fixture::new(
        "ARMA(1,1) (0.5; 0.4)",
        acf_from_arma(&[0.5], &[0.4], 1.0, MAX_LAG).unwrap(),
        64,
        None,
    )
}

pub fn polynomial() -> Fixture {
    let kernel = polynomial_kernel();
    let cov = acf_from_ma_kernel(&kernel, 1.0, kernel.len() - 1).unwrap();
    Fixture::new("polynomial kernel", cov, 256, None)
}

pub fn all() -> Vec<Fixture> {
    vec![white_noise(), ar1(), ar2(), ma1(), arma11(), polynomial()]
}

/// Length-40 right-hand side with five nonzero entries, fixed seed.
pub fn random_sparse_rhs(seed: u64) -> CausalSeq {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = vec![0.0; 40];
    for _ in 0..5 {
        let i = rng.random_range(0..40);
        v[i] = rng.random_range(-1.0..1.0);
    }
    CausalSeq::new(v)
}
