//! m-step-ahead prediction coefficients `phi_j(m)` for an ARMA(1,1) process,
//! from the explicit formula and from the m-step filter.
//!
//! ```text
//! cargo run --example multistep_prediction
//! ```

use wiener_hopf::wiener::{m_step_filter, multistep_coeffs};
use wiener_hopf::{acf_from_arma, wold_from_covariance, Result, SpectralGrid};

fn main() -> Result<()> {
    let cov = acf_from_arma(&[0.5], &[0.4], 1.0, 256)?;
    let wold = wold_from_covariance(&cov, 64, None)?;
    let grid = SpectralGrid::for_length(4 * wold.truncation_length);

    for m in 1..=4 {
        let coeffs = multistep_coeffs(&wold, m, 6)?;
        let filter = m_step_filter(&wold, m, &grid)?;
        let diff = (0..6).map(|j| (coeffs.values[j] - filter.h.get(j)).abs()).fold(0.0, f64::max);
        let shown: Vec<String> = coeffs.values.iter().map(|v| format!("{v:>9.5}")).collect();
        println!("m = {m}: [{}]  filter diff {diff:.1e}", shown.join(" "));
    }
    Ok(())
}
