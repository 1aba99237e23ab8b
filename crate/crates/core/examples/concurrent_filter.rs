//! Causal filter from a two-sided one: the two-sided smoother for `Y = X_m`
//! is mapped to a concurrent filter, which must reproduce the m-step
//! predictor.
//!
//! ```text
//! cargo run --example concurrent_filter
//! ```

use wiener_hopf::identities::concurrent_residual;
use wiener_hopf::{acf_from_arma, wold_from_covariance, Result, SpectralGrid};

fn main() -> Result<()> {
    let cov = acf_from_arma(&[0.5], &[0.4], 1.0, 256)?;
    let wold = wold_from_covariance(&cov, 64, None)?;
    let grid = SpectralGrid::for_length(4 * (wold.truncation_length + 256));
    for m in 1..=3 {
        let r = concurrent_residual(&cov, &wold, m, &grid, 64)?;
        println!("m = {m}: concurrent vs m-step filter {r:.2e}");
    }
    Ok(())
}
