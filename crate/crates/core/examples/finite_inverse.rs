//! Entries of the finite-section inverse `T_n^{-1}` from the inverse
//! autocovariance plus boundary corrections, and the interior Cholesky
//! identity.
//!
//! ```text
//! cargo run --release --example finite_inverse
//! ```

use wiener_hopf::toeplitz::{cholesky_identity_residual, dense_inverse, FiniteInverse, ToeplitzSpec};
use wiener_hopf::{acf_from_arma, wold_from_covariance, Result};

fn main() -> Result<()> {
    let cov = acf_from_arma(&[0.5], &[0.4], 1.0, 256)?;
    let wold = wold_from_covariance(&cov, 64, None)?;

    for n in [1, 2, 5, 12] {
        let spec = ToeplitzSpec::new(cov.clone(), n)?;
        let fi = FiniteInverse::new(&spec, &wold)?;
        let err = (fi.matrix() - dense_inverse(&spec)?).abs().max();
        println!("n = {n:>2}: window {:>3}, tail bound {:.1e}, max diff vs dense {err:.1e}", fi.window, fi.tail);
    }

    let spec = ToeplitzSpec::new(cov, 400)?;
    let r = cholesky_identity_residual(&spec, &wold, 64)?;
    println!("interior block of T_400^{{-1}} vs sigma^-2 L L^T: {r:.2e}");
    Ok(())
}
