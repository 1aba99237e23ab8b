//! Wold factorization of an ARMA(1,1) covariance: innovation variance and
//! the leading `phi` and `psi` coefficients.
//!
//! ```text
//! cargo run --example factorize
//! ```

use wiener_hopf::{acf_from_arma, wold_from_covariance, Result};

fn main() -> Result<()> {
    let cov = acf_from_arma(&[0.5], &[0.4], 1.0, 256)?;
    let wold = wold_from_covariance(&cov, 64, None)?;
    println!("sigma2 = {:.12}", wold.sigma2);
    println!("L_w = {}, residual = {:.2e}", wold.truncation_length, wold.residual.unwrap_or(f64::NAN));
    println!("{:>3} {:>14} {:>14}", "j", "phi_j", "psi_j");
    for j in 1..8 {
        println!("{j:>3} {:>14.10} {:>14.10}", wold.phi(j), wold.psi(j));
    }
    // for ARMA(1,1): phi_j = (a + b)(-b)^{j-1}, psi_j = (a + b) a^{j-1}
    println!("phi_3 closed form {:.10}", 0.9 * 0.4f64.powi(2));
    Ok(())
}
