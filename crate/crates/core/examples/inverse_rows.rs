//! Rows of the inverse of the semi-infinite Toeplitz operator from the Wold
//! coefficients, checked against a large dense inverse.
//!
//! ```text
//! cargo run --release --example inverse_rows
//! ```

use wiener_hopf::toeplitz::{dense_inverse, inverse_acf, inverse_row, ToeplitzSpec};
use wiener_hopf::{acf_from_arma, wold_from_covariance, Result};

fn main() -> Result<()> {
    let cov = acf_from_arma(&[0.5, -0.3], &[], 1.0, 256)?;
    let wold = wold_from_covariance(&cov, 64, None)?;
    let dense = dense_inverse(&ToeplitzSpec::new(cov, 400)?)?;

    for k in 0..4 {
        let row = inverse_row(&wold, k, 8);
        let values: Vec<String> = row.values.iter().map(|v| format!("{v:>8.4}")).collect();
        let err = (0..8).map(|j| (row.values[j] - dense[(k, j)]).abs()).fold(0.0, f64::max);
        println!("d_{k} = [{}]  vs dense {err:.1e}", values.join(" "));
    }
    // deep rows settle on the inverse autocovariance
    let gamma = inverse_acf(&wold, 3);
    println!("gamma(0..=3) = {:?}", gamma.gamma);
    Ok(())
}
