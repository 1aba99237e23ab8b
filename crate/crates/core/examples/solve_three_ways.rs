//! The one-step predictor of an MA(1) process computed by the classical
//! solver, the prediction solver and a dense truncated solve.
//!
//! ```text
//! cargo run --example solve_three_ways
//! ```

use wiener_hopf::toeplitz::{toeplitz_solve_truncated, ToeplitzSpec};
use wiener_hopf::wiener::{solve_wh_classical, solve_wh_prediction, verify_normal_equations};
use wiener_hopf::{acf_from_arma, wold_from_covariance, CausalSeq, Result, SpectralGrid};

fn main() -> Result<()> {
    let cov = acf_from_arma(&[], &[0.4], 1.0, 256)?;
    let wold = wold_from_covariance(&cov, 64, None)?;
    // g_l = c(l + 1): predict X_1 from X_0, X_{-1}, ...
    let g = CausalSeq::new((0..64).map(|l| cov.get(l + 1)).collect());
    let grid = SpectralGrid::for_length(wold.truncation_length + g.len());

    let classical = solve_wh_classical(&g, &wold, &grid)?;
    let prediction = solve_wh_prediction(&g, &wold, &grid)?;
    let dense = toeplitz_solve_truncated(&ToeplitzSpec::new(cov.clone(), 400)?, &g)?;

    println!("{:>3} {:>16} {:>16} {:>16}", "j", "classical", "prediction", "dense");
    for j in 0..8 {
        println!(
            "{j:>3} {:>16.12} {:>16.12} {:>16.12}",
            classical.h.get(j),
            prediction.h.get(j),
            dense.h.get(j)
        );
    }
    let r = verify_normal_equations(&cov, &classical.h, &g, 84);
    println!("normal-equation residual {:.2e}", r.max);
    println!("dense condition estimate {:.3}", dense.condition_estimate);
    Ok(())
}
