//! Error of the AR(p) approximation `H_p` for a geometric and a polynomial
//! AR tail.
//!
//! ```text
//! cargo run --release --example approx_decay
//! ```

use wiener_hopf::approx::{decay_study, ApproxConfig};
use wiener_hopf::{acf_from_ma_kernel, CausalSeq, Result};

fn report(name: &str, study: &wiener_hopf::approx::DecayStudy) {
    println!("{name}");
    println!("  {:>4} {:>12} {:>12} {:>12}", "p", "sup_err", "baxter_lhs", "ar_tail");
    for r in &study.rows {
        println!("  {:>4} {:>12.4e} {:>12.4e} {:>12.4e}", r.p, r.sup_err, r.baxter_lhs, r.ar_tail);
    }
    println!(
        "  log-log slope {:?}  semilog slope {:?}  C_fit {:?}  uniform {:?}  reference residual {:.2e}",
        study.loglog_slope, study.semilog_slope, study.c_fit, study.uniform_ok, study.reference_residual
    );
}

fn main() -> Result<()> {
    let ma1 = acf_from_ma_kernel(&[1.0, 0.4], 1.0, 256)?;
    let study = decay_study(
        &ma1,
        &ApproxConfig {
            p_list: (2..=20).step_by(2).collect(),
            n_grid: None,
            reference_order: 128,
            g: CausalSeq::unit(0),
            smoothness_k: 3.5,
        },
    )?;
    report("MA(1), b = 0.4", &study);

    // psi_j = 0.5 (1 + j)^{-5}: phi_j decays like j^{-5}
    let kernel: Vec<f64> = (0..=2048)
        .map(|j| if j == 0 { 1.0 } else { 0.5 * (1.0 + j as f64).powi(-5) })
        .collect();
    let poly = acf_from_ma_kernel(&kernel, 1.0, 2048)?;
    let study = decay_study(
        &poly,
        &ApproxConfig {
            p_list: vec![8, 16, 32, 64],
            n_grid: None,
            reference_order: 1024,
            g: CausalSeq::unit(0),
            smoothness_k: 3.5,
        },
    )?;
    report("polynomial kernel, exponent 5", &study);
    Ok(())
}
