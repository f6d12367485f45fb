//! Build a catalyzed coherent state from its closed form and inspect it:
//! Fock coefficients, photon-number distribution, and the superposition
//! weights for both devices.
//!
//! Run with: cargo run --example catalyzed_state

use num_complex::Complex64;
use photon_catalysis::{spccs_coefficients, CatalysisParams};

fn cfmt(z: Complex64) -> String {
    format!("{:.6} {} {:.6}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
}

fn main() -> photon_catalysis::Result<()> {
    let params = CatalysisParams::new(Complex64::new(1.0, 0.0), 0.7)?;
    let state = spccs_coefficients(&params, params.default_n_max());

    println!("catalyzed state at alpha = {}, lambda = {}", params.alpha, params.lambda);
    println!("heralding probability: BS {:.6}, PA {:.6}", state.p_bs, state.p_pa);
    if let Some((c0, c1)) = state.bs_weights {
        println!("BS superposition |psi> = c0|t a> + c1 a^dag |t a>:");
        println!("  c0 = {}, c1 = {}", cfmt(c0), cfmt(c1));
    }
    if let Some((d0, d1)) = state.pa_weights {
        println!("PA superposition weights: d0 = {}, d1 = {}", cfmt(d0), cfmt(d1));
    }

    println!("\n  n    P(n)        omega_n");
    for (n, amp) in state.omega.amplitudes().iter().take(9).enumerate() {
        println!("  {n}    {:<10.6}  {}", amp.norm_sqr(), cfmt(*amp));
    }
    let total: f64 = state.omega.pnd().iter().sum();
    println!("  sum P(n) = {total:.12}");

    // the n = 1 component dies exactly at lambda = 1/2
    let half = spccs_coefficients(&CatalysisParams::new(params.alpha, 0.5)?, 20);
    println!("\nat lambda = 1/2 the single-photon term vanishes: omega_1 = {}", half.omega.amp(1));

    // endpoints: coherent state at lambda = 0, single photon at lambda = 1
    for lambda in [0.0, 1.0] {
        let s = spccs_coefficients(&CatalysisParams::new(params.alpha, lambda)?, 20);
        let head: Vec<String> =
            s.omega.pnd().iter().take(4).map(|p| format!("{p:.4}")).collect();
        println!("lambda = {lambda}: P(0..4) = [{}]", head.join(", "));
    }
    Ok(())
}
