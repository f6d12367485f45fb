//! Success probabilities of the heralded detection for both devices over
//! the (|alpha|, lambda) plane, and the exact ratio p_PA / p_BS = 1 - lambda.
//!
//! Run with: cargo run --example heralding_probability

use num_complex::Complex64;
use photon_catalysis::{p_success, CatalysisParams, DeviceKind};

fn main() -> photon_catalysis::Result<()> {
    println!("p_BS = e^(-lambda |alpha|^2) I0(alpha, lambda);  p_PA = (1 - lambda) p_BS\n");
    println!("|alpha|   lambda   p_BS       p_PA       p_PA/p_BS");
    for mag in [0.5, 1.0, 2.0, 3.0] {
        for lambda in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let params = CatalysisParams::new(Complex64::new(mag, 0.0), lambda)?;
            let p_bs = p_success(&params, DeviceKind::BeamSplitter);
            let p_pa = p_success(&params, DeviceKind::ParametricAmplifier);
            let ratio = if p_bs > 0.0 { p_pa / p_bs } else { f64::NAN };
            println!("{mag:<9} {lambda:<8} {p_bs:<10.6} {p_pa:<10.6} {ratio:.6}");
        }
        println!();
    }

    // the swap limit: p_BS(lambda = 1) = |alpha|^2 e^(-|alpha|^2)
    let params = CatalysisParams::new(Complex64::new(1.0, 0.0), 1.0)?;
    println!(
        "swap limit at |alpha| = 1: p_BS = {:.9} (= 1/e)",
        p_success(&params, DeviceKind::BeamSplitter)
    );
    Ok(())
}
