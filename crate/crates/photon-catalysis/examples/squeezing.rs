//! Quadrature squeezing of the X component in dB relative to vacuum, and
//! golden-section location of the strongest squeezing. Every input
//! amplitude reaches the same floor: variance 3/8, i.e. -1.25 dB.
//!
//! Run with: cargo run --example squeezing

use num_complex::Complex64;
use photon_catalysis::{
    find_extremum, moments_analytic, CatalysisParams, ExtremumKind, Metric,
};

fn main() -> photon_catalysis::Result<()> {
    println!("dB[X] vs lambda (negative = squeezed below vacuum noise)");
    println!("lambda   |a|=1      |a|=2      |a|=3");
    for k in 0..=10 {
        let lambda = k as f64 / 10.0;
        let mut cells = Vec::new();
        for mag in [1.0, 2.0, 3.0] {
            let m = moments_analytic(&CatalysisParams::new(Complex64::new(mag, 0.0), lambda)?);
            cells.push(format!("{:+.4}", m.db_x));
        }
        println!("{lambda:<8} {:<10} {:<10} {:<10}", cells[0], cells[1], cells[2]);
    }

    println!("\nstrongest squeezing per input amplitude:");
    for (mag, bracket) in [(1.0, (0.1, 0.6)), (2.0, (0.05, 0.3)), (3.0, (0.01, 0.2))] {
        let res = find_extremum(
            Metric::VarX,
            Complex64::new(mag, 0.0),
            bracket,
            ExtremumKind::Min,
            1e-6,
        )?;
        println!(
            "  |a| = {mag}: lambda* = {:.6}, var_X = {:.6} ({:+.3} dB)",
            res.lambda_star,
            res.value,
            10.0 * (res.value / 0.5).log10(),
        );
    }

    println!("\ninterior antisqueezing peaks at lambda = 1/|a|^2 with var_X = 3/2:");
    for mag in [2.0, 3.0] {
        let lambda = 1.0 / (mag * mag);
        let m = moments_analytic(&CatalysisParams::new(Complex64::new(mag, 0.0), lambda)?);
        println!("  |a| = {mag}: var_X({lambda:.6}) = {:.9}", m.var_x);
    }
    Ok(())
}
