//! Mandel Q and the second-order autocorrelation g2(0) as functions of the
//! catalysis parameter, with the statistical regimes marked.
//!
//! Run with: cargo run --example photon_statistics

use num_complex::Complex64;
use photon_catalysis::{scan_metric, Metric, ScanRequest};

fn main() -> photon_catalysis::Result<()> {
    let alphas = vec![
        Complex64::new(1.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(3.0, 0.0),
    ];

    let q = scan_metric(&ScanRequest::new(Metric::MandelQ, alphas.clone(), 0.0, 1.0, 0.1)?)?;
    println!("Mandel Q (Q < 0 is sub-Poissonian, strictly nonclassical)");
    println!("lambda   |a|=1          |a|=2          |a|=3");
    for i in 0..11 {
        let row = |j: usize| &q[j * 11 + i];
        println!(
            "{:<8} {:<14} {:<14} {:<14}",
            format!("{:.1}", row(0).lambda),
            format!("{:+.4} {}", row(0).value, mark(row(0).classification)),
            format!("{:+.4} {}", row(1).value, mark(row(1).classification)),
            format!("{:+.4} {}", row(2).value, mark(row(2).classification)),
        );
    }

    let g2 = scan_metric(&ScanRequest::new(Metric::G2, alphas, 0.0, 1.0, 0.1)?)?;
    println!("\ng2(0) (< 1 antibunching, 1..2 bunching, > 2 superbunching)");
    println!("lambda   |a|=1                |a|=2                |a|=3");
    for i in 0..11 {
        let row = |j: usize| &g2[j * 11 + i];
        println!(
            "{:<8} {:<20} {:<20} {:<20}",
            format!("{:.1}", row(0).lambda),
            format!("{:.4} {}", row(0).value, row(0).classification),
            format!("{:.4} {}", row(1).value, row(1).classification),
            format!("{:.4} {}", row(2).value, row(2).classification),
        );
    }
    Ok(())
}

fn mark(class: &str) -> &'static str {
    match class {
        "sub-poissonian" => "(sub)",
        "super-poissonian" => "(super)",
        _ => "",
    }
}
