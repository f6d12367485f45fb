//! Shared numeric helpers: log-factorials and Gauss-Legendre rules.

use std::sync::OnceLock;

const LN_FACTORIAL_LEN: usize = 4096;

/// Finite and strictly positive (rejects NaN, infinities, zero).
pub(crate) fn positive_finite(x: f64) -> bool {
    x.is_finite() && x > 0.0
}

/// ln(n!) from a cumulative table. Differences of table entries are exact
/// partial sums of ln k, so factorial *ratios* keep correlated rounding.
pub fn ln_factorial(n: usize) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = Vec::with_capacity(LN_FACTORIAL_LEN);
        t.push(0.0);
        let mut acc = 0.0;
        for k in 1..LN_FACTORIAL_LEN {
            acc += (k as f64).ln();
            t.push(acc);
        }
        t
    });
    assert!(n < LN_FACTORIAL_LEN, "ln_factorial: n = {n} out of table range");
    table[n]
}

/// √(hi!/lo!) for hi ≥ lo, evaluated in log space.
pub fn sqrt_factorial_ratio(hi: usize, lo: usize) -> f64 {
    debug_assert!(hi >= lo);
    (0.5 * (ln_factorial(hi) - ln_factorial(lo))).exp()
}

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Newton iteration on Pₙ from the Chebyshev-angle initial guess; converges
/// to machine precision in a handful of steps.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

/// (Pₙ(x), Pₙ'(x)) via the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}
