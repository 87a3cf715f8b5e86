//! Log-scaled incomplete gamma, used for the exact tail of the ansatz potential.

use statrs::function::gamma::gamma_ui;

/// ln Γ(a, z) + z, finite for arbitrarily large z. Requires a > 0, z > 0.
pub fn ln_upper_gamma_scaled(a: f64, z: f64) -> f64 {
    assert!(a > 0.0 && z > 0.0);
    if z < 300.0 {
        return gamma_ui(a, z).ln() + z;
    }
    // Γ(a,z) e^z = z^{a-1} Σ_k (a-1)(a-2)…(a-k) / z^k
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..40 {
        term *= (a - k as f64) / z;
        sum += term;
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    (a - 1.0) * z.ln() + sum.ln()
}

pub fn log_add_exp(x: f64, y: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return y;
    }
    if y == f64::NEG_INFINITY {
        return x;
    }
    let m = x.max(y);
    m + ((x - m).exp() + (y - m).exp()).ln()
}
