//! Finite-difference radial operators, used as independent checks.

/// Fornberg's weights for derivatives 0..=order at x0 from the given nodes.
/// Row k holds the weights of the k-th derivative.
pub fn fornberg_weights(x0: f64, nodes: &[f64], order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Derivatives 1..=4 of f at r from a centred 9-point stencil of spacing h.
pub fn radial_derivatives(f: impl Fn(f64) -> f64, r: f64, h: f64) -> [f64; 4] {
    let nodes: Vec<f64> = (-4..=4).map(|k| r + k as f64 * h).collect();
    let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    let w = fornberg_weights(r, &nodes, 4);
    let d = |k: usize| w[k].iter().zip(&values).map(|(a, b)| a * b).sum::<f64>();
    [d(1), d(2), d(3), d(4)]
}

/// u'' + (N−1)u'/r.
pub fn radial_laplacian(f: impl Fn(f64) -> f64, n: u32, r: f64, h: f64) -> f64 {
    let [d1, d2, _, _] = radial_derivatives(f, r, h);
    d2 + (n as f64 - 1.0) * d1 / r
}

/// Δ²u for radial u, expanded in derivatives of u.
pub fn radial_bilaplacian(f: impl Fn(f64) -> f64, n: u32, r: f64, h: f64) -> f64 {
    let [d1, d2, d3, d4] = radial_derivatives(f, r, h);
    let m = n as f64 - 1.0;
    let k = m * (n as f64 - 3.0);
    d4 + 2.0 * m * d3 / r + k * d2 / (r * r) - k * d1 / (r * r * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn weights_reproduce_classic_stencil() {
        let w = fornberg_weights(0.0, &[-1.0, 0.0, 1.0], 2);
        assert_relative_eq!(w[2][0], 1.0);
        assert_relative_eq!(w[2][1], -2.0);
        assert_relative_eq!(w[1][2], 0.5);
    }

    #[test]
    fn operators_on_polynomials() {
        // Δ r^4 = 4(N+2) r^2, Δ² r^4 = 8(N+2)N
        for n in [3u32, 5] {
            let nf = n as f64;
            let lap = radial_laplacian(|r| r.powi(4), n, 2.0, 0.1);
            assert_relative_eq!(lap, 4.0 * (nf + 2.0) * 4.0, max_relative = 1e-9);
            let bi = radial_bilaplacian(|r| r.powi(4), n, 2.0, 0.1);
            assert_relative_eq!(bi, 8.0 * (nf + 2.0) * nf, max_relative = 1e-7);
        }
    }
}
