//! The explicit supersolution u = Φ ∗ (w^{-γ} ln^τ w), w = √(A + r²).

mod cases;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::convolution::{newtonian_potential_radial, ConvolutionResult};
use crate::error::{Error, Result};
use crate::profile::{RadialProfile, TailSpec};
use crate::quadrature::{gk21_panel, integrate, QuadratureConfig, Tolerance};
use crate::special::{ln_upper_gamma_scaled, log_add_exp};

pub use cases::{
    choose_case_params, default_grid, default_lambda, rhs_upper_bound, verify_supersolution, CaseId,
    ExistenceCase, VerificationReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnsatzParams {
    pub n: u32,
    pub gamma: f64,
    pub tau: f64,
    #[serde(rename = "A")]
    pub a: f64,
}

pub const DEFAULT_A: f64 = 10.0;

impl AnsatzParams {
    pub fn new(n: u32, gamma: f64, tau: f64, a: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidDimension(n));
        }
        if !(gamma > 2.0 && gamma <= n as f64) {
            return Err(Error::InvalidInput(format!("gamma = {gamma} outside (2, {n}]")));
        }
        if !(tau > -1.0 && tau < 1.0) {
            return Err(Error::InvalidInput(format!("tau = {tau} outside (-1, 1)")));
        }
        if !(a > std::f64::consts::E) || !a.is_finite() {
            return Err(Error::InvalidInput(format!("A = {a} must exceed e")));
        }
        Ok(Self { n, gamma, tau, a })
    }

    pub fn full_decay(&self) -> bool {
        self.gamma == self.n as f64
    }

    pub fn w(&self, r: f64) -> f64 {
        (self.a + r * r).sqrt()
    }

    /// ln w at r = e^{ln_r}, stable for huge ln_r.
    pub fn ln_w_at(&self, ln_r: f64) -> f64 {
        ln_r + 0.5 * (self.a * (-2.0 * ln_r).exp()).ln_1p()
    }

    pub fn source(&self, r: f64) -> f64 {
        let w = self.w(r);
        let mut v = w.powf(-self.gamma);
        if self.tau != 0.0 {
            v *= w.ln().powf(self.tau);
        }
        v
    }

    fn ln_source_from_ln_w(&self, ln_w: f64) -> f64 {
        let mut v = -self.gamma * ln_w;
        if self.tau != 0.0 {
            v += self.tau * ln_w.ln();
        }
        v
    }

    /// Decay exponent and log exponent of u itself.
    pub fn u_tail(&self) -> (f64, f64) {
        if self.full_decay() {
            (self.gamma - 2.0, 1.0 + self.tau)
        } else {
            (self.gamma - 2.0, self.tau)
        }
    }
}

pub fn w_eval(params: &AnsatzParams, r: f64) -> f64 {
    params.w(r)
}

pub fn source_eval(params: &AnsatzParams, r: f64) -> f64 {
    params.source(r)
}

/// The source term as a profile for the Newtonian potential.
#[derive(Debug, Clone, Copy)]
pub struct SourceProfile(pub AnsatzParams);

impl RadialProfile for SourceProfile {
    fn value(&self, r: f64) -> f64 {
        self.0.source(r)
    }

    fn ln_value_at(&self, ln_r: f64) -> f64 {
        self.0.ln_source_from_ln_w(self.0.ln_w_at(ln_r))
    }

    fn ln_reduced(&self, ln_r: f64) -> f64 {
        let p = &self.0;
        let ln_w = p.ln_w_at(ln_r);
        let mut v = -p.gamma * (ln_w - ln_r);
        if p.tau != 0.0 {
            v += p.tau * ln_w.ln();
        }
        v
    }

    fn infinity_spec(&self) -> Option<TailSpec> {
        Some(TailSpec::new(-self.0.gamma, self.0.tau, self.0.a.sqrt()))
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.0.a.sqrt()]
    }
}

/// u(r) by direct quadrature of the Newtonian potential.
pub fn u_eval(params: &AnsatzParams, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    u_eval_full(params, r, cfg).map(|c| c.value)
}

pub fn u_eval_full(params: &AnsatzParams, r: f64, cfg: &QuadratureConfig) -> Result<ConvolutionResult> {
    newtonian_potential_radial(params.n, &SourceProfile(*params), r, cfg)
}

/// Δ²u − λΔu from the exact expression for −Δ of the source.
pub fn biharmonic_closed_form(params: &AnsatzParams, lambda: f64, r: f64) -> f64 {
    minus_laplacian_source(params, r) + lambda * params.source(r)
}

/// −Δ(w^{-γ} ln^τ w) = Δ²u.
pub fn minus_laplacian_source(params: &AnsatzParams, r: f64) -> f64 {
    let AnsatzParams { n, gamma: g, tau: t, a } = *params;
    let nf = n as f64;
    let w = params.w(r);
    let l = w.ln();
    let w2 = w.powf(-g - 2.0);
    let w4 = w.powf(-g - 4.0);
    let lt = l.powf(t);
    let mut v = g * (nf - g - 2.0) * w2 * lt + a * g * (g + 2.0) * w4 * lt;
    if t != 0.0 {
        let lt1 = lt / l;
        let lt2 = lt1 / l;
        v += t * (2.0 * g + 2.0 - nf) * w2 * lt1 - a * t * (2.0 * g + 2.0) * w4 * lt1
            + t * (1.0 - t) * (w * w - a) * w4 * lt2;
    }
    v
}

/// −B/v in terms of t = w²; its supremum fixes λ*.
fn lambda_ratio(params: &AnsatzParams, ln_t: f64) -> f64 {
    let t = ln_t.exp();
    let r = (t - params.a).max(0.0).sqrt();
    -minus_laplacian_source(params, r) / params.source(r)
}

/// Smallest λ with Δ²u − (λ/2)Δu ≥ 0 everywhere: 2 sup(−Δ²u / source),
/// or 0 when Δ²u is already nonnegative.
pub fn lambda_star(params: &AnsatzParams) -> f64 {
    let lo = params.a.ln();
    let hi = lo + 80.0;
    let m = 4000;
    let grid: Vec<f64> = (0..=m).map(|i| lo + (hi - lo) * i as f64 / m as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&x| lambda_ratio(params, x)).collect();
    let (imax, _) = vals
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    let a = grid[imax.saturating_sub(1)];
    let b = grid[(imax + 1).min(m)];
    let best = golden_max(|x| lambda_ratio(params, x), a, b).max(vals[imax]);
    2.0 * best.max(0.0)
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() < 1e-13 * (1.0 + a.abs()) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    f(a).max(f(b)).max(fc).max(fd)
}

/// min over the radii of Δ²u − (λ/2)Δu; nonnegative certifies λ ≥ λ*.
pub fn lambda_certificate(params: &AnsatzParams, lambda: f64, radii: &[f64]) -> f64 {
    radii
        .iter()
        .map(|&r| minus_laplacian_source(params, r) + 0.5 * lambda * params.source(r))
        .fold(f64::INFINITY, f64::min)
}

/// Shape of the known upper bound for u (constant dropped).
pub fn u_upper_bound(params: &AnsatzParams, r: f64) -> f64 {
    let w = params.w(r);
    let (dec, lp) = params.u_tail();
    w.powf(-dec) * w.ln().powf(lp)
}

const FINE_STEP: f64 = 0.02;
const COARSE_STEP: f64 = 0.25;
// ln r beyond which the far-field representation takes over
const X_FAR: f64 = 700.0;

/// Tabulated u on a logarithmic grid with exact slopes, plus an exact
/// far-field representation. Cheap to evaluate inside convolutions.
#[derive(Debug, Clone)]
pub struct AnsatzSolution {
    pub params: AnsatzParams,
    xs: Vec<f64>,
    ln_u: Vec<f64>,
    slope: Vec<f64>,
    ln_m_far: f64,
    u0: f64,
    f0: f64,
    r_lo: f64,
}

impl AnsatzSolution {
    pub fn build(params: AnsatzParams) -> Arc<Self> {
        let nf = params.n as f64;
        let x_lo = (1e-3 * params.a.sqrt()).ln();
        let x_mid = params.a.sqrt().ln() + 40.0;
        let mut xs = Vec::new();
        let mut x = x_lo;
        while x < x_mid {
            xs.push(x);
            x += FINE_STEP;
        }
        while x < X_FAR {
            xs.push(x);
            x += COARSE_STEP;
        }
        xs.push(X_FAR);
        let r_lo = x_lo.exp();
        let ln_f = |x: f64| params.ln_source_from_ln_w(params.ln_w_at(x));
        let (m_lo, _) = gk21_panel(|s| s.powi(params.n as i32 - 1) * params.source(s), 0.0, r_lo);
        let mut ln_m = Vec::with_capacity(xs.len());
        ln_m.push(m_lo.ln());
        for i in 1..xs.len() {
            let sc = nf * xs[i] + ln_f(xs[i]);
            let (d, _) = gk21_panel(|y| (nf * y + ln_f(y) - sc).exp(), xs[i - 1], xs[i]);
            ln_m.push(log_add_exp(ln_m[i - 1], sc + d.ln()));
        }
        let ln_n2 = (nf - 2.0).ln();
        let mut ln_u = Vec::with_capacity(xs.len());
        let mut slope = Vec::with_capacity(xs.len());
        for (i, &x) in xs.iter().enumerate() {
            let inner = (2.0 - nf) * x + ln_m[i];
            let lu = log_add_exp(inner, ln_tail_integral(&params, params.ln_w_at(x))) - ln_n2;
            ln_u.push(lu);
            slope.push(-(inner - lu).exp());
        }
        let u0 = ln_tail_integral(&params, 0.5 * params.a.ln()).exp() / (nf - 2.0);
        Arc::new(Self {
            params,
            ln_m_far: *ln_m.last().unwrap(),
            xs,
            ln_u,
            slope,
            u0,
            f0: params.source(0.0),
            r_lo,
        })
    }

    /// ln u at r = e^{ln_r}.
    pub fn ln_u_at(&self, ln_r: f64) -> f64 {
        if ln_r > X_FAR {
            return self.reduced(ln_r) - (self.params.gamma - 2.0) * ln_r;
        }
        if ln_r < self.xs[0] {
            return self.value(ln_r.exp()).ln();
        }
        let i = self.xs.partition_point(|&x| x <= ln_r).min(self.xs.len() - 1).max(1) - 1;
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let h = x1 - x0;
        let t = (ln_r - x0) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ln_u[i] + h10 * h * self.slope[i] + h01 * self.ln_u[i + 1] + h11 * h * self.slope[i + 1]
    }

    pub fn value(&self, r: f64) -> f64 {
        if r < self.r_lo {
            // −Δu = f near the origin
            let nf = self.params.n as f64;
            return self.u0 - self.f0 * r * r / (2.0 * nf);
        }
        self.ln_u_at(r.ln()).exp()
    }

    /// ln u + (γ − 2) ln r, accurate for arbitrarily large ln r.
    pub fn reduced(&self, ln_r: f64) -> f64 {
        let p = &self.params;
        let dec = p.gamma - 2.0;
        if ln_r <= X_FAR {
            return self.ln_u_at(ln_r) + dec * ln_r;
        }
        let nf = p.n as f64;
        let l = ln_r;
        // here w = r to double precision
        let t_part = -(1.0 + p.tau) * dec.ln() + ln_upper_gamma_scaled(1.0 + p.tau, dec * l);
        let c = nf - p.gamma;
        let m_part = if c == 0.0 {
            let extra = (l.powf(1.0 + p.tau) - X_FAR.powf(1.0 + p.tau)) / (1.0 + p.tau);
            log_add_exp(self.ln_m_far, extra.ln())
        } else {
            // M e^{-cL} = M(X) e^{-cL} + ∫_0^{L-X} e^{-ct} (L - t)^τ dt
            let span = (l - X_FAR).min(60.0 / c);
            let tail = integrate(
                |t| (-c * t).exp() * (1.0 - t / l).powf(p.tau),
                0.0,
                span,
                Tolerance::new(1e-12, 0.0, 200),
            )
            .map(|e| e.value)
            .unwrap_or(f64::NAN);
            log_add_exp(self.ln_m_far - c * l, p.tau * l.ln() + tail.ln())
        };
        log_add_exp(m_part, t_part) - (nf - 2.0).ln()
    }
}

/// ln ∫_{W}^∞ w^{1-γ} ln^τ w dw with ln_w = ln W.
fn ln_tail_integral(p: &AnsatzParams, ln_w: f64) -> f64 {
    let dec = p.gamma - 2.0;
    let z = dec * ln_w;
    -(1.0 + p.tau) * dec.ln() + ln_upper_gamma_scaled(1.0 + p.tau, z) - z
}

/// u^e as a profile, with declared tail σ = (γ − 2)e snapped to
/// `snap_sigma` when it agrees to rounding.
#[derive(Debug, Clone)]
pub struct SolutionPower {
    pub sol: Arc<AnsatzSolution>,
    pub exponent: f64,
    sigma: f64,
}

impl SolutionPower {
    pub fn new(sol: Arc<AnsatzSolution>, exponent: f64, snap_sigma: Option<f64>) -> Self {
        let mut sigma = (sol.params.gamma - 2.0) * exponent;
        if let Some(s) = snap_sigma {
            if (s - sigma).abs() <= 1e-12 * s.abs().max(1.0) {
                sigma = s;
            }
        }
        Self { sol, exponent, sigma }
    }
}

impl RadialProfile for SolutionPower {
    fn value(&self, r: f64) -> f64 {
        self.sol.value(r).powf(self.exponent)
    }

    fn ln_value_at(&self, ln_r: f64) -> f64 {
        self.exponent * self.sol.ln_u_at(ln_r)
    }

    fn ln_reduced(&self, ln_r: f64) -> f64 {
        self.exponent * self.sol.reduced(ln_r)
    }

    fn infinity_spec(&self) -> Option<TailSpec> {
        let (_, lp) = self.sol.params.u_tail();
        Some(TailSpec::new(-self.sigma, lp * self.exponent, self.sol.params.a.sqrt()))
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.sol.params.a.sqrt()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tight() -> QuadratureConfig {
        QuadratureConfig {
            rel_tol: 1e-13,
            abs_tol: 0.0,
            ..Default::default()
        }
    }

    #[test]
    fn w_and_source_values() {
        let p = AnsatzParams::new(3, 3.0, 0.0, 10.0).unwrap();
        assert_relative_eq!(w_eval(&p, 0.0), 10f64.sqrt());
        assert_relative_eq!(w_eval(&p, 6f64.sqrt()), 4.0, max_relative = 1e-15);
        assert_relative_eq!(source_eval(&p, 0.0), 10f64.powf(-1.5), max_relative = 1e-15);
        let q = AnsatzParams::new(5, 5.0, -0.5, 10.0).unwrap();
        let want = 10f64.powf(-2.5) * 10f64.sqrt().ln().powf(-0.5);
        assert_relative_eq!(source_eval(&q, 0.0), want, max_relative = 1e-14);
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(AnsatzParams::new(3, 2.0, 0.0, 10.0).is_err());
        assert!(AnsatzParams::new(3, 3.5, 0.0, 10.0).is_err());
        assert!(AnsatzParams::new(3, 3.0, 1.0, 10.0).is_err());
        assert!(AnsatzParams::new(3, 3.0, 0.0, 2.0).is_err());
    }

    #[test]
    fn closed_form_at_origin() {
        // γ = N, τ = 0, λ = 0, w² = A gives N² A^{-(N+2)/2}
        for n in [3u32, 5] {
            let p = AnsatzParams::new(n, n as f64, 0.0, 10.0).unwrap();
            let nf = n as f64;
            let want = nf * nf * 10f64.powf(-(nf + 2.0) / 2.0);
            assert_relative_eq!(biharmonic_closed_form(&p, 0.0, 0.0), want, max_relative = 1e-13);
        }
    }

    #[test]
    fn lambda_star_closed_form() {
        for &(n, a) in &[(3u32, 10.0), (5, 20.0)] {
            let p = AnsatzParams::new(n, n as f64, 0.0, a).unwrap();
            let nf = n as f64;
            let want = 2.0 * nf / (a * (nf + 2.0));
            assert_relative_eq!(lambda_star(&p), want, max_relative = 1e-9);
        }
    }

    #[test]
    fn table_matches_direct_potential() {
        for p in [
            AnsatzParams::new(3, 3.0, 0.0, 10.0).unwrap(),
            AnsatzParams::new(5, 4.2, -0.6, 12.0).unwrap(),
            AnsatzParams::new(5, 5.0, -0.75, 10.0).unwrap(),
        ] {
            let sol = AnsatzSolution::build(p);
            for r in [0.0, 1e-4, 0.7, 3.0, 40.0, 1e4, 1e9] {
                let direct = u_eval(&p, r, &tight()).unwrap();
                assert_relative_eq!(sol.value(r), direct, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn far_field_is_continuous() {
        for p in [
            AnsatzParams::new(3, 3.0, 0.4, 10.0).unwrap(),
            AnsatzParams::new(3, 2.93, 0.0, 10.0).unwrap(),
            AnsatzParams::new(5, 4.5, -0.5, 10.0).unwrap(),
        ] {
            let sol = AnsatzSolution::build(p);
            let below = sol.reduced(X_FAR - 1e-9);
            let above = sol.reduced(X_FAR + 1e-9);
            assert_relative_eq!(below, above, max_relative = 1e-9, epsilon = 1e-9);
        }
    }
}
