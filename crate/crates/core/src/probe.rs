//! Quantities behind the non-existence arguments: test-function bounds,
//! ball masses, and growth certificates that must blow up.

use serde::{Deserialize, Serialize};

use crate::bounds::fit_asymptotics;
use crate::classifier::{nonexistence_clauses, ProblemParams};
use crate::convolution::{convolve_radial, detect_divergence, sphere_area, DivergenceCheck};
use crate::error::{Error, Result};
use crate::kernel::KernelParams;
use crate::profile::{ClippedPower, RadialProfile};
use crate::quadrature::{integrate, integrate_segments, QuadratureConfig, Tolerance};

/// Coefficients of the C⁴ smoothstep 126t⁵ − 420t⁶ + 540t⁷ − 315t⁸ + 70t⁹,
/// lowest degree first.
pub const SMOOTHSTEP: [f64; 10] = [0.0, 0.0, 0.0, 0.0, 0.0, 126.0, -420.0, 540.0, -315.0, 70.0];

/// Radial bump: 1 on [0, 1], 1 − smoothstep(ρ − 1) on [1, 2], 0 beyond.
/// Returns the value and its first four derivatives.
pub fn bump(rho: f64) -> [f64; 5] {
    if rho <= 1.0 {
        return [1.0, 0.0, 0.0, 0.0, 0.0];
    }
    if rho >= 2.0 {
        return [0.0; 5];
    }
    let t = rho - 1.0;
    let mut coef = SMOOTHSTEP.to_vec();
    let mut out = [0.0; 5];
    for slot in out.iter_mut() {
        *slot = coef.iter().rev().fold(0.0, |acc, c| acc * t + c);
        coef = coef.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect();
    }
    out[0] = 1.0 - out[0];
    for d in out.iter_mut().skip(1) {
        *d = -*d;
    }
    out
}

/// Derivatives 0..=4 of g = f^m from those of f, valid where f > 0.
fn power_derivatives(f: [f64; 5], m: f64) -> [f64; 5] {
    let [f0, f1, f2, f3, f4] = f;
    let pw = |j: f64| f0.powf(m - j);
    let m1 = m * (m - 1.0);
    let m2 = m1 * (m - 2.0);
    let m3 = m2 * (m - 3.0);
    [
        pw(0.0),
        m * pw(1.0) * f1,
        m1 * pw(2.0) * f1 * f1 + m * pw(1.0) * f2,
        m2 * pw(3.0) * f1.powi(3) + 3.0 * m1 * pw(2.0) * f1 * f2 + m * pw(1.0) * f3,
        m3 * pw(4.0) * f1.powi(4)
            + 6.0 * m2 * pw(3.0) * f1 * f1 * f2
            + m1 * pw(2.0) * (3.0 * f2 * f2 + 4.0 * f1 * f3)
            + m * pw(1.0) * f4,
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestFunctionSpec {
    /// φ = ψ^k(x/R)
    pub k: u32,
    /// the test function is φ^δ
    pub delta: f64,
    #[serde(rename = "R")]
    pub radius: f64,
}

impl TestFunctionSpec {
    pub fn new(k: u32, delta: f64, radius: f64) -> Result<Self> {
        if k == 0 || !(delta > 1.0) || !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!(
                "need k >= 1, delta > 1, R > 0; got k = {k}, delta = {delta}, R = {radius}"
            )));
        }
        Ok(Self { k, delta, radius })
    }

    /// k > 4/(δ − 1), needed when the test function is a fractional power.
    pub fn meets_power_condition(&self) -> bool {
        self.k as f64 > 4.0 / (self.delta - 1.0)
    }

    pub fn phi(&self, r: f64) -> f64 {
        bump(r / self.radius)[0].powi(self.k as i32)
    }

    /// Radial derivatives 0..=4 of φ^δ at r, where ψ(r/R) > 0.
    fn test_derivatives(&self, r: f64) -> [f64; 5] {
        let mut d = bump(r / self.radius);
        let mut scale = 1.0;
        for v in d.iter_mut().skip(1) {
            scale /= self.radius;
            *v *= scale;
        }
        power_derivatives(d, self.k as f64 * self.delta)
    }
}

/// Δ²(φ^δ) − λΔ(φ^δ) at r > 0 from the analytic derivatives.
pub fn test_operator(spec: &TestFunctionSpec, n: u32, lambda: f64, r: f64) -> f64 {
    if r <= spec.radius {
        return 0.0;
    }
    let [_, d1, d2, d3, d4] = spec.test_derivatives(r);
    let m = n as f64 - 1.0;
    let k = m * (n as f64 - 3.0);
    let lap = d2 + m * d1 / r;
    let bilap = d4 + 2.0 * m * d3 / r + k * d2 / (r * r) - k * d1 / (r * r * r);
    bilap - lambda * lap
}

pub const PHI_FLOOR: f64 = 1e-6;

/// max over the grid of |Δ²(φ^δ) − λΔ(φ^δ)| R² / φ, restricted to φ ≥ 1e-6.
pub fn test_function_bound(spec: &TestFunctionSpec, n: u32, lambda: f64, grid: &[f64]) -> f64 {
    grid.iter()
        .filter(|&&r| r > 0.0 && spec.phi(r) >= PHI_FLOOR)
        .map(|&r| test_operator(spec, n, lambda, r).abs() * spec.radius.powi(2) / spec.phi(r))
        .fold(0.0, f64::max)
}

/// Uniform grid over (0, 2R) with the given number of points.
pub fn default_test_grid(radius: f64, points: usize) -> Vec<f64> {
    (1..=points).map(|i| 2.0 * radius * i as f64 / (points + 1) as f64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarnackMass {
    #[serde(rename = "R")]
    pub radius: f64,
    pub mass: f64,
    /// mass / R^N
    pub ratio: f64,
}

/// ∫ over the ball of radius R of u^p, for radial u.
pub fn harnack_mass(u: &dyn RadialProfile, n: u32, p: f64, radius: f64, cfg: &QuadratureConfig) -> Result<HarnackMass> {
    if !(radius > 0.0) {
        return Err(Error::NonpositiveRadius(radius));
    }
    let nf = n as f64;
    let mut pts: Vec<f64> = u.breakpoints().into_iter().filter(|&b| b > 0.0 && b < radius).collect();
    pts.sort_by(f64::total_cmp);
    let mut edges = vec![0.0];
    edges.extend(pts);
    edges.push(radius);
    let segs: Vec<(f64, f64)> = edges.windows(2).map(|w| (w[0], w[1])).collect();
    let est = integrate_segments(
        |_, s| {
            let v = u.value(s);
            if v == 0.0 {
                0.0
            } else {
                s.powf(nf - 1.0) * v.powf(p)
            }
        },
        &segs,
        Tolerance::from(cfg),
    )?;
    let mass = sphere_area(n) * est.value;
    Ok(HarnackMass {
        radius,
        mass,
        ratio: mass / radius.powf(nf),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub clause: String,
    pub theta: Option<f64>,
    /// exponent of R in the certificate quantity
    pub power: f64,
    /// exponent of ln R
    pub logpower: f64,
    pub values: Vec<(f64, f64)>,
    pub increasing: bool,
    /// last value over first
    pub growth_ratio: f64,
    /// the quantity has a positive leading exponent and so grows without bound
    pub unbounded: bool,
}

fn theta_in(theta: Option<f64>, lo: f64, hi: f64, what: &str) -> Result<f64> {
    if !(lo < hi) {
        return Err(Error::HypothesisViolated(format!("{what}: empty theta interval ({lo}, {hi})")));
    }
    match theta {
        None => Ok(0.5 * (lo + hi)),
        Some(t) if t > lo && t < hi => Ok(t),
        Some(t) => Err(Error::HypothesisViolated(format!(
            "{what}: theta = {t} outside ({lo}, {hi})"
        ))),
    }
}

/// Growth quantity of a non-existence clause, sampled at each R.
pub fn divergence_certificate(
    clause: Option<&str>,
    x: &ProblemParams,
    theta: Option<f64>,
    radii: &[f64],
) -> Result<Certificate> {
    x.validate()?;
    let fired = nonexistence_clauses(x);
    let clause = match clause {
        Some(c) => {
            if !fired.contains(&c) {
                return Err(Error::HypothesisViolated(format!(
                    "clause {c} does not hold; applicable: {fired:?}"
                )));
            }
            c
        }
        None => *fired
            .iter()
            .find(|c| **c != "Thm2(i)")
            .ok_or_else(|| Error::HypothesisViolated("no non-existence clause applies".into()))?,
    };
    if radii.iter().any(|&r| !(r > 1.0)) {
        return Err(Error::InvalidInput("certificate radii must exceed 1".into()));
    }
    let nf = x.n as f64;
    let (p, q, a, b) = (x.p, x.q, x.alpha, x.beta);
    let pq = p + q;
    // (R exponent, ln exponent, θ, use ln(1 + c R) with this c, or ln R when None)
    type Shape = (f64, f64, Option<f64>, Option<f64>);
    let shape: Shape = match clause {
        "Thm2(ii)" | "Thm2(iii)" => {
            if theta.is_some() {
                return Err(Error::HypothesisViolated(format!("{clause} takes no theta")));
            }
            return tail_mass_certificate(clause, x, radii);
        }
        "Thm2(iv)" => (2.0 * nf - a - (nf - 2.0) * pq, b, None, Some(4.0)),
        "Thm2(v)" => {
            let t = theta_in(theta, -b / (pq - 1.0), 1.0 + b, clause)?;
            (0.0, b + (pq - 1.0) * t, Some(t), None)
        }
        "Thm2(vi)" => (nf - a - (nf - 2.0) * q, b, None, Some(1.0)),
        "Thm2(vii)" => {
            let t = theta_in(theta, (-b / (q - 1.0)).max(0.0), 1.0 + b, clause)?;
            (0.0, b + (q - 1.0) * t, Some(t), None)
        }
        "Thm2(viii)" | "Thm2(ix)" => {
            let t = theta_in(theta, ((-1.0 - b) / (q - 1.0)).max(0.0), 2.0 + b, clause)?;
            (0.0, 1.0 + b + (q - 1.0) * t, Some(t), None)
        }
        other => {
            return Err(Error::HypothesisViolated(format!("{other} carries no growth quantity")));
        }
    };
    let (power, logpower, t, shift) = shape;
    if theta.is_some() && t.is_none() {
        return Err(Error::HypothesisViolated(format!("{clause} takes no theta")));
    }
    let values: Vec<(f64, f64)> = radii
        .iter()
        .map(|&r| {
            let l = match shift {
                Some(c) => (c * r).ln_1p(),
                None => r.ln(),
            };
            (r, r.powf(power) * l.powf(logpower))
        })
        .collect();
    Ok(finish(clause, t, power, logpower, values, power > 0.0 || (power == 0.0 && logpower > 0.0)))
}

fn finish(clause: &str, theta: Option<f64>, power: f64, logpower: f64, values: Vec<(f64, f64)>, unbounded: bool) -> Certificate {
    let increasing = values.windows(2).all(|w| w[1].1 > w[0].1);
    let growth_ratio = match (values.first(), values.last()) {
        (Some(f), Some(l)) => l.1 / f.1,
        _ => f64::NAN,
    };
    Certificate {
        clause: clause.to_string(),
        theta,
        power,
        logpower,
        values,
        increasing,
        growth_ratio,
        unbounded,
    }
}

/// ∫_1^R r^{N−1−α−p(N−2)} ln^β(1 + r) dr, the truncated mass that must stay
/// finite at the origin.
fn tail_mass_certificate(clause: &str, x: &ProblemParams, radii: &[f64]) -> Result<Certificate> {
    let nf = x.n as f64;
    let e = nf - x.alpha - x.p * (nf - 2.0);
    let b = x.beta;
    // in t = ln r the integrand is e^{e t} ln^β(1 + e^t)
    let f = |t: f64| (e * t).exp() * t.exp().ln_1p().powf(b);
    let mut total = 0.0;
    let mut last = 0.0;
    let mut values = Vec::with_capacity(radii.len());
    for &r in radii {
        let t = r.ln();
        if t > last {
            total += integrate(f, last, t, Tolerance::new(1e-12, 0.0, 500))?.value;
            last = t;
        }
        values.push((r, total));
    }
    let (power, logpower) = if e > 0.0 { (e, b) } else { (0.0, 1.0 + b) };
    let unbounded = e > 0.0 || b >= -1.0;
    Ok(finish(clause, None, power, logpower, values, unbounded))
}

/// Ratio of r^{2−N} ln^θ r to r^{2−N}: the gain of the bootstrapped lower bound.
pub fn bootstrap_ratio(theta: f64, radii: &[f64]) -> Vec<(f64, f64)> {
    radii.iter().map(|&r| (r, r.ln().powf(theta))).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    /// (N − α − p(N − 2), β)
    pub predicted: (f64, f64),
    /// the prediction is also an upper bound: p(N − 2) < N
    pub sharp: bool,
    pub divergent: bool,
    pub samples: Vec<(f64, f64)>,
    pub fitted: Option<(f64, f64)>,
}

/// K ∗ u₀^p for u₀ = max(1, r)^{2−N}, sampled on the grid.
pub fn lower_bound_chain(kernel: &KernelParams, p: f64, grid: &[f64], cfg: &QuadratureConfig) -> Result<ChainReport> {
    kernel.validate()?;
    if kernel.n < 3 {
        return Err(Error::InvalidDimension(kernel.n));
    }
    let nf = kernel.n as f64;
    let sigma = p * (nf - 2.0);
    let profile = ClippedPower { sigma };
    let predicted = (nf - kernel.alpha - sigma, kernel.beta);
    let sharp = sigma < nf;
    if let DivergenceCheck::Divergent(_) = detect_divergence(kernel, &profile)? {
        return Ok(ChainReport {
            predicted,
            sharp,
            divergent: true,
            samples: Vec::new(),
            fitted: None,
        });
    }
    let samples = sample_convolution(kernel, &profile, grid, cfg)?;
    let fitted = fit_asymptotics(&samples, 1.0).ok().map(|f| (f.power_est, f.logpower_est));
    Ok(ChainReport {
        predicted,
        sharp,
        divergent: false,
        samples,
        fitted,
    })
}

/// (r, (K ∗ f)(r)) over the grid, in parallel.
pub fn sample_convolution(
    kernel: &KernelParams,
    f: &dyn RadialProfile,
    grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<(f64, f64)>> {
    use rayon::prelude::*;
    grid.par_iter()
        .map(|&r| convolve_radial(kernel, f, r, cfg).map(|c| (r, c.value)))
        .collect()
}
