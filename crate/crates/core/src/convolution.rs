//! Radial reduction of K ∗ f for radial f in R^N.
//!
//! (K∗f)(r) = |S^{N-2}| ∫_0^∞ f(s) s^{N-1} A(r,s) ds, where the angular
//! factor A averages K over the sphere of radius s seen from distance r.

use rayon::prelude::*;
use statrs::function::beta::ln_beta;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::KernelParams;
use crate::profile::RadialProfile;
use crate::quadrature::{gauss_jacobi_left, integrate_segments, QuadratureConfig, Tolerance};

const BLOWUP: f64 = 1e12;
// beyond this ln(s/r) the sphere average equals K(s) to double precision
const FAR_FIELD_LN: f64 = 40.0;
const ANGULAR_REL: f64 = 1e-12;
// N − 1 + β − α at or below this gets the logarithmic treatment around s = r
const STRONG_CENTER: f64 = -0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvolutionResult {
    pub r: f64,
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DivergenceCheck {
    Convergent,
    Divergent(String),
}

/// Γ(k/2) by the half-integer recursion.
pub fn gamma_half(k: u32) -> f64 {
    assert!(k >= 1);
    let mut g = if k.is_multiple_of(2) { 1.0 } else { std::f64::consts::PI.sqrt() };
    let mut x = if k.is_multiple_of(2) { 1.0 } else { 0.5 };
    let target = k as f64 / 2.0;
    while x < target - 0.25 {
        g *= x;
        x += 1.0;
    }
    g
}

/// Surface measure of the unit sphere S^{n-1} in R^n.
pub fn sphere_area(n: u32) -> f64 {
    assert!(n >= 1);
    2.0 * std::f64::consts::PI.powf(n as f64 / 2.0) / gamma_half(n)
}

/// ∫_0^π sin^{N-2}θ dθ.
pub fn sine_power_mass(n: u32) -> f64 {
    assert!(n >= 2);
    std::f64::consts::PI.sqrt() * gamma_half(n - 1) / gamma_half(n)
}

fn kernel_limit_at_zero(k: &KernelParams) -> f64 {
    let e = k.exponent_at_zero();
    if e > 0.0 {
        0.0
    } else if e == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

fn angular_tolerance() -> Tolerance {
    Tolerance::new(ANGULAR_REL, 1e-300, 600)
}

/// Angular factor without validation; returns the best available estimate.
pub(crate) fn angular_unchecked(k: &KernelParams, r: f64, s: f64) -> f64 {
    angular_with_offset(k, r, s, (r - s).abs())
}

// `delta` is |r − s|, passed separately so callers that know it exactly
// avoid the cancellation in r − s when s is very close to r
fn angular_with_offset(k: &KernelParams, r: f64, s: f64, delta: f64) -> f64 {
    let n = k.n;
    if n == 1 {
        let near = if delta == 0.0 {
            kernel_limit_at_zero(k)
        } else {
            k.value(delta)
        };
        return near + k.value(r + s);
    }
    if r == 0.0 || s == 0.0 {
        let d = r.max(s);
        let kd = if d == 0.0 { kernel_limit_at_zero(k) } else { k.value(d) };
        return sine_power_mass(n) * kd;
    }
    let pow = (n - 2) as i32;
    let sq = (r * s).sqrt();
    let pi = std::f64::consts::PI;
    let g = |theta: f64| {
        let chord = 2.0 * sq * (0.5 * theta).sin();
        let d = delta.hypot(chord);
        k.value(d) * theta.sin().powi(pow)
    };
    let theta_delta = delta / sq;
    let mut head = 0.0;
    let mut start;
    if delta == 0.0 {
        let c = (n as f64) - 2.0 + k.exponent_at_zero();
        if c <= -1.0 {
            return f64::INFINITY;
        }
        start = (0.5 / sq).min(0.5 * pi);
        // strip the algebraic factor θ^c; the rest is analytic on [0, start]
        let smooth = |theta: f64| g(theta) / theta.powf(c);
        head = gauss_jacobi_left(smooth, c, start, 24);
    } else {
        start = theta_delta.min(0.5 * pi);
    }
    let mut segs = Vec::new();
    if delta != 0.0 {
        segs.push((0.0, start));
    }
    while start < pi {
        let next = (start * 4.0).min(pi);
        segs.push((start, next));
        start = next;
    }
    match integrate_segments(|_, t| g(t), &segs, angular_tolerance()) {
        Ok(e) => head + e.value,
        Err(Error::QuadratureFailure { value, .. }) => head + value,
        Err(_) => f64::NAN,
    }
}

/// ∫_0^π K(|x - y|) sin^{N-2}θ dθ for |x| = r, |y| = s; in one dimension
/// K(|r - s|) + K(r + s).
pub fn angular_factor(kernel: &KernelParams, r: f64, s: f64) -> Result<f64> {
    kernel.validate()?;
    for v in [r, s] {
        if !(v >= 0.0) || !v.is_finite() {
            return Err(Error::NonpositiveRadius(v));
        }
    }
    let a = angular_unchecked(kernel, r, s);
    if a.is_nan() {
        return Err(Error::QuadratureFailure {
            value: a,
            error: f64::NAN,
            subdivisions: 0,
        });
    }
    Ok(a)
}

/// Symbolic integrability of K ∗ f from the declared asymptotics of f.
pub fn detect_divergence(kernel: &KernelParams, profile: &dyn RadialProfile) -> Result<DivergenceCheck> {
    kernel.validate()?;
    let n = kernel.n as f64;
    let z = profile.zero_spec().power;
    if z + n <= 0.0 {
        return Ok(DivergenceCheck::Divergent(format!(
            "profile singularity r^{z} not locally integrable in dimension {n}"
        )));
    }
    if z + n + kernel.exponent_at_zero() <= 0.0 {
        return Ok(DivergenceCheck::Divergent(
            "kernel and profile singularities collide at the origin".into(),
        ));
    }
    if profile.support_radius().is_some() {
        return Ok(DivergenceCheck::Convergent);
    }
    let tail = profile.infinity_spec().ok_or(Error::MissingAsymptoticSpec)?;
    let sigma = tail.sigma();
    let kappa = tail.kappa();
    let excess = n - kernel.alpha - sigma;
    if excess > 0.0 {
        return Ok(DivergenceCheck::Divergent(format!(
            "tail decay {sigma} below N - alpha = {}",
            n - kernel.alpha
        )));
    }
    if excess == 0.0 && 1.0 + kernel.beta + kappa >= 0.0 {
        return Ok(DivergenceCheck::Divergent(format!(
            "critical tail with log exponent 1 + beta + kappa = {} >= 0",
            1.0 + kernel.beta + kappa
        )));
    }
    Ok(DivergenceCheck::Convergent)
}

fn grading_exponent(e: f64) -> f64 {
    // integrand ~ x^e at the graded end
    if e >= 0.0 && e.fract() == 0.0 {
        1.0
    } else if e < 0.0 {
        (2.0 / (e + 1.0)).ceil().clamp(2.0, 40.0)
    } else {
        2.0
    }
}

/// Change of variables for one stretch of the radial line.
#[derive(Debug, Clone, Copy)]
enum Piece {
    Plain,
    Log,
    // s = a u^m, u in [0, 1], b = a
    FromZero { end: f64, m: f64 },
    // s = c - h u^m
    IntoCenter { c: f64, h: f64, m: f64 },
    // s = c + h u^m
    OutOfCenter { c: f64, h: f64, m: f64 },
    // s = c + side h e^{-t}
    CenterLog { c: f64, h: f64, side: f64 },
    // ln s = ln s_t + e^y - 1
    Tail { ln_start: f64 },
    // as Tail with y = y0 + x / (1 - x)
    TailCompact { ln_start: f64, y0: f64 },
}

/// Segments (piece, a, b) covering [0, end) plus, optionally, [end, ∞).
/// With `center_floor` set, the pieces next to r stop at that distance
/// from r and are integrated in ln|s − r|.
fn layout(
    points: &[f64],
    r: f64,
    zero_m: f64,
    center_m: f64,
    center_floor: Option<f64>,
    tail: bool,
) -> Vec<(Piece, f64, f64)> {
    let mut out = Vec::new();
    for w in points.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !(b > a) {
            continue;
        }
        let near = r > 0.0 && (b == r || a == r);
        if let Some(floor) = center_floor.filter(|f| near && b - a > 10.0 * f) {
            let side = if b == r { -1.0 } else { 1.0 };
            out.push((Piece::CenterLog { c: r, h: b - a, side }, 0.0, ((b - a) / floor).ln()));
        } else if a == 0.0 && zero_m > 1.0 {
            out.push((Piece::FromZero { end: b, m: zero_m }, 0.0, 1.0));
        } else if r > 0.0 && b == r {
            out.push((Piece::IntoCenter { c: r, h: r - a, m: center_m }, 0.0, 1.0));
        } else if r > 0.0 && a == r {
            out.push((Piece::OutOfCenter { c: r, h: b - a, m: center_m }, 0.0, 1.0));
        } else if a > 0.0 && b / a > 8.0 {
            out.push((Piece::Log, a.ln(), b.ln()));
        } else {
            out.push((Piece::Plain, a, b));
        }
    }
    if tail {
        let ln_start = points.last().copied().unwrap_or(1.0).ln();
        let mut y = 0.0;
        for y1 in [1.0, 2.0, 4.0, 8.0, 16.0] {
            out.push((Piece::Tail { ln_start }, y, y1));
            y = y1;
        }
        out.push((Piece::TailCompact { ln_start, y0: y }, 0.0, 1.0));
    }
    out
}

/// Integrand on one piece, from density(s, |s − r|) for moderate s and
/// ln_density(ln s) = ln(density(s) s) for the far tail.
fn piece_integrand(
    piece: Piece,
    x: f64,
    density: &dyn Fn(f64, Option<f64>) -> f64,
    ln_density: &dyn Fn(f64) -> f64,
) -> f64 {
    match piece {
        Piece::Plain => density(x, None),
        Piece::Log => {
            let s = x.exp();
            density(s, None) * s
        }
        Piece::FromZero { end, m } => {
            if x == 0.0 {
                return 0.0;
            }
            let s = end * x.powf(m);
            density(s, None) * end * m * x.powf(m - 1.0)
        }
        Piece::IntoCenter { c, h, m } => {
            let d = h * x.powf(m);
            let j = h * m * x.powf(m - 1.0);
            if j == 0.0 || d == 0.0 {
                return 0.0;
            }
            density(c - d, Some(d)) * j
        }
        Piece::OutOfCenter { c, h, m } => {
            let d = h * x.powf(m);
            let j = h * m * x.powf(m - 1.0);
            if j == 0.0 || d == 0.0 {
                return 0.0;
            }
            density(c + d, Some(d)) * j
        }
        Piece::CenterLog { c, h, side } => {
            let d = h * (-x).exp();
            density(c + side * d, Some(d)) * d
        }
        Piece::Tail { ln_start } => tail_value(ln_start, x, 1.0, density, ln_density),
        Piece::TailCompact { ln_start, y0 } => {
            if x >= 1.0 {
                return 0.0;
            }
            let om = 1.0 - x;
            let y = y0 + x / om;
            tail_value(ln_start, y, 1.0 / (om * om), density, ln_density)
        }
    }
}

fn tail_value(
    ln_start: f64,
    y: f64,
    jac: f64,
    density: &dyn Fn(f64, Option<f64>) -> f64,
    ln_density: &dyn Fn(f64) -> f64,
) -> f64 {
    let ey = y.exp();
    if !ey.is_finite() {
        return 0.0;
    }
    let ln_s = ln_start + (ey - 1.0);
    // ds = s e^y dy
    let v = if ln_s < 50.0 {
        let s = ln_s.exp();
        density(s, None) * s * ey
    } else {
        (ln_density(ln_s) + y).exp()
    };
    if v.is_nan() {
        0.0
    } else {
        v * jac
    }
}

fn sorted_points(mut pts: Vec<f64>, end: f64) -> Vec<f64> {
    pts.push(0.0);
    pts.push(end);
    pts.retain(|p| p.is_finite() && *p >= 0.0 && *p <= end);
    pts.sort_by(|a, b| a.total_cmp(b));
    pts.dedup_by(|a, b| (*a - *b).abs() <= 1e-15 * b.abs().max(1e-300));
    pts
}

fn scale_of(profile: &dyn RadialProfile, r: f64) -> f64 {
    let mut m = r.max(1.0);
    if let Some(t) = profile.infinity_spec() {
        m = m.max(t.scale);
    }
    if let Some(s) = profile.support_radius() {
        m = m.max(s);
    }
    for b in profile.breakpoints() {
        m = m.max(b);
    }
    m
}

/// (K ∗ f)(r) for radial f.
pub fn convolve_radial(
    kernel: &KernelParams,
    profile: &dyn RadialProfile,
    r: f64,
    cfg: &QuadratureConfig,
) -> Result<ConvolutionResult> {
    kernel.validate()?;
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::NonpositiveRadius(r));
    }
    if let DivergenceCheck::Divergent(why) = detect_divergence(kernel, profile)? {
        return Err(Error::DivergentIntegral(why));
    }
    let n = kernel.n;
    let nf = n as f64;
    let outer = if n == 1 { 1.0 } else { sphere_area(n - 1) };
    let ln_outer = outer.ln();
    let support = profile.support_radius();
    let end = support.unwrap_or(cfg.truncation_factor * scale_of(profile, r));
    let mut pts = profile.breakpoints();
    if r > 0.0 {
        pts.extend([0.5 * r, r, 2.0 * r]);
    }
    if let Some(t) = profile.infinity_spec() {
        pts.push(t.scale);
    }
    let pts = sorted_points(pts, end);

    let mut e0 = profile.zero_spec().power + nf - 1.0;
    if r == 0.0 {
        e0 += kernel.exponent_at_zero();
    }
    let zero_m = grading_exponent(e0);
    let mu = nf - 1.0 + kernel.exponent_at_zero();
    let center_m = if mu < 0.0 { grading_exponent(mu) } else { 2.0 };
    // near-critical singularity at s = r: stop short of r, add the rest from
    // the leading term, and keep d^{β−α} clear of overflow
    let center_floor = (r > 0.0 && mu <= STRONG_CENTER)
        .then(|| r * 10f64.powf(-(200.0 / (1.0 - kernel.exponent_at_zero())).min(30.0)));
    let segs = layout(&pts, r, zero_m, center_m, center_floor, support.is_none());

    let density = |s: f64, delta: Option<f64>| {
        let fv = profile.value(s);
        if fv == 0.0 || s == 0.0 && nf > 1.0 {
            return 0.0;
        }
        let delta = delta.unwrap_or((r - s).abs());
        outer * fv * s.powi(n as i32 - 1) * angular_with_offset(kernel, r, s, delta)
    };
    let ln_r = if r > 0.0 { r.ln() } else { f64::NEG_INFINITY };
    let sigma = profile.infinity_spec().map_or(0.0, |t| t.sigma());
    let far_mass = if n == 1 { 2.0f64 } else { sine_power_mass(n) }.ln();
    // ln(density(s) s); in the far field the powers of s are collected
    // into one coefficient so nothing of size ln s has to cancel
    let ln_density = |ln_s: f64| {
        if ln_s - ln_r > FAR_FIELD_LN {
            let mut v = (nf - sigma - kernel.alpha) * ln_s + ln_outer + far_mass + profile.ln_reduced(ln_s);
            if kernel.beta != 0.0 {
                v += kernel.beta * ln_s.ln();
            }
            v
        } else {
            let s = ln_s.exp();
            ln_outer + profile.ln_value_at(ln_s) + nf * ln_s + angular_unchecked(kernel, r, s).ln()
        }
    };
    let bounds: Vec<(f64, f64)> = segs.iter().map(|&(_, a, b)| (a, b)).collect();
    let mut tol = Tolerance::from(cfg);
    tol.blowup = BLOWUP;
    let est = integrate_segments(
        |i, x| piece_integrand(segs[i].0, x, &density, &ln_density),
        &bounds,
        tol,
    )?;
    let mut sliver = 0.0;
    if let Some(floor) = center_floor {
        // ∫_0^floor of outer f(r ± d) · lead · d^μ dd
        let lead = if n == 1 {
            1.0
        } else {
            0.5 * ln_beta(0.5 * (nf - 1.0), -0.5 * mu).exp()
        };
        let w = outer * lead * floor.powf(mu + 1.0) / (mu + 1.0);
        for &(piece, _, _) in &segs {
            if let Piece::CenterLog { c, side, .. } = piece {
                sliver += w * profile.value(c + side * floor);
            }
        }
    }
    Ok(ConvolutionResult {
        r,
        value: est.value + sliver,
        error_estimate: est.error,
        evaluations: est.evaluations,
    })
}

/// Parallel evaluation over many radii.
pub fn convolve_radial_many(
    kernel: &KernelParams,
    profile: &dyn RadialProfile,
    radii: &[f64],
    cfg: &QuadratureConfig,
) -> Vec<Result<ConvolutionResult>> {
    radii
        .par_iter()
        .map(|&r| convolve_radial(kernel, profile, r, cfg))
        .collect()
}

/// (1/(N-2)) [ r^{2-N} ∫_0^r s^{N-1} f + ∫_r^∞ s f ], the Newtonian
/// potential of a radial density.
pub fn newtonian_potential_radial(
    n: u32,
    profile: &dyn RadialProfile,
    r: f64,
    cfg: &QuadratureConfig,
) -> Result<ConvolutionResult> {
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::NonpositiveRadius(r));
    }
    let nf = n as f64;
    let z = profile.zero_spec().power;
    if z + 2.0 <= 0.0 {
        return Err(Error::DivergentIntegral("profile too singular at the origin".into()));
    }
    let support = profile.support_radius();
    if support.is_none() {
        let tail = profile.infinity_spec().ok_or(Error::MissingAsymptoticSpec)?;
        let (sigma, kappa) = (tail.sigma(), tail.kappa());
        if sigma < 2.0 || (sigma == 2.0 && kappa >= -1.0) {
            return Err(Error::DivergentIntegral(format!(
                "tail r^-{sigma} too slow for the Newtonian potential"
            )));
        }
    }
    let end = support.unwrap_or(cfg.truncation_factor * scale_of(profile, r));
    let mut pts = profile.breakpoints();
    if let Some(t) = profile.infinity_spec() {
        pts.push(t.scale);
    }
    pts.push(r);
    let pts = sorted_points(pts, end.max(r));
    let inner_w = if r > 0.0 { r.powf(2.0 - nf) } else { 0.0 };
    let zero_m = grading_exponent(z + 1.0);
    let segs = layout(&pts, 0.0, zero_m, 1.0, None, support.is_none());
    let density = |s: f64, _: Option<f64>| {
        let fv = profile.value(s);
        if fv == 0.0 {
            return 0.0;
        }
        if s < r {
            inner_w * s.powi(n as i32 - 1) * fv
        } else {
            s * fv
        }
    };
    let sigma = profile.infinity_spec().map_or(0.0, |t| t.sigma());
    let ln_density = |ln_s: f64| (2.0 - sigma) * ln_s + profile.ln_reduced(ln_s);
    let bounds: Vec<(f64, f64)> = segs.iter().map(|&(_, a, b)| (a, b)).collect();
    let mut tol = Tolerance::from(cfg);
    tol.blowup = BLOWUP;
    let est = integrate_segments(
        |i, x| piece_integrand(segs[i].0, x, &density, &ln_density),
        &bounds,
        tol,
    )?;
    let c = 1.0 / (nf - 2.0);
    Ok(ConvolutionResult {
        r,
        value: est.value * c,
        error_estimate: est.error * c,
        evaluations: est.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{Ball, PowerTail};
    use approx::assert_relative_eq;

    #[test]
    fn sphere_areas() {
        let pi = std::f64::consts::PI;
        assert_relative_eq!(sphere_area(1), 2.0);
        assert_relative_eq!(sphere_area(2), 2.0 * pi, max_relative = 1e-15);
        assert_relative_eq!(sphere_area(3), 4.0 * pi, max_relative = 1e-15);
        assert_relative_eq!(sphere_area(4), 2.0 * pi * pi, max_relative = 1e-15);
        assert_relative_eq!(sphere_area(5), 8.0 * pi * pi / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn sphere_area_recursion_matches_volume_identity() {
        // |S^{n+1}| = 2π |S^{n-1}| / n
        for n in 1..12 {
            let lhs = sphere_area(n + 2);
            let rhs = 2.0 * std::f64::consts::PI * sphere_area(n) / n as f64;
            assert_relative_eq!(lhs, rhs, max_relative = 1e-14);
        }
    }

    fn newton3_angular(k: &KernelParams, r: f64, s: f64) -> f64 {
        // N = 3 closed form: (1/(rs)) ∫_{|r-s|}^{r+s} K(t) t dt
        let est = crate::quadrature::integrate(
            |t| k.value(t) * t,
            (r - s).abs(),
            r + s,
            Tolerance::new(1e-13, 0.0, 500),
        )
        .unwrap();
        est.value / (r * s)
    }

    #[test]
    fn angular_factor_three_dimensional_closed_form() {
        for &(a, b) in &[(1.0, 0.0), (0.5, 1.0), (2.5, -0.3), (0.0, 0.0)] {
            let k = KernelParams::new(3, a, b).unwrap();
            for &(r, s) in &[(1.0, 2.0), (3.0, 0.1), (1.0, 1.0 + 1e-9), (5.0, 5.0)] {
                if r == s && 2.0 + b - a <= 0.0 {
                    assert!(angular_factor(&k, r, s).unwrap().is_infinite());
                    continue;
                }
                let got = angular_factor(&k, r, s).unwrap();
                let want = newton3_angular(&k, r, s);
                assert_relative_eq!(got, want, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn one_dimensional_angular_factor() {
        let k = KernelParams::new(1, 0.5, 0.0).unwrap();
        let got = angular_factor(&k, 2.0, 1.0).unwrap();
        assert_relative_eq!(got, 1.0 + 3f64.powf(-0.5), max_relative = 1e-14);
    }

    #[test]
    fn ball_newtonian_potential() {
        let k = KernelParams::new(3, 1.0, 0.0).unwrap();
        let cfg = QuadratureConfig::default();
        let ball = Ball { radius: 1.0 };
        for r in [0.0, 0.5, 1.0, 2.0, 10.0] {
            let v = convolve_radial(&k, &ball, r, &cfg).unwrap().value;
            let pi = std::f64::consts::PI;
            let want = if r >= 1.0 {
                4.0 * pi / 3.0 / r
            } else {
                2.0 * pi * (1.0 - r * r / 3.0)
            };
            assert_relative_eq!(v, want, max_relative = 1e-8);
        }
    }

    #[test]
    fn divergence_is_flagged() {
        let k = KernelParams::new(3, 1.0, 0.0).unwrap();
        let slow = PowerTail::new(2.0, -0.5, 3.0);
        assert!(matches!(
            detect_divergence(&k, &slow).unwrap(),
            DivergenceCheck::Divergent(_)
        ));
        let ok = PowerTail::new(2.0, -1.5, 3.0);
        assert_eq!(detect_divergence(&k, &ok).unwrap(), DivergenceCheck::Convergent);
        assert!(matches!(
            convolve_radial(&k, &slow, 1.0, &QuadratureConfig::default()),
            Err(Error::DivergentIntegral(_))
        ));
    }

    #[test]
    fn log_critical_tail_reaches_far_radii() {
        // ∫ 2 (A+s)^{-1} ln^κ(A+s) ds = -2 ln^{κ+1}(A) / (κ+1), most of it at astronomically large s
        let k = KernelParams::new(1, 0.0, 0.0).unwrap();
        let (kappa, a) = (-1.25, 10.0);
        let f = PowerTail::new(1.0, kappa, a);
        let want = -2.0 * f64::ln(a).powf(kappa + 1.0) / (kappa + 1.0);
        for r in [0.0, 5.0, 1e4] {
            let got = convolve_radial(&k, &f, r, &QuadratureConfig::default()).unwrap().value;
            assert_relative_eq!(got, want, max_relative = 1e-7);
        }
    }

    #[test]
    fn newtonian_fast_path_matches_convolution() {
        let k = KernelParams::new(3, 1.0, 0.0).unwrap();
        let f = PowerTail::new(4.0, 0.0, 2.0);
        let cfg = QuadratureConfig::default();
        for r in [0.0, 0.3, 3.0, 300.0] {
            let full = convolve_radial(&k, &f, r, &cfg).unwrap().value;
            let fast = newtonian_potential_radial(3, &f, r, &cfg).unwrap().value;
            assert_relative_eq!(full / (4.0 * std::f64::consts::PI), fast, max_relative = 1e-8);
        }
    }
}
