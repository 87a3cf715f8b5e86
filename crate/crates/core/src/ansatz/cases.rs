//! Existence constructions: choice of (γ, τ) per case, the predicted decay
//! of (K ∗ u^p) u^q, and grid verification of the supersolution inequality.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{biharmonic_closed_form, lambda_star, AnsatzParams, AnsatzSolution, SolutionPower, DEFAULT_A};
use crate::bounds::{log_spaced, BoundKind, PredictedBound};
use crate::convolution::convolve_radial;
use crate::error::{Error, Result};
use crate::kernel::KernelParams;
use crate::quadrature::QuadratureConfig;

pub const EQ_TOL: f64 = 1e-12;

fn eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= EQ_TOL
}

fn gt(a: f64, b: f64) -> bool {
    a > b + EQ_TOL
}

fn lt(a: f64, b: f64) -> bool {
    a < b - EQ_TOL
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseId {
    #[serde(rename = "1a")]
    C1a,
    #[serde(rename = "1b")]
    C1b,
    #[serde(rename = "2")]
    C2,
    #[serde(rename = "3")]
    C3,
    #[serde(rename = "4")]
    C4,
    #[serde(rename = "5")]
    C5,
    #[serde(rename = "6")]
    C6,
    #[serde(rename = "T4-1")]
    T41,
    #[serde(rename = "T4-2")]
    T42,
}

impl CaseId {
    pub const ALL: [CaseId; 9] = [
        CaseId::C1a,
        CaseId::C1b,
        CaseId::C2,
        CaseId::C3,
        CaseId::C4,
        CaseId::C5,
        CaseId::C6,
        CaseId::T41,
        CaseId::T42,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseId::C1a => "1a",
            CaseId::C1b => "1b",
            CaseId::C2 => "2",
            CaseId::C3 => "3",
            CaseId::C4 => "4",
            CaseId::C5 => "5",
            CaseId::C6 => "6",
            CaseId::T41 => "T4-1",
            CaseId::T42 => "T4-2",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown case '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExistenceCase {
    pub case_id: CaseId,
    pub params: AnsatzParams,
    pub constraint_notes: String,
}

/// Midpoint of the open interval (lo, hi), or an error when it is empty.
fn midpoint(lo: f64, hi: f64, what: &str) -> Result<f64> {
    if !(hi - lo > EQ_TOL) {
        return Err(Error::EmptyParameterInterval(format!("{what}: ({lo}, {hi})")));
    }
    Ok(0.5 * (lo + hi))
}

/// τ in (−1, 1) with τ·slope > offset, as the midpoint of the allowed range.
fn tau_from(slope: f64, offset: f64, what: &str) -> Result<f64> {
    let (mut lo, mut hi) = (-1.0f64, 1.0f64);
    if slope.abs() <= EQ_TOL {
        if offset >= 0.0 {
            return Err(Error::EmptyParameterInterval(format!("{what}: 0 > {offset} fails")));
        }
    } else if slope > 0.0 {
        lo = lo.max(offset / slope);
    } else {
        hi = hi.min(offset / slope);
    }
    midpoint(lo, hi, what)
}

fn violated(case: CaseId, why: impl Into<String>) -> Error {
    Error::HypothesisViolated(format!("case {case}: {}", why.into()))
}

/// Concrete (γ, τ) for a construction case, after checking its hypotheses.
pub fn choose_case_params(case: CaseId, n: u32, alpha: f64, beta: f64, p: f64, q: f64) -> Result<ExistenceCase> {
    KernelParams::new(n, alpha, beta)?;
    if n < 3 {
        return Err(Error::InvalidDimension(n));
    }
    if !(p > 0.0 && q > 0.0) {
        return Err(Error::InvalidInput(format!("p = {p}, q = {q} must be positive")));
    }
    let nf = n as f64;
    let sub = (nf - alpha) / (nf - 2.0);
    let crit = nf / (nf - 2.0);
    let sum = (2.0 * nf - alpha) / (nf - 2.0);
    let need = |ok: bool, why: &str| if ok { Ok(()) } else { Err(violated(case, why)) };
    let full_kernel = eq(alpha, nf);
    match case {
        CaseId::C1a | CaseId::C1b | CaseId::C2 | CaseId::C3 | CaseId::C4 | CaseId::C5 | CaseId::C6 => {
            need(!full_kernel, "requires alpha < N")?
        }
        CaseId::T41 | CaseId::T42 => {
            need(full_kernel, "requires alpha = N")?;
            need(beta > 0.0, "requires beta > 0")?;
        }
    }
    let (gamma, tau, notes) = match case {
        CaseId::C1a => {
            need(gt(p, sub) && gt(q, sub), "requires p, q > (N-alpha)/(N-2)")?;
            need(gt(p + q, sum), "requires p + q > (2N-alpha)/(N-2)")?;
            need(!gt(p, crit), "requires p <= N/(N-2)")?;
            let lo = (2.0 + (nf - alpha) / p).max(2.0 + (2.0 * nf - alpha) / (p + q));
            let hi = nf.min(2.0 + nf / p);
            let g = midpoint(lo, hi, "gamma")?;
            (g, 0.0, "N > (gamma-2)p > N-alpha and (gamma-2)(p+q) > 2N-alpha, gamma < N".to_string())
        }
        CaseId::C1b => {
            need(gt(q, sub), "requires q > (N-alpha)/(N-2)")?;
            need(gt(p, crit), "requires p > N/(N-2)")?;
            (nf, 0.0, "gamma = N, tau = 0".to_string())
        }
        CaseId::C2 => {
            need(eq(p, sub), "requires p = (N-alpha)/(N-2)")?;
            need(gt(q, crit), "requires q > N/(N-2)")?;
            need(beta < -1.0, "requires beta < -1")?;
            // β + (1+τ)p < −1  ⇔  −τp > β + p + 1
            let t = tau_from(-p, beta + p + 1.0, "tau")?;
            (nf, t, "gamma = N, beta + (1+tau)p < -1".to_string())
        }
        CaseId::C3 => {
            need(gt(p, crit), "requires p > N/(N-2)")?;
            need(eq(q, sub), "requires q = (N-alpha)/(N-2)")?;
            need(beta < -1.0, "requires beta < -1")?;
            let t = tau_from(1.0 - q, beta + q, "tau")?;
            (nf, t, "gamma = N, tau > beta + (1+tau)q".to_string())
        }
        CaseId::C4 => {
            need(gt(p, sub) && gt(q, sub), "requires p, q > (N-alpha)/(N-2)")?;
            need(eq(p + q, sum), "requires p + q = (2N-alpha)/(N-2)")?;
            need(beta < -1.0, "requires beta < -1")?;
            let t = tau_from(1.0 - p - q, beta + p + q, "tau")?;
            (nf, t, "gamma = N, tau > beta + (1+tau)(p+q)".to_string())
        }
        CaseId::C5 | CaseId::C6 => {
            let (pp, qq) = if case == CaseId::C5 { (sub, crit) } else { (crit, sub) };
            need(eq(p, pp) && eq(q, qq), "exponents off the required corner")?;
            need(beta < -2.0, "requires beta < -2")?;
            let t = tau_from(1.0 - p - q, 1.0 + beta + p + q, "tau")?;
            (nf, t, "gamma = N, tau > 1 + beta + (1+tau)(p+q)".to_string())
        }
        CaseId::T41 => {
            need(!lt(p, 1.0) && !gt(p, crit), "requires 1 <= p <= N/(N-2)")?;
            need(gt(p + q, crit), "requires p + q > N/(N-2)")?;
            let lo = 2.0 + nf / (p + q);
            let hi = nf.min(2.0 + nf / p);
            let g = midpoint(lo, hi, "gamma")?;
            (g, 0.0, "(gamma-2)p < N and (gamma-2)(p+q) > N > gamma".to_string())
        }
        CaseId::T42 => {
            need(gt(p, crit), "requires p > N/(N-2)")?;
            (nf, 0.0, "gamma = N, tau = 0".to_string())
        }
    };
    let params = AnsatzParams::new(n, gamma, tau, DEFAULT_A)
        .map_err(|e| Error::EmptyParameterInterval(format!("case {case}: {e}")))?;
    Ok(ExistenceCase {
        case_id: case,
        params,
        constraint_notes: notes,
    })
}

/// Predicted shape of (K ∗ u^p) u^q in powers of w and ln w.
pub fn rhs_upper_bound(params: &AnsatzParams, kernel: &KernelParams, p: f64, q: f64) -> Result<PredictedBound> {
    kernel.validate()?;
    if kernel.n != params.n {
        return Err(Error::InvalidInput("kernel and ansatz dimensions differ".into()));
    }
    let nf = params.n as f64;
    let (alpha, beta) = (kernel.alpha, kernel.beta);
    let (g, t) = (params.gamma, params.tau);
    let dec = g - 2.0;
    let scale = params.a.sqrt();
    let up = |id: &str, pw: f64, lp: f64| Ok(PredictedBound::new(BoundKind::UpperBound, id, pw, lp, scale));
    let out = |why: &str| Err(Error::OutOfHypothesis(why.to_string()));
    let full = params.full_decay();
    if eq(alpha, nf) {
        if t != 0.0 || beta <= 0.0 {
            return out("the full-strength kernel needs tau = 0 and beta > 0");
        }
        if !full && lt(p, nf / dec) {
            return up("kernel-full/gamma-below-N", -dec * (p + q), 1.0 + beta);
        }
        if full && gt(p, nf / dec) {
            return up("kernel-full/gamma-at-N", -nf - dec * q, beta + q);
        }
        return out("exponent p outside both full-kernel cases");
    }
    // log exponent carried by u itself
    let ul = if full { 1.0 + t } else { t };
    let tag = if full { "gamma-at-N" } else { "gamma-below-N" };
    let low = (nf - alpha) / dec;
    let high = nf / dec;
    if lt(p, low) {
        return out("K * u^p diverges: (gamma-2)p < N - alpha");
    }
    if eq(p, low) {
        if !(beta + ul * p < -1.0) {
            return out("critical p with nonintegrable logarithm");
        }
        return up(&format!("{tag}/critical"), -dec * q, 1.0 + beta + ul * (p + q));
    }
    if lt(p, high) {
        return up(&format!("{tag}/intermediate"), nf - alpha - dec * (p + q), beta + ul * (p + q));
    }
    if eq(p, high) {
        if !full && !(t * p > -1.0) {
            return out("borderline p with tau p <= -1 is not covered");
        }
        return up(&format!("{tag}/borderline"), -alpha - dec * q, 1.0 + beta + ul * (p + q));
    }
    up(&format!("{tag}/fast"), -alpha - dec * q, beta + ul * q)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case_id: CaseId,
    pub params: AnsatzParams,
    pub lambda: f64,
    pub lambda_star: f64,
    #[serde(rename = "S")]
    pub s: f64,
    /// S over the grid extended to twice the outer radius.
    pub s_extended: f64,
    #[serde(rename = "C")]
    pub c: Option<f64>,
    /// min over the grid of (Δ²u − λΔu) / ((λ/2) source) − 1
    pub min_margin: f64,
    /// (r, Δ²u − λΔu, (K ∗ u^p) u^q)
    pub margin_profile: Vec<(f64, f64, f64)>,
    pub pass: bool,
}

pub const GRID_MIN: f64 = 1e-2;
pub const GRID_MAX: f64 = 1e6;
pub const GRID_POINTS: usize = 60;
const STABILITY: f64 = 0.1;

/// {0} together with 60 log-spaced radii in [1e-2, 1e6].
pub fn default_grid() -> Vec<f64> {
    let mut g = vec![0.0];
    g.extend(log_spaced(GRID_MIN, GRID_MAX, GRID_POINTS));
    g
}

/// λ used when the caller gives none.
pub fn default_lambda(params: &AnsatzParams) -> f64 {
    let ls = lambda_star(params);
    if ls > 0.0 {
        2.0 * ls
    } else {
        1.0
    }
}

/// Samples Δ²u − λΔu and (K ∗ u^p) u^q on the grid and reports the worst ratio.
pub fn verify_supersolution(
    case: &ExistenceCase,
    kernel: &KernelParams,
    p: f64,
    q: f64,
    lambda: f64,
    grid: &[f64],
    cfg: &QuadratureConfig,
) -> Result<VerificationReport> {
    kernel.validate()?;
    if !(lambda > 0.0) {
        return Err(Error::InvalidInput(format!("lambda = {lambda} must be positive")));
    }
    if grid.is_empty() || grid.iter().any(|&r| !(r >= 0.0) || !r.is_finite()) {
        return Err(Error::InvalidInput("grid radii must be finite and nonnegative".into()));
    }
    let params = case.params;
    let sol = AnsatzSolution::build(params);
    let nf = params.n as f64;
    let snap = Some(nf - kernel.alpha);
    let up = SolutionPower::new(sol.clone(), p, snap);
    let outer = grid.iter().copied().fold(0.0, f64::max);
    let mut all: Vec<f64> = grid.to_vec();
    let ext: Vec<f64> = [1.25, 1.5, 1.75, 2.0].iter().map(|f| f * outer).collect();
    all.extend(&ext);
    let rows: Result<Vec<(f64, f64, f64)>> = all
        .par_iter()
        .map(|&r| {
            let conv = convolve_radial(kernel, &up, r, cfg)?.value;
            let rhs = conv * sol.value(r).powf(q);
            Ok((r, biharmonic_closed_form(&params, lambda, r), rhs))
        })
        .collect();
    let rows = rows?;
    let ratio = |row: &(f64, f64, f64)| row.2 / row.1;
    let base = &rows[..grid.len()];
    let s = base.iter().map(ratio).fold(f64::NEG_INFINITY, f64::max);
    let s_extended = rows.iter().map(ratio).fold(f64::NEG_INFINITY, f64::max);
    let min_margin = rows
        .iter()
        .map(|&(r, l, _)| l / (0.5 * lambda * params.source(r)) - 1.0)
        .fold(f64::INFINITY, f64::min);
    let lhs_positive = rows.iter().all(|row| row.1 > 0.0);
    let stable = s.is_finite() && s > 0.0 && (s_extended - s).abs() <= STABILITY * s;
    let c = if eq(p + q, 1.0) {
        if s > 1.0 {
            return Err(Error::ScalingUndefined(format!("p + q = 1 with S = {s} > 1")));
        }
        Some(1.0)
    } else if s.is_finite() && s > 0.0 {
        Some(s.powf(-1.0 / (p + q - 1.0)))
    } else {
        None
    };
    Ok(VerificationReport {
        case_id: case.case_id,
        params,
        lambda,
        lambda_star: lambda_star(&params),
        s,
        s_extended,
        c,
        min_margin,
        margin_profile: rows,
        pass: stable && lhs_positive && min_margin >= -1e-9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn case_two_tau_midpoint() {
        let c = choose_case_params(CaseId::C2, 5, 2.0, -1.5, 1.0, 2.0).unwrap();
        assert_eq!(c.params.gamma, 5.0);
        assert_relative_eq!(c.params.tau, -0.75, max_relative = 1e-12);
    }

    #[test]
    fn case_1a_gamma_satisfies_constraints() {
        let (n, alpha, p, q) = (5u32, 1.0, 1.5, 2.0);
        let c = choose_case_params(CaseId::C1a, n, alpha, 1.0, p, q).unwrap();
        let g = c.params.gamma;
        let nf = n as f64;
        assert!(g < nf);
        assert!((g - 2.0) * p > nf - alpha && (g - 2.0) * p < nf);
        assert!((g - 2.0) * (p + q) > 2.0 * nf - alpha);
    }

    #[test]
    fn hypotheses_are_enforced() {
        assert!(matches!(
            choose_case_params(CaseId::C1a, 5, 1.0, 0.0, 1.4, 1.4),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(matches!(
            choose_case_params(CaseId::T42, 3, 1.0, 1.0, 4.0, 1.0),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(matches!(
            choose_case_params(CaseId::C5, 5, 1.0, -1.5, 4.0 / 3.0, 5.0 / 3.0),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn case_ids_round_trip() {
        for c in CaseId::ALL {
            assert_eq!(c.as_str().parse::<CaseId>().unwrap(), c);
            let js = serde_json::to_string(&c).unwrap();
            assert_eq!(js, format!("\"{}\"", c.as_str()));
        }
    }

    #[test]
    fn rhs_table_examples() {
        let k = KernelParams::new(5, 1.0, 1.0).unwrap();
        let a = AnsatzParams::new(5, 4.8, 0.0, 10.0).unwrap();
        let b = rhs_upper_bound(&a, &k, 1.5, 2.0).unwrap();
        let s = b.spec.unwrap();
        assert_relative_eq!(s.power, -5.8, max_relative = 1e-12);
        assert_relative_eq!(s.logpower, 1.0);

        let a = AnsatzParams::new(5, 5.0, 0.3, 10.0).unwrap();
        let s = rhs_upper_bound(&a, &k, 2.0, 1.5).unwrap().spec.unwrap();
        assert_relative_eq!(s.power, -1.0 - 3.0 * 1.5);
        assert_relative_eq!(s.logpower, 1.0 + 1.3 * 1.5);

        let k = KernelParams::new(3, 3.0, 1.0).unwrap();
        let a = AnsatzParams::new(3, 3.0, 0.0, 10.0).unwrap();
        let s = rhs_upper_bound(&a, &k, 4.0, 1.0).unwrap().spec.unwrap();
        assert_relative_eq!(s.power, -4.0);
        assert_relative_eq!(s.logpower, 2.0);
    }

    #[test]
    fn rhs_uncovered_subcase() {
        let k = KernelParams::new(5, 1.0, 0.0).unwrap();
        let a = AnsatzParams::new(5, 4.5, -0.9, 10.0).unwrap();
        // p = N/(γ−2) = 2 with τp = −1.8
        assert!(matches!(rhs_upper_bound(&a, &k, 2.0, 1.0), Err(Error::OutOfHypothesis(_))));
    }

    #[test]
    fn zero_lambda_is_rejected() {
        let c = choose_case_params(CaseId::T42, 3, 3.0, 1.0, 4.0, 1.0).unwrap();
        let k = KernelParams::new(3, 3.0, 1.0).unwrap();
        let r = verify_supersolution(&c, &k, 4.0, 1.0, 0.0, &[1.0], &QuadratureConfig::default());
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }
}
