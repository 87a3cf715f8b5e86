//! Predicted growth and decay of K ∗ f from the tail of f, and numerical
//! corroboration through fitted exponents.

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convolution::convolve_radial;
use crate::error::{Error, Result};
use crate::kernel::{AsymptoticSpec, KernelParams};
use crate::profile::RadialProfile;
use crate::quadrature::QuadratureConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundKind {
    LowerBound,
    UpperBound,
    Divergent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictedBound {
    pub kind: BoundKind,
    pub case_id: String,
    /// Shape (A + r)^power ln(A + r)^logpower; absent for Divergent.
    pub spec: Option<AsymptoticSpec>,
    pub scale: f64,
    /// Extra factor ln ln(e + r).
    pub extra_loglog: bool,
}

impl PredictedBound {
    pub(crate) fn new(kind: BoundKind, case_id: &str, power: f64, logpower: f64, scale: f64) -> Self {
        Self {
            kind,
            case_id: case_id.to_string(),
            spec: Some(AsymptoticSpec::new(power, logpower)),
            scale,
            extra_loglog: false,
        }
    }

    fn divergent(case_id: &str) -> Self {
        Self {
            kind: BoundKind::Divergent,
            case_id: case_id.to_string(),
            spec: None,
            scale: 1.0,
            extra_loglog: false,
        }
    }

    fn with_loglog(mut self) -> Self {
        self.extra_loglog = true;
        if let Some(s) = self.spec.as_mut() {
            s.loglog = 1.0;
        }
        self
    }

    /// Value of the predicted shape at r, without constant.
    pub fn shape(&self, r: f64) -> Option<f64> {
        let s = self.spec?;
        let x = self.scale + r;
        let mut v = x.powf(s.power);
        if s.logpower != 0.0 {
            v *= x.ln().powf(s.logpower);
        }
        if self.extra_loglog {
            v *= (std::f64::consts::E + r).ln().ln();
        }
        Some(v)
    }
}

fn has_mass_near_origin(f: &dyn RadialProfile) -> bool {
    [0.0, 0.1, 0.25, 0.45].iter().any(|&r| f.value(r) > 0.0)
}

/// Every lower bound that applies to f; the divergence verdict if any.
pub fn lower_bound_candidates(kernel: &KernelParams, f: &dyn RadialProfile) -> Result<Vec<PredictedBound>> {
    kernel.validate()?;
    let n = kernel.n as f64;
    let (alpha, beta) = (kernel.alpha, kernel.beta);
    let mut out = Vec::new();
    if !has_mass_near_origin(f) {
        return Err(Error::InvalidInput(
            "lower bounds need positive mass near the origin".into(),
        ));
    }
    out.push(PredictedBound::new(BoundKind::LowerBound, "lower-baseline", -alpha, beta, 1.0));
    if f.support_radius().is_some() {
        return Ok(out);
    }
    let tail = f.infinity_spec().ok_or(Error::MissingAsymptoticSpec)?;
    let (sigma, kappa) = (tail.sigma(), tail.kappa());
    let heavy = sigma < n || (sigma == n && kappa >= 0.0);
    if heavy && beta <= 0.0 {
        out.push(PredictedBound::new(
            BoundKind::LowerBound,
            "lower-log-gain",
            -alpha,
            1.0 + beta,
            1.0,
        ));
    }
    let excess = n - alpha - sigma;
    if excess > 0.0 || (excess == 0.0 && 1.0 + beta + kappa >= 0.0) {
        out.push(PredictedBound::divergent("lower-divergent"));
    } else if excess < 0.0 {
        out.push(PredictedBound::new(
            BoundKind::LowerBound,
            "lower-tail",
            excess,
            beta + kappa,
            tail.scale,
        ));
    } else {
        out.push(PredictedBound::new(
            BoundKind::LowerBound,
            "lower-critical-tail",
            0.0,
            1.0 + beta + kappa,
            tail.scale,
        ));
    }
    Ok(out)
}

/// The strongest applicable lower bound, i.e. the largest asymptotic shape.
pub fn lower_bound_prediction(kernel: &KernelParams, f: &dyn RadialProfile) -> Result<PredictedBound> {
    let all = lower_bound_candidates(kernel, f)?;
    if let Some(d) = all.iter().find(|b| b.kind == BoundKind::Divergent) {
        return Ok(d.clone());
    }
    let key = |b: &PredictedBound| {
        let s = b.spec.unwrap();
        (s.power, s.logpower)
    };
    Ok(all
        .into_iter()
        .max_by(|a, b| key(a).partial_cmp(&key(b)).unwrap())
        .unwrap())
}

/// Upper bound for f ≤ c (A + r)^{-σ} ln(A + r)^κ.
pub fn upper_bound_for_tail(kernel: &KernelParams, sigma: f64, kappa: f64, scale: f64) -> Result<PredictedBound> {
    kernel.validate()?;
    let n = kernel.n as f64;
    let (alpha, beta) = (kernel.alpha, kernel.beta);
    let up = |id: &str, p: f64, l: f64| PredictedBound::new(BoundKind::UpperBound, id, p, l, scale);
    if sigma < n - alpha {
        return Err(Error::OutOfHypothesis(format!(
            "tail decay {sigma} below N - alpha = {}",
            n - alpha
        )));
    }
    if alpha < n {
        if sigma == n - alpha {
            if 1.0 + beta + kappa < 0.0 {
                return Ok(up("upper-critical", 0.0, 1.0 + beta + kappa));
            }
            return Err(Error::OutOfHypothesis(
                "critical tail with 1 + beta + kappa >= 0 is not covered".into(),
            ));
        }
        if sigma < n {
            return Ok(up("upper-intermediate", n - alpha - sigma, beta + kappa));
        }
        if sigma > n || kappa < -1.0 {
            return Ok(up("upper-fast", -alpha, beta));
        }
        if kappa > -1.0 {
            return Ok(up("upper-borderline-log", -alpha, 1.0 + beta + kappa));
        }
        Ok(up("upper-borderline-loglog", -alpha, beta).with_loglog())
    } else {
        if sigma < n {
            return Ok(up("upper-full-slow", -sigma, 1.0 + beta + kappa));
        }
        if sigma > n || kappa < -1.0 {
            return Ok(up("upper-full-fast", -n, beta));
        }
        if kappa > -1.0 {
            return Ok(up("upper-full-borderline-log", -n, 1.0 + beta + kappa));
        }
        Ok(up("upper-full-loglog", -n, beta).with_loglog())
    }
}

/// Upper bound from the declared tail of f.
pub fn upper_bound_prediction(kernel: &KernelParams, f: &dyn RadialProfile) -> Result<PredictedBound> {
    if f.support_radius().is_some() {
        // compact support decays faster than any power
        let n = kernel.n as f64;
        return upper_bound_for_tail(kernel, n + 1.0, 0.0, 1.0);
    }
    let tail = f.infinity_spec().ok_or(Error::MissingAsymptoticSpec)?;
    upper_bound_for_tail(kernel, tail.sigma(), tail.kappa(), tail.scale)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub power_est: f64,
    pub logpower_est: f64,
    pub residual: f64,
}

/// Least squares of ln v on {1, ln(A + r), ln ln(A + r)}.
pub fn fit_asymptotics(samples: &[(f64, f64)], scale: f64) -> Result<FitResult> {
    if samples.len() < 6 {
        return Err(Error::DegenerateSamples(format!(
            "need at least 6 samples, got {}",
            samples.len()
        )));
    }
    let rmin = samples.iter().map(|s| s.0).fold(f64::INFINITY, f64::min);
    let rmax = samples.iter().map(|s| s.0).fold(0.0, f64::max);
    if !(rmin > 0.0) || rmax / rmin < 1e3 * (1.0 - 1e-9) {
        return Err(Error::DegenerateSamples("radii must span three decades".into()));
    }
    if scale + rmin <= 1.0 {
        return Err(Error::DegenerateSamples("need A + r > 1 for the log basis".into()));
    }
    if samples.iter().any(|s| !(s.1 > 0.0) || !s.1.is_finite()) {
        return Err(Error::DegenerateSamples("values must be positive".into()));
    }
    let m = samples.len();
    let mut a = DMatrix::<f64>::zeros(m, 3);
    let mut y = DVector::<f64>::zeros(m);
    for (i, &(r, v)) in samples.iter().enumerate() {
        let l = (scale + r).ln();
        a[(i, 0)] = 1.0;
        a[(i, 1)] = l;
        a[(i, 2)] = l.ln();
        y[i] = v.ln();
    }
    let svd = a.clone().svd(true, true);
    let coef = svd
        .solve(&y, 1e-14)
        .map_err(|e| Error::DegenerateSamples(e.to_string()))?;
    let fitted = &a * &coef;
    let residual = (0..m)
        .map(|i| ((fitted[i] - y[i]).exp() - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(FitResult {
        power_est: coef[1],
        logpower_est: coef[2],
        residual,
    })
}

pub fn log_spaced(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictedShape {
    pub power: f64,
    pub logpower: f64,
    pub loglog: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCheckReport {
    pub case_id: String,
    pub predicted: PredictedShape,
    pub fitted: FitResult,
    /// max/min of value over predicted shape across the window
    pub margin: f64,
    pub pass: bool,
    pub samples: Vec<(f64, f64)>,
}

pub const CHECK_POINTS: usize = 8;
pub const SPREAD_LIMIT: f64 = 10.0;

/// Samples K ∗ f on a log grid of the window and compares with the bound.
pub fn check_bound(
    kernel: &KernelParams,
    f: &dyn RadialProfile,
    bound: &PredictedBound,
    window: (f64, f64),
    cfg: &QuadratureConfig,
) -> Result<BoundCheckReport> {
    if bound.kind == BoundKind::Divergent || bound.spec.is_none() {
        return Err(Error::OutOfHypothesis("cannot check a divergent bound".into()));
    }
    let radii = log_spaced(window.0, window.1, CHECK_POINTS);
    let values: Result<Vec<f64>> = radii
        .par_iter()
        .map(|&r| convolve_radial(kernel, f, r, cfg).map(|c| c.value))
        .collect();
    let values = values?;
    let samples: Vec<(f64, f64)> = radii.iter().copied().zip(values.iter().copied()).collect();
    let ratios: Vec<f64> = samples
        .iter()
        .map(|&(r, v)| v / bound.shape(r).unwrap())
        .collect();
    let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let margin = hi / lo;
    let fitted = fit_asymptotics(&samples, bound.scale)?;
    let spec = bound.spec.unwrap();
    let mut pass = lo > 0.0 && margin < SPREAD_LIMIT;
    if bound.extra_loglog {
        pass &= fitted.logpower_est >= kernel.beta - 1e-9 && fitted.logpower_est <= kernel.beta + 0.3;
    }
    Ok(BoundCheckReport {
        case_id: bound.case_id.clone(),
        predicted: PredictedShape {
            power: spec.power,
            logpower: spec.logpower,
            loglog: spec.loglog,
        },
        fitted,
        margin,
        pass,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{Ball, ClippedPower, PowerTail};
    use approx::assert_abs_diff_eq;

    fn k(n: u32, a: f64, b: f64) -> KernelParams {
        KernelParams::new(n, a, b).unwrap()
    }

    #[test]
    fn lower_candidates_include_tail_bound() {
        let c = lower_bound_candidates(&k(3, 1.0, 0.0), &PowerTail::new(4.0, 0.0, 1.0)).unwrap();
        let tail = c.iter().find(|b| b.case_id == "lower-tail").unwrap();
        assert_eq!(tail.spec.unwrap(), AsymptoticSpec::new(-2.0, 0.0));
        // the baseline dominates when the tail is thinner than r^{-N}
        let best = lower_bound_prediction(&k(3, 1.0, 0.0), &PowerTail::new(4.0, 0.0, 1.0)).unwrap();
        assert_eq!(best.spec.unwrap(), AsymptoticSpec::new(-1.0, 0.0));
    }

    #[test]
    fn lower_critical_and_log_gain() {
        let b = lower_bound_prediction(&k(3, 1.0, 0.0), &PowerTail::new(2.0, -2.5, 2.0)).unwrap();
        assert_eq!(b.spec.unwrap(), AsymptoticSpec::new(0.0, -1.5));
        let b = lower_bound_prediction(&k(3, 1.0, -0.5), &ClippedPower { sigma: 3.0 }).unwrap();
        assert_eq!(b.spec.unwrap(), AsymptoticSpec::new(-1.0, 0.5));
    }

    #[test]
    fn upper_examples() {
        let b = upper_bound_for_tail(&k(3, 1.0, 0.0), 4.0, 0.0, 10.0).unwrap();
        assert_eq!(b.spec.unwrap(), AsymptoticSpec::new(-1.0, 0.0));
        let b = upper_bound_for_tail(&k(3, 1.0, 0.0), 2.5, 0.0, 10.0).unwrap();
        assert_eq!(b.spec.unwrap(), AsymptoticSpec::new(-0.5, 0.0));
        let b = upper_bound_for_tail(&k(3, 3.0, 1.0), 2.0, 0.0, 10.0).unwrap();
        assert_eq!(b.spec.unwrap(), AsymptoticSpec::new(-2.0, 2.0));
        assert!(upper_bound_for_tail(&k(3, 1.0, 0.0), 3.0, -1.0, 10.0).unwrap().extra_loglog);
        assert!(matches!(
            upper_bound_for_tail(&k(3, 1.0, 0.0), 2.0, 0.0, 10.0),
            Err(Error::OutOfHypothesis(_))
        ));
    }

    #[test]
    fn exact_models_fit_exactly() {
        let rs = log_spaced(1e2, 1e6, 9);
        let s: Vec<_> = rs.iter().map(|&r| (r, r.powi(-2))).collect();
        let f = fit_asymptotics(&s, 0.0).unwrap();
        assert_abs_diff_eq!(f.power_est, -2.0, epsilon = 1e-6);
        assert_abs_diff_eq!(f.logpower_est, 0.0, epsilon = 1e-4);
        let s: Vec<_> = rs.iter().map(|&r| (r, r.ln().sqrt() / r)).collect();
        let f = fit_asymptotics(&s, 0.0).unwrap();
        assert_abs_diff_eq!(f.power_est, -1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(f.logpower_est, 0.5, epsilon = 1e-4);
    }

    #[test]
    fn fit_rejects_narrow_windows() {
        let s: Vec<_> = log_spaced(1.0, 50.0, 8).iter().map(|&r| (r, 1.0 / r)).collect();
        assert!(matches!(fit_asymptotics(&s, 1.0), Err(Error::DegenerateSamples(_))));
        assert!(matches!(fit_asymptotics(&s[..4], 1.0), Err(Error::DegenerateSamples(_))));
    }

    #[test]
    fn ball_baseline_check_passes() {
        let kern = k(3, 1.0, 0.0);
        let ball = Ball { radius: 1.0 };
        let b = lower_bound_prediction(&kern, &ball).unwrap();
        let rep = check_bound(&kern, &ball, &b, (1e1, 1e5), &QuadratureConfig::default()).unwrap();
        assert!(rep.pass);
        assert!(rep.margin < 1.1);
    }

    #[test]
    fn divergent_bound_is_rejected() {
        let kern = k(3, 1.0, 0.0);
        let f = PowerTail::new(1.0, 0.0, 1.0);
        let b = lower_bound_prediction(&kern, &f).unwrap();
        assert_eq!(b.kind, BoundKind::Divergent);
        assert!(matches!(
            check_bound(&kern, &f, &b, (1e1, 1e5), &QuadratureConfig::default()),
            Err(Error::OutOfHypothesis(_))
        ));
    }
}
