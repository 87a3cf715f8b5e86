//! Radial source profiles f(|x|) fed to the convolution.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::kernel::AsymptoticSpec;

/// Tail law (A + r)^power · ln(A + r)^logpower.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailSpec {
    pub spec: AsymptoticSpec,
    pub scale: f64,
}

impl TailSpec {
    pub fn new(power: f64, logpower: f64, scale: f64) -> Self {
        Self {
            spec: AsymptoticSpec::new(power, logpower),
            scale,
        }
    }

    /// Decay exponent σ in r^{-σ}.
    pub fn sigma(&self) -> f64 {
        -self.spec.power
    }

    pub fn kappa(&self) -> f64 {
        self.spec.logpower
    }
}

pub trait RadialProfile: Send + Sync {
    fn value(&self, r: f64) -> f64;

    /// ln f(e^{ln_r}); overridden where e^{ln_r} overflows.
    fn ln_value_at(&self, ln_r: f64) -> f64 {
        self.value(ln_r.exp()).ln()
    }

    /// ln f + σ ln r at r = e^{ln_r}, σ being the declared tail decay:
    /// the part of ln f growing slower than ln r.
    fn ln_reduced(&self, ln_r: f64) -> f64 {
        let sigma = self.infinity_spec().map_or(0.0, |t| t.sigma());
        self.ln_value_at(ln_r) + sigma * ln_r
    }

    /// Power of r as r → 0 (0 for profiles bounded near the origin).
    fn zero_spec(&self) -> AsymptoticSpec {
        AsymptoticSpec::new(0.0, 0.0)
    }

    /// None means the tail is unknown; fine only with compact support.
    fn infinity_spec(&self) -> Option<TailSpec>;

    fn support_radius(&self) -> Option<f64> {
        None
    }

    /// Radii where the profile has a kink or jump.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// Indicator of the ball of given radius.
#[derive(Debug, Clone, Copy)]
pub struct Ball {
    pub radius: f64,
}

impl RadialProfile for Ball {
    fn value(&self, r: f64) -> f64 {
        if r <= self.radius {
            1.0
        } else {
            0.0
        }
    }

    fn infinity_spec(&self) -> Option<TailSpec> {
        None
    }

    fn support_radius(&self) -> Option<f64> {
        Some(self.radius)
    }
}

/// (A + r)^{-σ} · ln(A + r)^κ with A > 1 when κ ≠ 0.
#[derive(Debug, Clone, Copy)]
pub struct PowerTail {
    pub sigma: f64,
    pub kappa: f64,
    pub scale: f64,
}

impl PowerTail {
    pub fn new(sigma: f64, kappa: f64, scale: f64) -> Self {
        assert!(scale > 0.0 && (kappa == 0.0 || scale > 1.0), "need A > 1 for log factors");
        Self { sigma, kappa, scale }
    }
}

impl RadialProfile for PowerTail {
    fn value(&self, r: f64) -> f64 {
        let x = self.scale + r;
        let mut v = x.powf(-self.sigma);
        if self.kappa != 0.0 {
            v *= x.ln().powf(self.kappa);
        }
        v
    }

    fn ln_value_at(&self, ln_r: f64) -> f64 {
        let ln_x = if ln_r < 36.0 {
            (self.scale + ln_r.exp()).ln()
        } else {
            ln_r
        };
        let mut v = -self.sigma * ln_x;
        if self.kappa != 0.0 {
            v += self.kappa * ln_x.ln();
        }
        v
    }

    fn ln_reduced(&self, ln_r: f64) -> f64 {
        // ln(A + r) - ln r = ln(1 + A/r)
        let gap = (self.scale * (-ln_r).exp()).ln_1p();
        let mut v = -self.sigma * gap;
        if self.kappa != 0.0 {
            v += self.kappa * (ln_r + gap).ln();
        }
        v
    }

    fn infinity_spec(&self) -> Option<TailSpec> {
        Some(TailSpec::new(-self.sigma, self.kappa, self.scale))
    }
}

/// max(1, r)^{-σ}: flat core, pure power tail.
#[derive(Debug, Clone, Copy)]
pub struct ClippedPower {
    pub sigma: f64,
}

impl RadialProfile for ClippedPower {
    fn value(&self, r: f64) -> f64 {
        if r <= 1.0 {
            1.0
        } else {
            r.powf(-self.sigma)
        }
    }

    fn ln_value_at(&self, ln_r: f64) -> f64 {
        -self.sigma * ln_r.max(0.0)
    }

    fn ln_reduced(&self, ln_r: f64) -> f64 {
        self.sigma * ln_r.min(0.0)
    }

    fn infinity_spec(&self) -> Option<TailSpec> {
        Some(TailSpec::new(-self.sigma, 0.0, 1.0))
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![1.0]
    }
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Closure-backed profile with caller-declared asymptotics.
#[derive(Clone)]
pub struct FnProfile {
    f: ScalarFn,
    ln_f: Option<ScalarFn>,
    ln_red: Option<ScalarFn>,
    zero: AsymptoticSpec,
    tail: Option<TailSpec>,
    support: Option<f64>,
    breaks: Vec<f64>,
}

impl FnProfile {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static, tail: Option<TailSpec>) -> Self {
        Self {
            f: Arc::new(f),
            ln_f: None,
            ln_red: None,
            zero: AsymptoticSpec::new(0.0, 0.0),
            tail,
            support: None,
            breaks: Vec::new(),
        }
    }

    pub fn with_ln(mut self, ln_f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.ln_f = Some(Arc::new(ln_f));
        self
    }

    /// Supplies ln f + σ ln r directly, for tails reaching huge radii.
    pub fn with_reduced(mut self, g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.ln_red = Some(Arc::new(g));
        self
    }

    pub fn with_zero_spec(mut self, zero: AsymptoticSpec) -> Self {
        self.zero = zero;
        self
    }

    pub fn with_support(mut self, radius: f64) -> Self {
        self.support = Some(radius);
        self
    }

    pub fn with_breakpoints(mut self, b: Vec<f64>) -> Self {
        self.breaks = b;
        self
    }
}

impl RadialProfile for FnProfile {
    fn value(&self, r: f64) -> f64 {
        (self.f)(r)
    }

    fn ln_value_at(&self, ln_r: f64) -> f64 {
        match &self.ln_f {
            Some(g) => g(ln_r),
            None => (self.f)(ln_r.exp()).ln(),
        }
    }

    fn ln_reduced(&self, ln_r: f64) -> f64 {
        match &self.ln_red {
            Some(g) => g(ln_r),
            None => self.ln_value_at(ln_r) + self.tail.map_or(0.0, |t| t.sigma()) * ln_r,
        }
    }

    fn zero_spec(&self) -> AsymptoticSpec {
        self.zero
    }

    fn infinity_spec(&self) -> Option<TailSpec> {
        self.tail
    }

    fn support_radius(&self) -> Option<f64> {
        self.support
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.breaks.clone()
    }
}
