//! The logarithmically corrected Riesz kernel t^{-α} ln(1+t)^β.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub n: u32,
    pub alpha: f64,
    pub beta: f64,
}

/// Leading behaviour r^power · (ln r)^logpower · (ln ln r)^loglog.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticSpec {
    pub power: f64,
    pub logpower: f64,
    #[serde(default)]
    pub loglog: f64,
}

impl AsymptoticSpec {
    pub fn new(power: f64, logpower: f64) -> Self {
        Self {
            power,
            logpower,
            loglog: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    AtZero,
    AtInfinity,
}

impl KernelParams {
    pub fn new(n: u32, alpha: f64, beta: f64) -> Result<Self> {
        let k = Self { n, alpha, beta };
        k.validate()?;
        Ok(k)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidDimension(self.n));
        }
        let n = self.n as f64;
        if !(self.alpha >= 0.0 && self.alpha <= n) {
            return Err(Error::InvalidAlpha {
                alpha: self.alpha,
                n: self.n,
            });
        }
        if !(self.beta > self.alpha - n) || !self.beta.is_finite() {
            return Err(Error::InvalidBeta {
                beta: self.beta,
                bound: self.alpha - n,
            });
        }
        Ok(())
    }

    /// ln K(t); works for t far outside the normal floating range.
    pub fn ln_eval(&self, t: f64) -> f64 {
        self.ln_eval_from_ln(t.ln(), t)
    }

    /// ln K at t = exp(ln_t). `t_hint` may be infinite when ln_t is huge.
    pub(crate) fn ln_eval_from_ln(&self, ln_t: f64, t_hint: f64) -> f64 {
        let mut out = -self.alpha * ln_t;
        if self.beta != 0.0 {
            let ln_log = if t_hint.is_finite() && ln_t < 36.0 {
                t_hint.ln_1p().ln()
            } else {
                // ln(1+t) = ln t + ln(1+1/t), with 1/t below the ulp of ln t
                ln_t.ln()
            };
            out += self.beta * ln_log;
        }
        out
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::NonpositiveRadius(t));
        }
        Ok(self.value(t))
    }

    /// Unchecked evaluation for t > 0.
    #[inline]
    pub fn value(&self, t: f64) -> f64 {
        if self.beta == 0.0 {
            if self.alpha == 0.0 {
                1.0
            } else {
                t.powf(-self.alpha)
            }
        } else {
            self.ln_eval(t).exp()
        }
    }

    /// Exponent of the pure-power behaviour of K as t → 0, i.e. β − α.
    pub fn exponent_at_zero(&self) -> f64 {
        self.beta - self.alpha
    }

    pub fn asymptotics(&self, regime: Regime) -> AsymptoticSpec {
        match regime {
            Regime::AtZero => AsymptoticSpec::new(self.beta - self.alpha, 0.0),
            Regime::AtInfinity => AsymptoticSpec::new(-self.alpha, self.beta),
        }
    }
}
