//! Flag value parsers: rationals, radius ranges and named profiles.

use std::sync::Arc;

use rieszlab_core::ansatz::{AnsatzParams, AnsatzSolution, SolutionPower};
use rieszlab_core::bounds::log_spaced;
use rieszlab_core::{Ball, ClippedPower, PowerTail, RadialProfile};
use serde::Serialize;

/// A real number, written as a decimal or as "a/b".
pub fn real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let v = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|_| format!("bad numerator in '{s}'"))?;
            let b: f64 = b.trim().parse().map_err(|_| format!("bad denominator in '{s}'"))?;
            if b == 0.0 {
                return Err(format!("zero denominator in '{s}'"));
            }
            a / b
        }
        None => s.parse().map_err(|_| format!("'{s}' is not a number"))?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

/// "start:stop:count", log-spaced.
#[derive(Debug, Clone, Serialize)]
pub struct Radii {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Radii {
    pub fn points(&self) -> Vec<f64> {
        log_spaced(self.start, self.stop, self.count)
    }
}

pub fn radii(s: &str) -> Result<Radii, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, c] = parts[..] else {
        return Err(format!("radii '{s}' must look like start:stop:count"));
    };
    let start = real(a)?;
    let stop = real(b)?;
    let count: usize = c.parse().map_err(|_| format!("bad count in '{s}'"))?;
    if !(start > 0.0 && stop >= start && count >= 1) {
        return Err(format!("radii '{s}' need 0 < start <= stop and count >= 1"));
    }
    Ok(Radii { start, stop, count })
}

/// "lo:hi".
pub fn window(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("window '{s}' must look like lo:hi"))?;
    let (lo, hi) = (real(a)?, real(b)?);
    if !(lo > 0.0 && hi > lo) {
        return Err(format!("window '{s}' needs 0 < lo < hi"));
    }
    Ok((lo, hi))
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProfileSpec {
    Ball { radius: f64 },
    Power { sigma: f64, kappa: f64, scale: f64 },
    Clipped { sigma: f64 },
    Ansatz { gamma: f64, tau: f64, a: f64 },
}

pub fn profile(s: &str) -> Result<ProfileSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let nums = |xs: &[&str]| xs.iter().map(|x| real(x)).collect::<Result<Vec<f64>, String>>();
    match parts.as_slice() {
        ["ball", r] => {
            let radius = real(r)?;
            if radius <= 0.0 {
                return Err("ball radius must be positive".into());
            }
            Ok(ProfileSpec::Ball { radius })
        }
        ["power", rest @ ..] if rest.len() == 3 => {
            let v = nums(rest)?;
            if !(v[2] > 0.0 && (v[1] == 0.0 || v[2] > 1.0)) {
                return Err("power profile needs A > 0, and A > 1 when kappa != 0".into());
            }
            Ok(ProfileSpec::Power {
                sigma: v[0],
                kappa: v[1],
                scale: v[2],
            })
        }
        ["clipped", s] => Ok(ProfileSpec::Clipped { sigma: real(s)? }),
        ["ansatz", rest @ ..] if rest.len() == 3 => {
            let v = nums(rest)?;
            Ok(ProfileSpec::Ansatz {
                gamma: v[0],
                tau: v[1],
                a: v[2],
            })
        }
        _ => Err(format!(
            "profile '{s}' must be ball:r, power:sigma:kappa:A, clipped:sigma or ansatz:gamma:tau:A"
        )),
    }
}

impl ProfileSpec {
    /// The profile raised to `power`; only the ansatz profile takes powers
    /// other than one.
    pub fn build(&self, n: u32, power: f64, snap: Option<f64>) -> rieszlab_core::Result<Arc<dyn RadialProfile>> {
        let plain = |p: Arc<dyn RadialProfile>| -> rieszlab_core::Result<Arc<dyn RadialProfile>> {
            if power != 1.0 {
                return Err(rieszlab_core::Error::InvalidInput(
                    "--power applies only to ansatz profiles".into(),
                ));
            }
            Ok(p)
        };
        match *self {
            ProfileSpec::Ball { radius } => plain(Arc::new(Ball { radius })),
            ProfileSpec::Power { sigma, kappa, scale } => plain(Arc::new(PowerTail::new(sigma, kappa, scale))),
            ProfileSpec::Clipped { sigma } => plain(Arc::new(ClippedPower { sigma })),
            ProfileSpec::Ansatz { gamma, tau, a } => {
                let params = AnsatzParams::new(n, gamma, tau, a)?;
                Ok(Arc::new(SolutionPower::new(AnsatzSolution::build(params), power, snap)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(real("3/2").unwrap(), 1.5);
        assert_eq!(real(" -1 ").unwrap(), -1.0);
        assert_eq!(real("4/3").unwrap(), 4.0 / 3.0);
        assert!(real("1/0").is_err());
        assert!(real("x").is_err());
    }

    #[test]
    fn ranges_and_profiles() {
        let r = radii("1:1e5:40").unwrap();
        assert_eq!(r.points().len(), 40);
        assert!(radii("1:2").is_err());
        assert!(matches!(profile("ball:1").unwrap(), ProfileSpec::Ball { radius } if radius == 1.0));
        assert!(matches!(profile("power:4:0:10").unwrap(), ProfileSpec::Power { .. }));
        assert!(profile("power:4:1:0.5").is_err());
        assert!(profile("cube:1").is_err());
    }
}
