use approx::assert_relative_eq;
use proptest::prelude::*;
use rieszlab_core::bounds::log_spaced;
use rieszlab_core::classifier::ProblemParams;
use rieszlab_core::probe::*;
use rieszlab_core::profile::{Ball, ClippedPower, FnProfile};
use rieszlab_core::{Error, KernelParams, QuadratureConfig};
use std::f64::consts::PI;

fn radii() -> Vec<f64> {
    log_spaced(1e2, 1e8, 25)
}

#[test]
fn power_growth_certificate() {
    let x = ProblemParams::plus(3, 2.0, 2.0, 0.0, 0.0);
    let c = divergence_certificate(Some("Thm2(iv)"), &x, None, &radii()).unwrap();
    assert_relative_eq!(c.power, 2.0);
    for (r, v) in &c.values {
        assert_relative_eq!(*v, r * r, max_relative = 1e-14);
    }
    assert!(c.increasing && c.unbounded);
    assert!(c.growth_ratio > 1e3);
}

#[test]
fn log_growth_certificate() {
    let x = ProblemParams::plus(3, 3.0, 3.0, 0.0, -0.5);
    let c = divergence_certificate(Some("Thm2(v)"), &x, Some(0.25), &radii()).unwrap();
    assert_relative_eq!(c.logpower, 0.75, epsilon = 1e-14);
    for (r, v) in &c.values {
        assert_relative_eq!(*v, r.ln().powf(0.75), max_relative = 1e-14);
    }
    assert!(c.increasing && c.unbounded);
}

#[test]
fn theta_outside_interval_is_rejected() {
    let x = ProblemParams::plus(3, 3.0, 3.0, 0.0, -0.5);
    for t in [0.05, 0.1, 0.5, 0.7] {
        let e = divergence_certificate(Some("Thm2(v)"), &x, Some(t), &radii()).unwrap_err();
        assert!(matches!(e, Error::HypothesisViolated(_)), "{t}");
    }
}

#[test]
fn clause_must_hold() {
    let x = ProblemParams::plus(3, 4.0, 4.0, 0.0, 0.0);
    let e = divergence_certificate(Some("Thm2(iv)"), &x, None, &radii()).unwrap_err();
    assert!(matches!(e, Error::HypothesisViolated(_)));
}

#[test]
fn tail_mass_grows() {
    // p below (N − α)/(N − 2): the truncated mass grows like R^{N−α−p(N−2)}
    let x = ProblemParams::plus(3, 1.5, 5.0, 0.0, 0.0);
    let c = divergence_certificate(Some("Thm2(ii)"), &x, None, &radii()).unwrap();
    let (r, v) = *c.values.last().unwrap();
    assert_relative_eq!(v, (r.powf(1.5) - 1.0) / 1.5, max_relative = 1e-9);
    // critical p with β = 0: ln R
    let x = ProblemParams::plus(3, 3.0, 5.0, 0.0, 0.0);
    let c = divergence_certificate(Some("Thm2(iii)"), &x, None, &radii()).unwrap();
    let (r, v) = *c.values.last().unwrap();
    assert_relative_eq!(v, r.ln(), max_relative = 1e-6);
    assert!(c.increasing && c.unbounded);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn certificates_increase(
        n in 3u32..7,
        alpha in 0.0f64..1.9,
        beta in -1.9f64..3.0,
        pick in 0usize..4,
        w in 0.01f64..0.99,
    ) {
        let nf = n as f64;
        prop_assume!(beta > alpha - nf);
        let sub = (nf - alpha) / (nf - 2.0);
        let sum = (2.0 * nf - alpha) / (nf - 2.0);
        let crit = (nf + 2.0 - alpha) / (nf - 2.0);
        let (p, q) = match pick {
            0 => (1.0 + w * (sum - 2.0) / 2.0, 1.0 + w * (sum - 2.0) / 2.0),
            1 => (1.0 + w * (sum - 1.0), sum - 1.0 - w * (sum - 1.0)),
            2 => (crit, sub),
            _ => (sub, crit),
        };
        let x = ProblemParams::plus(n, p, q, alpha, beta);
        let fired = rieszlab_core::classifier::nonexistence_clauses(&x);
        for clause in fired.iter().filter(|c| **c != "Thm2(i)") {
            let c = divergence_certificate(Some(clause), &x, None, &radii()).unwrap();
            // R^e ln^β with β < 0 dips before it climbs; it increases once e ln R > −β
            let tail: Vec<f64> = c
                .values
                .iter()
                .filter(|(r, _)| c.power <= 0.0 || c.power * r.ln() > -c.logpower)
                .map(|v| v.1)
                .collect();
            prop_assert!(tail.windows(2).all(|w| w[1] > w[0]), "{clause} {:?}", c.values);
            if c.logpower >= 0.0 {
                prop_assert!(c.increasing);
            }
            prop_assert!(c.unbounded);
        }
    }
}

#[test]
fn bootstrap_gain_diverges() {
    let r = radii();
    let g = bootstrap_ratio(0.3, &r);
    assert!(g.windows(2).all(|w| w[1].1 > w[0].1));
    assert!(g.last().unwrap().1 / g[0].1 > 1.5);
}

#[test]
fn mass_of_constant() {
    let one = FnProfile::new(|_| 1.0, None);
    let m = harnack_mass(&one, 3, 2.0, 7.0, &QuadratureConfig::default()).unwrap();
    assert_relative_eq!(m.ratio, 4.0 * PI / 3.0, max_relative = 1e-10);
}

#[test]
fn mass_of_fundamental_profile_grows_like_r_squared() {
    let u = ClippedPower { sigma: 1.0 };
    let cfg = QuadratureConfig::default();
    let m = harnack_mass(&u, 3, 1.0, 100.0, &cfg).unwrap();
    // 4π(1/3 + (R² − 1)/2)
    assert_relative_eq!(m.mass, 4.0 * PI * (1.0 / 3.0 + (1e4 - 1.0) / 2.0), max_relative = 1e-9);
    let m2 = harnack_mass(&u, 3, 1.0, 1000.0, &cfg).unwrap();
    assert!(m2.ratio < m.ratio / 5.0);
}

#[test]
fn mass_ratio_bounded_below_for_increasing_profile() {
    let u = FnProfile::new(|r| (r / (1.0 + r)).max(0.0), None);
    let cfg = QuadratureConfig::default();
    let (c, r0) = (0.5, 1.0);
    for radius in [10.0, 100.0, 1000.0] {
        let m = harnack_mass(&u, 3, 1.0, radius, &cfg).unwrap();
        let floor = c * 4.0 * PI / 3.0 * (1.0 - (r0 / radius).powi(3));
        assert!(m.ratio >= floor, "{radius}");
    }
    let ball = Ball { radius: 2.0 };
    let m = harnack_mass(&ball, 3, 3.0, 10.0, &cfg).unwrap();
    assert_relative_eq!(m.mass, 4.0 * PI / 3.0 * 8.0, max_relative = 1e-8);
}

#[test]
fn lower_bound_chain_matches_display() {
    let kernel = KernelParams::new(3, 1.0, 0.0).unwrap();
    let grid = log_spaced(1e3, 1e7, 12);
    let ch = lower_bound_chain(&kernel, 3.0, &grid, &QuadratureConfig::default()).unwrap();
    assert!(!ch.divergent);
    let (pw, _) = ch.fitted.unwrap();
    assert!((pw - -1.0).abs() < 0.05, "{pw}");
    // σ = N: the bound is attained only up to a logarithm
    assert!(!ch.sharp);
}

#[test]
fn lower_bound_chain_sharp_case() {
    let kernel = KernelParams::new(5, 1.0, 0.5).unwrap();
    // σ = 3·1.5 = 4.5 in (N − α, N)
    let grid = log_spaced(1e3, 1e7, 12);
    let ch = lower_bound_chain(&kernel, 1.5, &grid, &QuadratureConfig::default()).unwrap();
    assert!(ch.sharp);
    let (pw, lp) = ch.fitted.unwrap();
    assert!((pw - ch.predicted.0).abs() < 0.05, "{pw} vs {:?}", ch.predicted);
    assert!((lp - ch.predicted.1).abs() < 0.2, "{lp} vs {:?}", ch.predicted);
}

#[test]
fn lower_bound_chain_flags_divergence() {
    let kernel = KernelParams::new(3, 0.0, 0.0).unwrap();
    let ch = lower_bound_chain(&kernel, 2.0, &log_spaced(1e3, 1e7, 8), &QuadratureConfig::default()).unwrap();
    assert!(ch.divergent);
    assert_eq!(ch.predicted, (1.0, 0.0));
}

#[test]
fn zero_profile_gives_zero() {
    let kernel = KernelParams::new(3, 1.0, 0.0).unwrap();
    let zero = FnProfile::new(|_| 0.0, None).with_support(1.0);
    let s = sample_convolution(&kernel, &zero, &[0.5, 2.0, 10.0], &QuadratureConfig::default()).unwrap();
    assert!(s.iter().all(|(_, v)| *v == 0.0));
}

#[test]
fn test_function_spec_checks() {
    assert!(TestFunctionSpec::new(0, 2.0, 1.0).is_err());
    assert!(TestFunctionSpec::new(3, 1.0, 1.0).is_err());
    assert!(TestFunctionSpec::new(5, 2.0, 1.0).unwrap().meets_power_condition());
    assert!(!TestFunctionSpec::new(4, 2.0, 1.0).unwrap().meets_power_condition());
    let s = TestFunctionSpec::new(3, 1.5, 4.0).unwrap();
    for r in log_spaced(0.01, 10.0, 50) {
        let v = s.phi(r);
        assert!((0.0..=1.0).contains(&v));
    }
}
