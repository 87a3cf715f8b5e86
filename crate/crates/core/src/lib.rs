//! Numerical toolkit for the nonlocal biharmonic problem
//! Δ²u − λΔu = ±(K ∗ u^p) u^q with a log-corrected Riesz kernel K.

// Negated comparisons are deliberate: they reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ansatz;
pub mod bounds;
pub mod classifier;
pub mod convolution;
pub mod error;
pub mod fd;
pub mod kernel;
pub mod probe;
pub mod profile;
pub mod quadrature;
pub mod special;

pub use convolution::{
    angular_factor, convolve_radial, convolve_radial_many, detect_divergence,
    newtonian_potential_radial, sphere_area, ConvolutionResult, DivergenceCheck,
};
pub use error::{Error, Result};
pub use kernel::{AsymptoticSpec, KernelParams, Regime};
pub use profile::{Ball, ClippedPower, FnProfile, PowerTail, RadialProfile, TailSpec};
pub use quadrature::{Estimate, QuadratureConfig};
pub use bounds::{
    check_bound, fit_asymptotics, lower_bound_candidates, lower_bound_prediction,
    upper_bound_for_tail, upper_bound_prediction, BoundCheckReport, BoundKind, FitResult,
    PredictedBound,
};
