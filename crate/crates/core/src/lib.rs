//! Sampling, frame, and discrete-mass diagnostics for positive-definite kernels
//! on the line.
//!
//! The crate contrasts two kinds of kernel. The sinc kernel has the integers as
//! a Parseval sampling set: every function in its RKHS is recovered from its
//! integer samples. The Brownian covariance `min(s, t)` has no countable
//! sampling set at all, yet every Dirac mass on a discrete set lies in the RKHS
//! of its restriction. The binomial kernel is the opposite: no Dirac mass is
//! in its RKHS. Each of these facts becomes a numerical check here:
//!
//! | Module | What it computes |
//! |--------|------------------|
//! | [`kernel`] | kernel evaluation, sample sets, positive-definiteness checks |
//! | [`exact`] | exact binomial coefficients and Pascal factorizations |
//! | [`gram`] | Gram matrices, SPD solves, closed-form determinants |
//! | [`frame`] | analysis/synthesis, truncated frame bounds, Parseval defect |
//! | [`interpolation`] | splines, saw-tooth witnesses, ridge and obstruction solves |
//! | [`mass_probe`] | nested projection norms of Dirac masses and their verdicts |
//! | [`stochastic`] | Karhunen-Loeve simulation of Brownian motion and bridge |
//!
//! ```
//! use kernsamp::{build_gram, det_brownian_closed, KernelSpec, SampleSet};
//!
//! let s = SampleSet::new(vec![0.5, 1.5, 3.5]).unwrap();
//! let g = build_gram(&KernelSpec::BrownianMotion, &s).unwrap();
//! let closed = det_brownian_closed(&s).unwrap();
//! assert!((g.det_lu() - closed).abs() < 1e-12);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod exact;
pub mod frame;
pub mod gram;
pub mod interpolation;
pub mod kernel;
pub mod linalg;
pub mod mass_probe;
pub mod report;
pub mod stochastic;

pub use error::{Error, Result};
pub use exact::{
    binom, binomial_projection_norm_closed, pascal_inverse, pascal_lower, IntMatrix, PascalMatrix,
};
pub use frame::{
    analysis, dual_frame_coefficients, frame_bounds_truncated, parseval_defect, reconstruct,
    synthesis, CoefficientFunction, FrameBounds, FrameReport,
};
pub use gram::{
    binomial_gram_inverse, build_gram, det_bridge_closed, det_brownian_closed, solve_spd,
    GramMatrix, GramReport,
};
pub use interpolation::{
    cm_norm_sq, obstruction_probe, ridge_interpolant, sawtooth_witness, sawtooth_witness_anchored,
    spline_interpolant, tent_basis, ObstructionProbeResult, PiecewiseLinearFunction,
    SplineInterpolant,
};
pub use kernel::{check_positive_definite, eval_kernel, KernelSpec, KernelTable, SampleSet};
pub use mass_probe::{
    bridge_delta_norm_closed, brownian_delta_norm_closed, mass_verdict, membership_probe,
    probe_mass, projection_norm_sequence, MassProbeReport, Verdict,
};
pub use stochastic::{
    empirical_covariance, simulate_bridge, simulate_brownian, CovarianceEstimate, PathEnsemble,
};
