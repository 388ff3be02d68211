//! Analysis and synthesis operators over a finite sample set, truncated frame
//! bounds, the Parseval defect `K(t,t) - sum_s K(t,s)^2`, and dual-frame
//! interpolation.
//!
//! All frame quantities are computed on the span of `{K(., s) : s in S}` for a
//! finite `S`. On that span `f = sum_s c_s K(., s)` has `||f||^2 = c^T G c` and
//! `sum_s |f(s)|^2 = c^T G^2 c`, so the tightest frame constants are the
//! reciprocal extreme eigenvalues of the Gram matrix `G`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_len, Error, Result};
use crate::gram::{build_gram, GramMatrix};
use crate::kernel::{KernelSpec, SampleSet};
use crate::linalg;

/// `t -> sum_s coeffs[s] K(t, s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientFunction {
    spec: KernelSpec,
    points: SampleSet,
    coeffs: Vec<f64>,
}

impl CoefficientFunction {
    pub fn new(spec: KernelSpec, points: SampleSet, coeffs: Vec<f64>) -> Result<Self> {
        check_len(points.len(), coeffs.len())?;
        points.validate_for(&spec)?;
        Ok(Self {
            spec,
            points,
            coeffs,
        })
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn points(&self) -> &SampleSet {
        &self.points
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Summed left to right in index order.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let mut acc = 0.0;
        for (&s, &c) in self.points.points().iter().zip(&self.coeffs) {
            acc += c * self.spec.eval(t, s)?;
        }
        Ok(acc)
    }

    /// Squared RKHS norm `c^T G c`.
    pub fn norm_sq(&self) -> Result<f64> {
        build_gram(&self.spec, &self.points)?
            .matrix()
            .bilinear(&self.coeffs, &self.coeffs)
    }
}

/// Sample vector `(f(s))_{s in S}`.
pub fn analysis<F>(spec: &KernelSpec, set: &SampleSet, f: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    set.validate_for(spec)?;
    set.points().iter().map(|&s| f(s)).collect()
}

/// `sum_s xi_s K(., s)`.
pub fn synthesis(spec: &KernelSpec, set: &SampleSet, xi: &[f64]) -> Result<CoefficientFunction> {
    CoefficientFunction::new(spec.clone(), set.clone(), xi.to_vec())
}

/// Frame constants on the truncated span.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameBounds {
    /// `1 / lambda_max(G)`
    pub a: f64,
    /// `1 / lambda_min(G)`
    pub b: f64,
}

/// Tightest `(a, b)` with `a sum_s |f(s)|^2 <= ||f||^2 <= b sum_s |f(s)|^2` for
/// every `f` in the span of the kernel sections over `set`. This is a finite
/// surrogate; it says nothing about functions outside the span.
pub fn frame_bounds_truncated(spec: &KernelSpec, set: &SampleSet) -> Result<FrameBounds> {
    let gram = build_gram(spec, set)?;
    bounds_from_gram(&gram)
}

pub(crate) fn bounds_from_gram(gram: &GramMatrix) -> Result<FrameBounds> {
    // Cholesky doubles as the nonsingularity check, with the shared pivot policy.
    gram.cholesky()?;
    let ev = linalg::symmetric_eigenvalues(gram.matrix());
    let (lo, hi) = (ev[0], ev[ev.len() - 1]);
    if !(lo > 0.0) {
        return Err(Error::Singular { pivot: 0 });
    }
    Ok(FrameBounds {
        a: 1.0 / hi,
        b: 1.0 / lo,
    })
}

/// Bound on the neglected tail `sum_{|n| > N} sinc^2(t - n)`, i.e.
/// `2 / (pi^2 (N - |t|))`. Infinite when `|t| >= N`.
pub fn sinc_tail_bound(radius: u64, t: f64) -> f64 {
    let gap = radius as f64 - t.abs();
    if gap <= 0.0 {
        f64::INFINITY
    } else {
        2.0 / (PI * PI * gap)
    }
}

/// Result of [`parseval_defect`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameReport {
    /// Frame bounds over the truncation, when requested.
    pub bounds: Option<FrameBounds>,
    /// `max_t |K(t,t) - sum_s K(t,s)^2|` over the probe grid.
    pub defect: f64,
    /// Per-grid-point defects, in grid order.
    pub pointwise: Vec<f64>,
    /// Analytic bound on the truncated tail (sinc kernel on `{-N..N}` only).
    pub tail_bound: Option<f64>,
    pub tail_within_budget: Option<bool>,
    /// `N` when the truncation is `{-N, ..., N}`.
    pub radius: Option<u64>,
    pub truncation_len: usize,
    pub grid: Vec<f64>,
}

/// Parseval defect of the kernel sections over `set`, probed on `grid`.
///
/// For the sinc kernel with `set = {-N, ..., N}`, the infinite sum over all
/// integers is exactly `K(t,t) = 1`; the truncation neglects at most
/// `2 / (pi^2 (N - max|t|))`, reported as `tail_bound` and compared against
/// `tail_budget`.
pub fn parseval_defect(
    spec: &KernelSpec,
    set: &SampleSet,
    grid: &[f64],
    tail_budget: f64,
) -> Result<FrameReport> {
    set.validate_for(spec)?;
    for &t in grid {
        spec.check_domain(t)?;
    }
    let points = set.points();
    let pointwise: Vec<f64> = grid
        .par_iter()
        .map(|&t| {
            let diag = spec.eval(t, t)?;
            let mut sum = 0.0;
            for &s in points {
                let k = spec.eval(t, s)?;
                sum += k * k;
            }
            Ok((diag - sum).abs())
        })
        .collect::<Result<_>>()?;
    let defect = pointwise.iter().fold(0.0, |m: f64, &d| m.max(d));

    let radius = match spec {
        KernelSpec::Sinc => set.symmetric_integer_radius(),
        _ => None,
    };
    let tail_bound = radius.map(|n| {
        let tmax = grid.iter().fold(0.0, |m: f64, t| m.max(t.abs()));
        sinc_tail_bound(n, tmax)
    });
    Ok(FrameReport {
        bounds: None,
        defect,
        pointwise,
        tail_bound,
        tail_within_budget: tail_bound.map(|b| b <= tail_budget),
        radius,
        truncation_len: set.len(),
        grid: grid.to_vec(),
    })
}

/// `sum_s samples_s K(t, s)`. Exact for Parseval systems (e.g. sinc on the
/// integers, up to truncation); only an approximation otherwise.
pub fn reconstruct(spec: &KernelSpec, set: &SampleSet, samples: &[f64], t: f64) -> Result<f64> {
    synthesis(spec, set, samples)?.eval(t)
}

/// Dual-frame interpolant: coefficients `G^{-1} samples`, which reproduce the
/// samples at every node.
pub fn dual_frame_coefficients(
    spec: &KernelSpec,
    set: &SampleSet,
    samples: &[f64],
) -> Result<CoefficientFunction> {
    check_len(set.len(), samples.len())?;
    let gram = build_gram(spec, set)?;
    let coeffs = gram.solve_spd(samples)?;
    CoefficientFunction::new(spec.clone(), set.clone(), coeffs)
}
