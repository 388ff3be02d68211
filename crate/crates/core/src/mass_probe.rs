//! Discrete-mass probes.
//!
//! For a countable set `V = {x_1 < x_2 < ...}` and the prefixes
//! `F_n = {x_1, ..., x_n}`, the squared norm of the projection of `delta_x`
//! onto `span{K(., s) : s in F_n}` is the diagonal entry `(K_{F_n}^{-1})_{xx}`.
//! The sequence is non-decreasing in `n`; `delta_x` lies in the RKHS of the
//! restricted kernel exactly when it stays bounded.
//!
//! With `K_{F_n} = L L^T` and `z = L^{-1} e_x` for the largest prefix, the
//! leading block of `L` factors every smaller prefix, so
//! `(K_{F_n}^{-1})_{xx} = sum_{k < n} z_k^2`. One factorization serves the whole
//! sequence and monotonicity holds by construction. The same identity with an
//! arbitrary right-hand side gives the membership estimate
//! `f_{F_n}^T K_{F_n}^{-1} f_{F_n}`.
//!
//! Integer-valued kernels (binomial) are handled in exact rational arithmetic,
//! since their Gram matrices are far too ill-conditioned for doubles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial_projection_norm_closed, IntMatrix};
use crate::gram::{build_gram, build_gram_exact, require_positive};
use crate::kernel::{KernelSpec, SampleSet};

pub const DEFAULT_REL_INCREMENT_THRESHOLD: f64 = 1e-10;
pub const DEFAULT_WINDOW: usize = 5;
/// Growth factor over the verdict window that signals divergence.
pub const DIVERGENCE_FACTOR: f64 = 1.5;
/// Relative tolerance for agreement between a stabilized probe and its closed form.
pub const CLOSED_FORM_REL_TOL: f64 = 1e-8;

fn check_prefix(set: &SampleSet, n_max: usize) -> Result<()> {
    if n_max == 0 || n_max > set.len() {
        return Err(Error::InvalidInput(format!(
            "n_max = {n_max} must lie in 1..={}",
            set.len()
        )));
    }
    Ok(())
}

/// `f_{F_n}^T K_{F_n}^{-1} f_{F_n}` for `n = 1..=n_max`, where `rhs` holds the
/// values of `f` on the first `n_max` points.
fn nested_quadratic_forms(spec: &KernelSpec, set: &SampleSet, rhs: &[f64]) -> Result<Vec<f64>> {
    let n_max = rhs.len();
    let prefix = set.prefix(n_max)?;
    if spec.is_integer_valued() {
        let k = build_gram_exact(spec, &prefix)?;
        return exact_nested_forms(&k, rhs);
    }
    let gram = build_gram(spec, &prefix)?;
    let z = gram.cholesky()?.forward(rhs)?;
    let mut acc = 0.0;
    Ok(z.iter()
        .map(|zk| {
            acc += zk * zk;
            acc
        })
        .collect())
}

/// Exact `L D L^T` of an integer Gram, followed by the same nested sums.
fn exact_nested_forms(k: &IntMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    let n = k.dim();
    let entry = |i: usize, j: usize| BigRational::from_integer(BigInt::from(k.get(i, j)));
    let mut lower: Vec<Vec<BigRational>> = vec![Vec::new(); n];
    let mut diag: Vec<BigRational> = Vec::with_capacity(n);
    for j in 0..n {
        let mut d = entry(j, j);
        for m in 0..j {
            d -= &lower[j][m] * &lower[j][m] * &diag[m];
        }
        if !d.is_positive() {
            return Err(Error::Singular { pivot: j });
        }
        for i in j + 1..n {
            let mut s = entry(i, j);
            for m in 0..j {
                s -= &lower[i][m] * &lower[j][m] * &diag[m];
            }
            let l = s / &d;
            lower[i].push(l);
        }
        diag.push(d);
    }
    let mut z: Vec<BigRational> = Vec::with_capacity(n);
    for (i, &b) in rhs.iter().enumerate() {
        let mut s = BigRational::from_float(b)
            .ok_or_else(|| Error::InvalidInput(format!("right-hand side {b} is not finite")))?;
        for m in 0..i {
            s -= &lower[i][m] * &z[m];
        }
        z.push(s);
    }
    let mut acc = BigRational::zero();
    z.iter()
        .zip(&diag)
        .map(|(zk, dk)| {
            acc += zk * zk / dk;
            acc.to_f64().ok_or(Error::Capacity {
                x: n as u64,
                n: n as u64,
            })
        })
        .collect()
}

/// `||P_{F_n} delta_x||^2` for `n = 1..=n_max`, `x = V[x_index]`. Entries with
/// `n <= x_index` are 0 since `x` is not yet in the prefix.
pub fn projection_norm_sequence(
    spec: &KernelSpec,
    set: &SampleSet,
    x_index: usize,
    n_max: usize,
) -> Result<Vec<f64>> {
    check_prefix(set, n_max)?;
    if x_index >= n_max {
        return Err(Error::InvalidInput(format!(
            "x_index = {x_index} must be < n_max = {n_max}"
        )));
    }
    let mut e = vec![0.0; n_max];
    e[x_index] = 1.0;
    nested_quadratic_forms(spec, set, &e)
}

/// `||P_{F_n} f||^2 = f_{F_n}^T K_{F_n}^{-1} f_{F_n}` for `n = 1..=n_max`.
/// A bounded sequence means the data are consistent with some `g` in the RKHS
/// of the restricted kernel, with `||g||^2` at least the supremum.
pub fn membership_probe(
    spec: &KernelSpec,
    set: &SampleSet,
    f_values: &[f64],
    n_max: usize,
) -> Result<Vec<f64>> {
    check_prefix(set, n_max)?;
    if f_values.len() < n_max {
        return Err(Error::LengthMismatch {
            expected: n_max,
            got: f_values.len(),
        });
    }
    nested_quadratic_forms(spec, set, &f_values[..n_max])
}

/// `||delta_{x_i}||^2` for the Brownian kernel restricted to `V`:
/// `x_2 / (x_1 (x_2 - x_1))` for the first point and
/// `(x_{i+1} - x_{i-1}) / ((x_i - x_{i-1}) (x_{i+1} - x_i))` for interior points.
pub fn brownian_delta_norm_closed(set: &SampleSet, i: usize) -> Result<f64> {
    set.validate_for(&KernelSpec::BrownianMotion)?;
    require_positive(set)?;
    let p = set.points();
    if i + 1 >= p.len() {
        return Err(Error::InvalidInput(format!(
            "index {i} needs a right neighbour in a set of {} points",
            p.len()
        )));
    }
    Ok(if i == 0 {
        p[1] / (p[0] * (p[1] - p[0]))
    } else {
        (p[i + 1] - p[i - 1]) / ((p[i] - p[i - 1]) * (p[i + 1] - p[i]))
    })
}

/// `||delta_{x_i}||^2` for the bridge kernel on an interior point of `V`.
pub fn bridge_delta_norm_closed(set: &SampleSet, i: usize) -> Result<f64> {
    set.validate_for(&KernelSpec::BrownianBridge)?;
    let p = set.points();
    if i == 0 || i + 1 >= p.len() {
        return Err(Error::InvalidInput(format!(
            "index {i} is not interior in a set of {} points",
            p.len()
        )));
    }
    Ok((p[i + 1] - p[i - 1]) / ((p[i + 1] - p[i]) * (p[i] - p[i - 1])))
}

/// `x_i = i (i - 1) / 2` for `i = lo..=hi`.
pub fn sparse_points(lo: u64, hi: u64) -> Result<SampleSet> {
    SampleSet::new((lo..=hi).map(|i| (i * (i - 1) / 2) as f64).collect())
}

/// Decision on a probe sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum Verdict {
    /// Stabilized at `limit`.
    Bounded {
        limit: f64,
    },
    /// Growing without visible bound; no finite mass.
    Diverging,
    Inconclusive,
}

impl Verdict {
    pub fn has_finite_mass(&self) -> Option<bool> {
        match self {
            Verdict::Bounded { .. } => Some(true),
            Verdict::Diverging => Some(false),
            Verdict::Inconclusive => None,
        }
    }
}

/// Classifies a non-decreasing probe sequence.
///
/// * `Bounded(last)` when each of the last `window` relative increments is at
///   most `rel_increment_threshold` and, if `closed_form` is given, the last
///   value agrees with it to [`CLOSED_FORM_REL_TOL`].
/// * `Diverging` when the sequence grew by at least [`DIVERGENCE_FACTOR`]
///   across the window, or when the last `window` increments are all above
///   threshold and non-decreasing (at least linear growth).
/// * `Inconclusive` otherwise, including sequences shorter than `window + 1`.
pub fn mass_verdict(
    norms: &[f64],
    closed_form: Option<f64>,
    rel_increment_threshold: f64,
    window: usize,
) -> Result<Verdict> {
    if window == 0 {
        return Err(Error::InvalidInput(
            "verdict window must be positive".into(),
        ));
    }
    for (k, w) in norms.windows(2).enumerate() {
        if !(w[1] >= w[0] - 1e-12 * w[0].abs().max(1.0)) {
            return Err(Error::InvalidInput(format!(
                "probe sequence decreases at n = {}: {} -> {}",
                k + 2,
                w[0],
                w[1]
            )));
        }
    }
    if norms.len() < window + 1 {
        return Ok(Verdict::Inconclusive);
    }
    let tail = &norms[norms.len() - window - 1..];
    let last = tail[window];
    let rel_incs: Vec<f64> = tail
        .windows(2)
        .map(|w| {
            let d = w[1] - w[0];
            if d <= 0.0 {
                0.0
            } else if w[0] == 0.0 {
                f64::INFINITY
            } else {
                d / w[0].abs()
            }
        })
        .collect();

    if rel_incs.iter().all(|&r| r <= rel_increment_threshold) {
        let agrees = closed_form
            .map(|cf| (last - cf).abs() <= CLOSED_FORM_REL_TOL * cf.abs())
            .unwrap_or(true);
        return Ok(if agrees {
            Verdict::Bounded { limit: last }
        } else {
            Verdict::Inconclusive
        });
    }

    let base = tail[0];
    let grew = base > 0.0 && last >= DIVERGENCE_FACTOR * base;
    let incs: Vec<f64> = tail.windows(2).map(|w| w[1] - w[0]).collect();
    let accelerating = rel_incs.iter().all(|&r| r > rel_increment_threshold)
        && incs.windows(2).all(|w| w[1] >= w[0]);
    Ok(if grew || accelerating {
        Verdict::Diverging
    } else {
        Verdict::Inconclusive
    })
}

/// Full probe result for one target point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MassProbeReport {
    pub kernel: String,
    pub v_prefix: Vec<f64>,
    pub target_index: usize,
    pub target_point: f64,
    /// `norms[n - 1] = ||P_{F_n} delta_x||^2`
    pub norms: Vec<f64>,
    pub verdict: Verdict,
    /// Closed-form value for the final entry when one is known.
    pub closed_form: Option<f64>,
}

impl MassProbeReport {
    /// `n,norm` CSV.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,norm\n");
        for (k, v) in self.norms.iter().enumerate() {
            out.push_str(&format!("{},{}\n", k + 1, crate::gram::fmt_f64(*v)));
        }
        out
    }
}

/// Closed form for `(K_{F_n}^{-1})_{xx}` on the prefix of length `n_max`, when
/// the kernel provides one.
pub fn closed_form_for(
    spec: &KernelSpec,
    set: &SampleSet,
    x_index: usize,
    n_max: usize,
) -> Option<f64> {
    let prefix = set.prefix(n_max).ok()?;
    match spec {
        KernelSpec::BrownianMotion => brownian_delta_norm_closed(&prefix, x_index).ok(),
        KernelSpec::BrownianBridge => bridge_delta_norm_closed(&prefix, x_index).ok(),
        KernelSpec::Binomial => {
            let p = prefix.points();
            let is_initial_segment = p.iter().enumerate().all(|(k, &v)| v == k as f64);
            if !is_initial_segment {
                return None;
            }
            binomial_projection_norm_closed(x_index as u64, (n_max - 1) as u64)
                .ok()
                .map(|v| v as f64)
        }
        _ => None,
    }
}

/// Runs [`projection_norm_sequence`], attaches the closed form when known, and
/// classifies with [`mass_verdict`] at the given thresholds.
pub fn probe_mass(
    spec: &KernelSpec,
    set: &SampleSet,
    x_index: usize,
    n_max: usize,
    rel_increment_threshold: f64,
    window: usize,
) -> Result<MassProbeReport> {
    let norms = projection_norm_sequence(spec, set, x_index, n_max)?;
    let closed_form = closed_form_for(spec, set, x_index, n_max);
    // Only the entries after x joins the prefix carry information.
    let verdict = mass_verdict(
        &norms[x_index..],
        closed_form,
        rel_increment_threshold,
        window,
    )?;
    Ok(MassProbeReport {
        kernel: spec.to_string(),
        v_prefix: set.points()[..n_max].to_vec(),
        target_index: x_index,
        target_point: set.points()[x_index],
        norms,
        verdict,
        closed_form,
    })
}
