//! Piecewise-linear functions with their Cameron-Martin seminorm, spline
//! interpolation, the saw-tooth witness, and regularized kernel interpolation.

use serde::Serialize;

use crate::error::{check_len, Error, Result};
use crate::frame::CoefficientFunction;
use crate::gram::{build_gram, fmt_f64};
use crate::kernel::{KernelSpec, SampleSet};

/// Continuous piecewise-linear function, constant beyond the outer knots.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseLinearFunction {
    knots: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseLinearFunction {
    pub fn new(knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_len(knots.len(), values.len())?;
        // Reuse the sample-set checks: non-empty, finite, strictly increasing.
        SampleSet::new(knots.clone())?;
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("knot value {v} is not finite")));
        }
        Ok(Self { knots, values })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Exact at knots, linear in between.
    pub fn eval(&self, t: f64) -> f64 {
        let n = self.knots.len();
        if t <= self.knots[0] {
            return self.values[0];
        }
        if t >= self.knots[n - 1] {
            return self.values[n - 1];
        }
        match self.knots.binary_search_by(|k| k.total_cmp(&t)) {
            Ok(i) => self.values[i],
            Err(i) => {
                let (x0, x1) = (self.knots[i - 1], self.knots[i]);
                let (y0, y1) = (self.values[i - 1], self.values[i]);
                y0 + (y1 - y0) * (t - x0) / (x1 - x0)
            }
        }
    }

    /// Slopes of the linear pieces.
    pub fn slopes(&self) -> Vec<f64> {
        self.knots
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, y)| (y[1] - y[0]) / (x[1] - x[0]))
            .collect()
    }

    /// Two-column `t,f(t)` CSV of the knots.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,value\n");
        for (x, y) in self.knots.iter().zip(&self.values) {
            out.push_str(&format!("{},{}\n", fmt_f64(*x), fmt_f64(*y)));
        }
        out
    }
}

/// `int |f'|^2`, summed segment by segment as `slope^2 * length`.
pub fn cm_norm_sq(f: &PiecewiseLinearFunction) -> f64 {
    f.slopes()
        .iter()
        .zip(f.knots.windows(2))
        .map(|(s, x)| s * s * (x[1] - x[0]))
        .sum()
}

/// Result of [`spline_interpolant`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplineInterpolant {
    pub function: PiecewiseLinearFunction,
    /// `sum_j (y_{j+1} - y_j)^2 / (x_{j+1} - x_j)`
    pub norm_sq: f64,
    /// `norm_sq <= budget`
    pub admissible: bool,
}

/// Piecewise-linear spline through `(x_j, y_j)`. The norm is computed from the
/// data increments directly, independently of [`cm_norm_sq`].
pub fn spline_interpolant(x: &SampleSet, y: &[f64], budget: f64) -> Result<SplineInterpolant> {
    check_len(x.len(), y.len())?;
    let norm_sq = x
        .points()
        .windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| {
            let dy = ys[1] - ys[0];
            dy * dy / (xs[1] - xs[0])
        })
        .sum();
    let function = PiecewiseLinearFunction::new(x.points().to_vec(), y.to_vec())?;
    Ok(SplineInterpolant {
        function,
        norm_sq,
        admissible: norm_sq <= budget,
    })
}

/// Default tooth heights `c_n = 1 / (n sqrt(x_{n+1} - x_n))`, `n` counted from 1,
/// which keep `sum c_n^2 (x_{n+1} - x_n) = sum 1/n^2` finite for any set.
pub fn default_slopes(set: &SampleSet) -> Vec<f64> {
    set.points()
        .windows(2)
        .enumerate()
        .map(|(k, w)| 1.0 / ((k + 1) as f64 * (w[1] - w[0]).sqrt()))
        .collect()
}

/// Tent train vanishing on every point of `set`: on `[x_n, x_{n+1}]` it rises
/// with slope `c_n` to `c_n (x_{n+1} - x_n) / 2` at the midpoint and falls back.
pub fn sawtooth_witness(
    set: &SampleSet,
    slopes: Option<&[f64]>,
) -> Result<PiecewiseLinearFunction> {
    let owned;
    let slopes = match slopes {
        Some(s) => {
            check_len(set.len().saturating_sub(1), s.len())?;
            s
        }
        None => {
            owned = default_slopes(set);
            &owned
        }
    };
    let p = set.points();
    let mut knots = Vec::with_capacity(2 * p.len() - 1);
    let mut values = Vec::with_capacity(2 * p.len() - 1);
    knots.push(p[0]);
    values.push(0.0);
    for (w, &c) in p.windows(2).zip(slopes) {
        let mid = 0.5 * (w[0] + w[1]);
        if !(w[0] < mid && mid < w[1]) {
            return Err(Error::InvalidInput(format!(
                "interval [{}, {}] too narrow to place a midpoint",
                w[0], w[1]
            )));
        }
        knots.push(mid);
        values.push(c * (w[1] - w[0]) / 2.0);
        knots.push(w[1]);
        values.push(0.0);
    }
    PiecewiseLinearFunction::new(knots, values)
}

/// `sum_n c_n^2 (x_{n+1} - x_n)`, the closed-form seminorm of the saw-tooth.
pub fn sawtooth_norm_closed(set: &SampleSet, slopes: Option<&[f64]>) -> Result<f64> {
    let slopes = match slopes {
        Some(s) => {
            check_len(set.len().saturating_sub(1), s.len())?;
            s.to_vec()
        }
        None => default_slopes(set),
    };
    Ok(set
        .points()
        .windows(2)
        .zip(&slopes)
        .map(|(w, c)| c * c * (w[1] - w[0]))
        .sum())
}

/// `set` with the origin prepended when all points are positive, so that a
/// tent train on the half-line also covers `[0, x_1]`.
pub fn with_origin(set: &SampleSet) -> Result<SampleSet> {
    let p = set.points();
    if p[0] < 0.0 {
        return Err(Error::Domain(format!(
            "point {} lies left of the origin",
            p[0]
        )));
    }
    if p[0] == 0.0 {
        return Ok(set.clone());
    }
    let mut points = Vec::with_capacity(p.len() + 1);
    points.push(0.0);
    points.extend_from_slice(p);
    SampleSet::new(points)
}

/// Saw-tooth witness whose first tooth starts at the origin.
pub fn sawtooth_witness_anchored(
    set: &SampleSet,
    slopes: Option<&[f64]>,
) -> Result<PiecewiseLinearFunction> {
    sawtooth_witness(&with_origin(set)?, slopes)
}

/// Single unit-slope tooth on `[lo, hi]`.
pub fn tent_basis(lo: f64, hi: f64) -> Result<PiecewiseLinearFunction> {
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidInput(format!(
            "invalid tent interval [{lo}, {hi}]"
        )));
    }
    sawtooth_witness(&SampleSet::new(vec![lo, hi])?, Some(&[1.0]))
}

fn resolve_weights(n: usize, weights: Option<&[f64]>) -> Result<Vec<f64>> {
    match weights {
        None => Ok(vec![1.0; n]),
        Some(w) => {
            check_len(n, w.len())?;
            if let Some(bad) = w.iter().find(|&&v| !(v > 0.0) || !v.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "weight {bad} must be positive"
                )));
            }
            Ok(w.to_vec())
        }
    }
}

/// Solves `(alpha W^{-1} + G) c = y` with `W = diag(weights)` (all ones when
/// `None`). At `alpha = 0` this is exact interpolation.
pub fn ridge_interpolant(
    spec: &KernelSpec,
    set: &SampleSet,
    y: &[f64],
    alpha: f64,
    weights: Option<&[f64]>,
) -> Result<CoefficientFunction> {
    check_len(set.len(), y.len())?;
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidInput(format!("alpha {alpha} must be >= 0")));
    }
    let w = resolve_weights(set.len(), weights)?;
    let gram = build_gram(spec, set)?;
    let coeffs = if alpha == 0.0 {
        gram.solve_spd(y)?
    } else {
        let shift: Vec<f64> = w.iter().map(|wi| alpha / wi).collect();
        let system = crate::linalg::Cholesky::factor(&gram.matrix().with_diagonal_shift(&shift)?)?;
        system.solve(y)?
    };
    CoefficientFunction::new(spec.clone(), set.clone(), coeffs)
}

/// Outcome of [`obstruction_probe`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObstructionProbeResult {
    /// Attained minimum of the penalized objective over the span of
    /// `{K(., s) : s in S + {t0}}`.
    pub minimum_value: f64,
    /// Same minimum via `alpha * y0 * c_{t0}`, which holds at the optimum.
    pub minimum_value_dual: f64,
    /// Points of `S + {t0}` in increasing order.
    pub span_points: Vec<f64>,
    pub coefficients: Vec<f64>,
    /// Position of `t0` inside `span_points`.
    pub t0_index: usize,
    /// `f(x_j)` for each `x_j` in `S`.
    pub residuals_at_s: Vec<f64>,
    pub value_at_t0: f64,
    /// `||f||_H^2 = c^T G c`
    pub norm_sq: f64,
    pub alpha: f64,
    pub weights: Vec<f64>,
    pub t0: f64,
    pub y0: f64,
}

impl ObstructionProbeResult {
    /// `sum_j w_j f(x_j)^2 + (f(t0) - y0)^2 + alpha ||f||^2` from the stored parts.
    pub fn objective(&self) -> f64 {
        let fit: f64 = self
            .weights
            .iter()
            .zip(&self.residuals_at_s)
            .map(|(w, r)| w * r * r)
            .sum();
        let miss = self.value_at_t0 - self.y0;
        fit + miss * miss + self.alpha * self.norm_sq
    }

    pub fn minimizer(&self, spec: &KernelSpec) -> Result<CoefficientFunction> {
        CoefficientFunction::new(
            spec.clone(),
            SampleSet::new(self.span_points.clone())?,
            self.coefficients.clone(),
        )
    }
}

/// Minimizes `sum_j w_j |f(x_j)|^2 + |f(t0) - y0|^2 + alpha ||f||_H^2` over the
/// span of the kernel sections at `S + {t0}`. The representer theorem makes
/// that span sufficient for this objective. Targets are 0 at every `x_j` and
/// `y0` at `t0`; the minimizer solves `(G + alpha W~^{-1}) c = targets` where
/// `W~` carries the weights and a unit weight at `t0`.
pub fn obstruction_probe(
    spec: &KernelSpec,
    set: &SampleSet,
    t0: f64,
    y0: f64,
    alpha: f64,
    weights: Option<&[f64]>,
) -> Result<ObstructionProbeResult> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidInput(format!("alpha {alpha} must be > 0")));
    }
    if !y0.is_finite() {
        return Err(Error::InvalidInput(format!("y0 {y0} is not finite")));
    }
    set.validate_for(spec)?;
    spec.check_domain(t0)?;
    if set.contains(t0) {
        return Err(Error::InvalidInput(format!(
            "t0 = {t0} must not belong to S"
        )));
    }
    let w = resolve_weights(set.len(), weights)?;

    let t0_index = set.points().partition_point(|&p| p < t0);
    let mut span_points = set.points().to_vec();
    span_points.insert(t0_index, t0);
    let mut span_weights = w.clone();
    span_weights.insert(t0_index, 1.0);
    let mut targets = vec![0.0; span_points.len()];
    targets[t0_index] = y0;

    let span = SampleSet::new(span_points.clone())?;
    let gram = build_gram(spec, &span)?;
    let shift: Vec<f64> = span_weights.iter().map(|wi| alpha / wi).collect();
    let system = crate::linalg::Cholesky::factor(&gram.matrix().with_diagonal_shift(&shift)?)?;
    let coefficients = system.solve(&targets)?;

    let fitted = gram.mul_vec(&coefficients)?;
    let value_at_t0 = fitted[t0_index];
    let residuals_at_s: Vec<f64> = fitted
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != t0_index)
        .map(|(_, v)| *v)
        .collect();
    let norm_sq = gram.matrix().bilinear(&coefficients, &coefficients)?;

    let mut result = ObstructionProbeResult {
        minimum_value: 0.0,
        minimum_value_dual: alpha * y0 * coefficients[t0_index],
        span_points,
        coefficients,
        t0_index,
        residuals_at_s,
        value_at_t0,
        norm_sq,
        alpha,
        weights: w,
        t0,
        y0,
    };
    result.minimum_value = result.objective();
    Ok(result)
}
