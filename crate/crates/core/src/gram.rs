//! Gram matrices over finite sample sets, their SPD solves, and the closed-form
//! determinants and inverses available for the Brownian, bridge, and binomial
//! kernels.
//!
//! Each closed form has an independent numerical counterpart (dense LU
//! determinant, Cholesky solve) so the two can be checked against each other.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{check_len, Error, Result};
use crate::exact::{self, IntMatrix};
use crate::kernel::{KernelSpec, SampleSet};
use crate::linalg::{self, Cholesky, SymMatrix};

/// Symmetric Gram matrix `K_F = (K(s_i, s_j))` with a lazily computed Cholesky
/// factor.
#[derive(Debug)]
pub struct GramMatrix {
    spec: KernelSpec,
    points: SampleSet,
    matrix: SymMatrix,
    factor: OnceLock<Result<Cholesky>>,
}

impl Clone for GramMatrix {
    fn clone(&self) -> Self {
        Self {
            spec: self.spec.clone(),
            points: self.points.clone(),
            matrix: self.matrix.clone(),
            factor: OnceLock::new(),
        }
    }
}

impl GramMatrix {
    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn points(&self) -> &SampleSet {
        &self.points
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.matrix.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix.get(i, j)
    }

    /// Cholesky factor, computed once and shared.
    pub fn cholesky(&self) -> Result<&Cholesky> {
        self.factor
            .get_or_init(|| Cholesky::factor(&self.matrix))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Solves `G v = rhs`. Fails with the pivot index when `G` is singular or
    /// indefinite; no regularization is applied.
    pub fn solve_spd(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        check_len(self.order(), rhs.len())?;
        self.cholesky()?.solve(rhs)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.matrix.mul_vec(v)
    }

    pub fn det_lu(&self) -> f64 {
        linalg::lu_determinant(&self.matrix)
    }

    /// Closed-form determinant when the kernel has one.
    pub fn det_closed(&self) -> Option<f64> {
        match self.spec {
            KernelSpec::BrownianMotion => det_brownian_closed(&self.points).ok(),
            KernelSpec::BrownianBridge => det_bridge_closed(&self.points).ok(),
            _ => None,
        }
    }

    /// One matrix row per line, full symmetric storage.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.order() {
            let row: Vec<String> = self.matrix.row(i).iter().map(|v| fmt_f64(*v)).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    pub fn report(&self) -> GramReport {
        GramReport {
            order: self.order(),
            points: self.points.points().to_vec(),
            entries: (0..self.order())
                .map(|i| self.matrix.row(i).to_vec())
                .collect(),
            det_closed: self.det_closed(),
            det_lu: self.det_lu(),
        }
    }
}

/// 17 significant digits, enough to round-trip any double.
pub(crate) fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// JSON form of a Gram matrix.
#[derive(Debug, Clone, Serialize)]
pub struct GramReport {
    pub order: usize,
    pub points: Vec<f64>,
    pub entries: Vec<Vec<f64>>,
    pub det_closed: Option<f64>,
    pub det_lu: f64,
}

/// Builds the full Gram matrix. Entries equal `spec.eval` bit-for-bit.
pub fn build_gram(spec: &KernelSpec, set: &SampleSet) -> Result<GramMatrix> {
    set.validate_for(spec)?;
    let p = set.points();
    let matrix = SymMatrix::from_fn(set.len(), |i, j| spec.eval(p[i], p[j]))?;
    Ok(GramMatrix {
        spec: spec.clone(),
        points: set.clone(),
        matrix,
        factor: OnceLock::new(),
    })
}

/// Free-function form of [`GramMatrix::solve_spd`].
pub fn solve_spd(gram: &GramMatrix, rhs: &[f64]) -> Result<Vec<f64>> {
    gram.solve_spd(rhs)
}

/// Exact integer Gram matrix for integer-valued kernels.
pub fn build_gram_exact(spec: &KernelSpec, set: &SampleSet) -> Result<IntMatrix> {
    set.validate_for(spec)?;
    let p = set.points();
    IntMatrix::from_fn(set.len(), |i, j| spec.eval_exact(p[i], p[j]))
}

/// `x_1 (x_2 - x_1) ... (x_n - x_{n-1})`, the determinant of the `min(x_i, x_j)` matrix.
pub fn det_brownian_closed(set: &SampleSet) -> Result<f64> {
    set.validate_for(&KernelSpec::BrownianMotion)?;
    Ok(increment_product(set.points()))
}

/// `x_1 (x_2 - x_1) ... (x_n - x_{n-1}) (1 - x_n)`, the bridge Gram determinant.
pub fn det_bridge_closed(set: &SampleSet) -> Result<f64> {
    set.validate_for(&KernelSpec::BrownianBridge)?;
    let p = set.points();
    Ok(increment_product(p) * (1.0 - p[p.len() - 1]))
}

/// Determinant of the trailing principal submatrix (rows/cols 2..n) of the
/// Brownian Gram: `x_2 (x_3 - x_2) ... (x_n - x_{n-1})`, 1 for a single point.
pub fn brownian_trailing_minor_closed(set: &SampleSet) -> Result<f64> {
    set.validate_for(&KernelSpec::BrownianMotion)?;
    let p = set.points();
    Ok(if p.len() == 1 {
        1.0
    } else {
        increment_product(&p[1..])
    })
}

fn increment_product(p: &[f64]) -> f64 {
    p.windows(2).fold(p[0], |acc, w| acc * (w[1] - w[0]))
}

/// `K_n^{-1}` for the binomial Gram over `{0, ..., n}`, from the exact Pascal
/// inverses `L^{-T} L^{-1}`, converted to doubles at the end. Row-major
/// `(n+1) x (n+1)`.
pub fn binomial_gram_inverse(n: usize) -> Result<SymMatrix> {
    let exact = exact::binomial_gram_inverse_exact(n)?;
    SymMatrix::from_row_major(n + 1, exact.to_f64())
}

/// Fails unless every point is strictly positive (the Brownian Gram is
/// singular at 0).
pub fn require_positive(set: &SampleSet) -> Result<()> {
    if let Some(p) = set.points().iter().find(|&&p| p <= 0.0) {
        return Err(Error::Domain(format!(
            "point {p} must be > 0 for a nonsingular Brownian Gram"
        )));
    }
    Ok(())
}
