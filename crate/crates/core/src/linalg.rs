//! Dense symmetric matrices and the factorizations used on them.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{check_len, Error, Result};

/// A pivot is rejected when it falls below this fraction of the original
/// diagonal entry. Matrices with condition number up to ~1e12 pass.
pub const RELATIVE_PIVOT_TOL: f64 = 1e-13;

/// Dense symmetric matrix in full row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    /// Fills the upper triangle from `f` and mirrors it, so the result is
    /// symmetric bit-for-bit.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Result<f64>) -> Result<Self> {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j)?;
                data[i * dim + j] = v;
                data[j * dim + i] = v;
            }
        }
        Ok(Self { dim, data })
    }

    /// Wraps row-major data, checking symmetry exactly.
    pub fn from_row_major(dim: usize, data: Vec<f64>) -> Result<Self> {
        check_len(dim * dim, data.len())?;
        for i in 0..dim {
            for j in i + 1..dim {
                if data[i * dim + j] != data[j * dim + i] {
                    return Err(Error::InvalidInput(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { dim, data })
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn as_row_major(&self) -> &[f64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    /// Copy with `shift[i]` added to diagonal entry `i`.
    pub fn with_diagonal_shift(&self, shift: &[f64]) -> Result<Self> {
        check_len(self.dim, shift.len())?;
        let mut out = self.clone();
        for (i, s) in shift.iter().enumerate() {
            out.data[i * self.dim + i] += s;
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_len(self.dim, v.len())?;
        Ok((0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `u^T M v`.
    pub fn bilinear(&self, u: &[f64], v: &[f64]) -> Result<f64> {
        let mv = self.mul_vec(v)?;
        check_len(self.dim, u.len())?;
        Ok(u.iter().zip(&mv).map(|(a, b)| a * b).sum())
    }

    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }
}

/// Lower-triangular Cholesky factor `L` with `A = L L^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cholesky {
    dim: usize,
    lower: Vec<f64>,
}

impl Cholesky {
    /// Factors `a`. No jitter is ever added: a pivot that is non-positive or
    /// below [`RELATIVE_PIVOT_TOL`] times its diagonal entry is reported.
    pub fn factor(a: &SymMatrix) -> Result<Self> {
        let n = a.dim;
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = a.get(j, j);
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !(d > RELATIVE_PIVOT_TOL * a.get(j, j).abs()) || !d.is_finite() {
                return Err(Error::Singular { pivot: j });
            }
            let djj = d.sqrt();
            l[j * n + j] = djj;
            for i in j + 1..n {
                let mut s = a.get(i, j);
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                l[i * n + j] = s / djj;
            }
        }
        Ok(Self { dim: n, lower: l })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lower(&self, i: usize, j: usize) -> f64 {
        self.lower[i * self.dim + j]
    }

    /// Solves `L z = b`. Because `L` is lower-triangular, the first `k` entries
    /// of `z` are the solution for the leading `k x k` block as well.
    pub fn forward(&self, b: &[f64]) -> Result<Vec<f64>> {
        check_len(self.dim, b.len())?;
        let n = self.dim;
        let mut z = b.to_vec();
        for i in 0..n {
            let mut s = z[i];
            for k in 0..i {
                s -= self.lower[i * n + k] * z[k];
            }
            z[i] = s / self.lower[i * n + i];
        }
        Ok(z)
    }

    /// Solves `L^T x = z`.
    pub fn backward(&self, z: &[f64]) -> Result<Vec<f64>> {
        check_len(self.dim, z.len())?;
        let n = self.dim;
        let mut x = z.to_vec();
        for i in (0..n).rev() {
            let mut s = x[i];
            for k in i + 1..n {
                s -= self.lower[k * n + i] * x[k];
            }
            x[i] = s / self.lower[i * n + i];
        }
        Ok(x)
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        self.backward(&self.forward(b)?)
    }

    /// `L L^T`.
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.dim;
        let data = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                (0..=i.min(j))
                    .map(|k| self.lower[i * n + k] * self.lower[j * n + k])
                    .sum()
            })
            .collect();
        SymMatrix { dim: n, data }
    }
}

/// Determinant by partial-pivot LU.
pub fn lu_determinant(a: &SymMatrix) -> f64 {
    a.to_nalgebra().lu().determinant()
}

/// Eigenvalues in ascending order.
pub fn symmetric_eigenvalues(a: &SymMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(a.to_nalgebra())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigenvalues (ascending) and matching unit eigenvectors.
pub fn symmetric_eigen(a: &SymMatrix) -> Vec<(f64, Vec<f64>)> {
    let eig = SymmetricEigen::new(a.to_nalgebra());
    let mut pairs: Vec<(f64, Vec<f64>)> = eig
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(k, &lambda)| (lambda, eig.eigenvectors.column(k).iter().copied().collect()))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs
}

/// Relative Frobenius distance `||a - b||_F / ||a||_F`.
pub fn relative_frobenius(a: &SymMatrix, b: &SymMatrix) -> f64 {
    let num: f64 = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    let den: f64 = a.data.iter().map(|x| x * x).sum();
    (num / den).sqrt()
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}
