//! Exact integer arithmetic for the binomial kernel and the Pascal factorization
//! of its Gram matrices.
//!
//! Everything here is `i128` with checked operations. Overflow is reported as
//! [`Error::Capacity`], never wrapped.

use crate::error::{Error, Result};

/// Largest Pascal order supported by [`pascal_lower`] and friends.
pub const MAX_PASCAL_ORDER: usize = 60;

/// Exact binomial coefficient `C(x, n)`, zero when `n > x`.
pub fn binom(x: u64, n: u64) -> Result<i128> {
    if n > x {
        return Ok(0);
    }
    let k = n.min(x - n);
    let mut acc: i128 = 1;
    for i in 0..k {
        // acc = C(x, i); acc * (x - i) = C(x, i + 1) * (i + 1), so the division is exact.
        acc = acc
            .checked_mul((x - i) as i128)
            .ok_or(Error::Capacity { x, n })?
            / (i as i128 + 1);
    }
    Ok(acc)
}

/// Exact binomial kernel `K_b(x, y) = sum_{k=0}^{min(x,y)} C(x,k) C(y,k)`.
pub fn binomial_kernel_exact(x: u64, y: u64) -> Result<i128> {
    let cap = Error::Capacity { x, n: y };
    let mut sum: i128 = 0;
    for k in 0..=x.min(y) {
        let term = binom(x, k)?
            .checked_mul(binom(y, k)?)
            .ok_or_else(|| cap.clone())?;
        sum = sum.checked_add(term).ok_or_else(|| cap.clone())?;
    }
    Ok(sum)
}

/// Dense square matrix of exact integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Result<i128>) -> Result<Self> {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j)?);
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> i128 {
        self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[i128] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.entries[j * n + i] = self.entries[i * n + j];
            }
        }
        t
    }

    /// Exact product; overflow reports the offending (row, col) as a capacity error.
    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: rhs.dim,
            });
        }
        let n = self.dim;
        IntMatrix::from_fn(n, |i, j| {
            let cap = || Error::Capacity {
                x: i as u64,
                n: j as u64,
            };
            let mut acc: i128 = 0;
            for k in 0..n {
                let p = self.entries[i * n + k]
                    .checked_mul(rhs.entries[k * n + j])
                    .ok_or_else(cap)?;
                acc = acc.checked_add(p).ok_or_else(cap)?;
            }
            Ok(acc)
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    /// Row-major conversion to doubles.
    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|&v| v as f64).collect()
    }
}

/// Lower-triangular truncated Pascal triangle: entry `(x, y)` is `C(x, y)` for
/// `y <= x <= order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PascalMatrix {
    order: usize,
    entries: IntMatrix,
}

impl PascalMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, x: usize, y: usize) -> i128 {
        self.entries.get(x, y)
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.entries
    }
}

fn check_pascal_order(n: usize) -> Result<()> {
    if n > MAX_PASCAL_ORDER {
        return Err(Error::Capacity {
            x: n as u64,
            n: MAX_PASCAL_ORDER as u64,
        });
    }
    Ok(())
}

/// `(n+1) x (n+1)` Pascal matrix.
pub fn pascal_lower(n: usize) -> Result<PascalMatrix> {
    check_pascal_order(n)?;
    let entries = IntMatrix::from_fn(n + 1, |x, y| binom(x as u64, y as u64))?;
    Ok(PascalMatrix { order: n, entries })
}

/// Signed Pascal matrix, `(-1)^(x-y) C(x, y)`, the exact inverse of [`pascal_lower`].
pub fn pascal_inverse(n: usize) -> Result<IntMatrix> {
    check_pascal_order(n)?;
    IntMatrix::from_fn(n + 1, |x, y| {
        let c = binom(x as u64, y as u64)?;
        Ok(if (x + y) % 2 == 0 { c } else { -c })
    })
}

/// Exact binomial Gram matrix over `{0, ..., n}`, computed by the defining sums.
pub fn binomial_gram_exact(n: usize) -> Result<IntMatrix> {
    IntMatrix::from_fn(n + 1, |x, y| binomial_kernel_exact(x as u64, y as u64))
}

/// Exact inverse of the binomial Gram over `{0, ..., n}` as `L^{-T} L^{-1}`.
pub fn binomial_gram_inverse_exact(n: usize) -> Result<IntMatrix> {
    let linv = pascal_inverse(n)?;
    linv.transpose().checked_mul(&linv)
}

/// `sum_{k=x}^{n} C(k, x)^2`, the squared norm of the projection of `delta_x`
/// onto the span over `{0, ..., n}`.
pub fn binomial_projection_norm_closed(x: u64, n: u64) -> Result<i128> {
    if n < x {
        return Err(Error::InvalidInput(format!(
            "projection order n={n} must be at least x={x}"
        )));
    }
    let mut sum: i128 = 0;
    for k in x..=n {
        let c = binom(k, x)?;
        let sq = c.checked_mul(c).ok_or(Error::Capacity { x, n })?;
        sum = sum.checked_add(sq).ok_or(Error::Capacity { x, n })?;
    }
    Ok(sum)
}
