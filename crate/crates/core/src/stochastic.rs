//! Karhunen-Loeve simulation of Brownian motion and the Brownian bridge on
//! `[0, 1]` from the Haar system.
//!
//! `B_t = sum_k (int_0^t psi_k) Z_k` with `psi_k` running over the constant
//! function and the Haar wavelets of levels `0..=depth`, and `Z_k` i.i.d.
//! standard normals. Antiderivatives of Haar functions are triangles, so each
//! coefficient is exact. The bridge is `B_t - t B_1`.
//!
//! Randomness: each path draws from its own ChaCha8 stream, keyed by the seed
//! and selected by the path index, so results do not depend on how paths are
//! scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gram::fmt_f64;
use crate::linalg::SymMatrix;

/// Which process an ensemble samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Process {
    Brownian,
    Bridge,
}

/// Haar system on `[0, 1]`: the constant plus `2^j` wavelets at each level
/// `j = 0..=depth`, `2^(depth+1)` functions in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HaarBasis {
    depth: u32,
}

impl HaarBasis {
    pub const MAX_DEPTH: u32 = 24;

    pub fn new(depth: u32) -> Result<Self> {
        if depth > Self::MAX_DEPTH {
            return Err(Error::InvalidInput(format!(
                "basis depth {depth} exceeds {}",
                Self::MAX_DEPTH
            )));
        }
        Ok(Self { depth })
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn len(&self) -> usize {
        1usize << (self.depth + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `int_0^t psi_{j,k}`: a triangle on `[k 2^-j, (k+1) 2^-j]` with slope
    /// `2^(j/2)` and peak `2^(-j/2 - 1)`.
    pub fn wavelet_antiderivative(level: u32, k: usize, t: f64) -> f64 {
        let scale = (1u64 << level) as f64;
        let u = t * scale - k as f64;
        if !(u > 0.0 && u < 1.0) {
            return 0.0;
        }
        let tri = if u <= 0.5 { u } else { 1.0 - u };
        tri / scale.sqrt()
    }

    /// Non-zero antiderivative values at `t`: the constant term first, then one
    /// `(basis index, value)` per level.
    fn active_terms(&self, t: f64) -> impl Iterator<Item = (usize, f64)> + '_ {
        std::iter::once((0, t)).chain((0..=self.depth).filter_map(move |j| {
            let width = (1usize << j) as f64;
            let k = ((t * width).floor() as usize).min((1usize << j) - 1);
            let v = Self::wavelet_antiderivative(j, k, t);
            // index layout: 0 = constant, then level j occupies [2^j, 2^(j+1))
            (v != 0.0).then_some(((1usize << j) + k, v))
        }))
    }

    /// Full antiderivative vector `(int_0^t psi_k)_k`.
    pub fn antiderivatives(&self, t: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        for (i, v) in self.active_terms(t) {
            out[i] = v;
        }
        out
    }
}

/// Exact covariance of the truncated expansion at `(s, t)`.
pub fn truncated_covariance(process: Process, depth: u32, s: f64, t: f64) -> Result<f64> {
    let basis = HaarBasis::new(depth)?;
    check_unit(s)?;
    check_unit(t)?;
    let a = basis.antiderivatives(s);
    let b = basis.antiderivatives(t);
    Ok(match process {
        Process::Brownian => a.iter().zip(&b).map(|(x, y)| x * y).sum(),
        Process::Bridge => {
            // only the constant has a non-zero antiderivative at 1
            let one = basis.antiderivatives(1.0);
            a.iter()
                .zip(&b)
                .zip(&one)
                .map(|((x, y), o)| (x - s * o) * (y - t * o))
                .sum()
        }
    })
}

/// Covariance matrix of the truncated process over `grid`.
pub fn truncated_covariance_matrix(
    process: Process,
    depth: u32,
    grid: &[f64],
) -> Result<SymMatrix> {
    SymMatrix::from_fn(grid.len(), |i, j| {
        truncated_covariance(process, depth, grid[i], grid[j])
    })
}

/// Exact covariance of the untruncated process.
pub fn exact_covariance(process: Process, s: f64, t: f64) -> f64 {
    match process {
        Process::Brownian => s.min(t),
        Process::Bridge => s.min(t) - s * t,
    }
}

fn check_unit(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("time {t} must lie in [0, 1]")));
    }
    Ok(())
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("time grid is empty".into()));
    }
    grid.iter().try_for_each(|&t| check_unit(t))?;
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidInput(
            "time grid must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Simulated paths on a fixed grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathEnsemble {
    pub process: Process,
    pub time_grid: Vec<f64>,
    /// `paths[p][g]` is path `p` at `time_grid[g]`.
    pub paths: Vec<Vec<f64>>,
    pub seed: u64,
    pub basis_depth: u32,
}

impl PathEnsemble {
    pub fn n_paths(&self) -> usize {
        self.paths.len()
    }

    /// One row per path.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.time_grid.iter().map(|t| fmt_f64(*t)).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for p in &self.paths {
            let row: Vec<String> = p.iter().map(|v| fmt_f64(*v)).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

fn path_stream(seed: u64, path: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(path as u64);
    rng
}

fn simulate(
    process: Process,
    grid: &[f64],
    n_paths: usize,
    depth: u32,
    seed: u64,
) -> Result<PathEnsemble> {
    check_grid(grid)?;
    if n_paths == 0 {
        return Err(Error::InvalidInput("n_paths must be positive".into()));
    }
    let basis = HaarBasis::new(depth)?;
    let terms: Vec<Vec<(usize, f64)>> = grid
        .iter()
        .map(|&t| basis.active_terms(t).collect())
        .collect();

    let paths = (0..n_paths)
        .into_par_iter()
        .map(|p| {
            let mut rng = path_stream(seed, p);
            let z: Vec<f64> = (0..basis.len())
                .map(|_| StandardNormal.sample(&mut rng))
                .collect();
            let b1 = z[0];
            grid.iter()
                .zip(&terms)
                .map(|(&t, active)| {
                    let bt: f64 = active.iter().map(|&(k, v)| v * z[k]).sum();
                    match process {
                        Process::Brownian => bt,
                        Process::Bridge if t == 0.0 || t == 1.0 => 0.0,
                        Process::Bridge => bt - t * b1,
                    }
                })
                .collect()
        })
        .collect();
    Ok(PathEnsemble {
        process,
        time_grid: grid.to_vec(),
        paths,
        seed,
        basis_depth: depth,
    })
}

/// Brownian paths on `grid` ⊂ `[0, 1]`; `B_0 = 0` exactly.
pub fn simulate_brownian(
    grid: &[f64],
    n_paths: usize,
    basis_depth: u32,
    seed: u64,
) -> Result<PathEnsemble> {
    simulate(Process::Brownian, grid, n_paths, basis_depth, seed)
}

/// Bridge paths `B_t - t B_1`; values at `t = 0` and `t = 1` are pinned to 0.
pub fn simulate_bridge(
    grid: &[f64],
    n_paths: usize,
    basis_depth: u32,
    seed: u64,
) -> Result<PathEnsemble> {
    simulate(Process::Bridge, grid, n_paths, basis_depth, seed)
}

/// Sample covariance and its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CovarianceEstimate {
    pub estimate: f64,
    pub std_error: f64,
}

/// Unbiased covariance across paths of the values at two grid indices. The
/// standard error is that of the mean of centred products. Sums run in path
/// order.
pub fn empirical_covariance(
    e: &PathEnsemble,
    s_index: usize,
    t_index: usize,
) -> Result<CovarianceEstimate> {
    let n = e.n_paths();
    if n < 2 {
        return Err(Error::InvalidInput("need at least 2 paths".into()));
    }
    let g = e.time_grid.len();
    if s_index >= g || t_index >= g {
        return Err(Error::InvalidInput(format!(
            "grid index out of range: ({s_index}, {t_index}) with {g} grid points"
        )));
    }
    let nf = n as f64;
    let mean = |idx: usize| e.paths.iter().map(|p| p[idx]).sum::<f64>() / nf;
    let (ms, mt) = (mean(s_index), mean(t_index));
    let products: Vec<f64> = e
        .paths
        .iter()
        .map(|p| (p[s_index] - ms) * (p[t_index] - mt))
        .collect();
    let sum: f64 = products.iter().sum();
    let estimate = sum / (nf - 1.0);
    let pmean = sum / nf;
    let pvar = products
        .iter()
        .map(|x| (x - pmean) * (x - pmean))
        .sum::<f64>()
        / (nf - 1.0);
    Ok(CovarianceEstimate {
        estimate,
        std_error: (pvar / nf).sqrt(),
    })
}

/// Grid `start, start + step, ...` up to `stop` inclusive (within half a step).
pub fn uniform_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
        return Err(Error::InvalidInput(format!(
            "invalid grid {start}:{stop}:{step}"
        )));
    }
    let count = ((stop - start) / step + 0.5).floor() as usize;
    Ok((0..=count)
        .map(|k| (start + k as f64 * step).min(stop))
        .collect())
}

/// Mean and variance at each grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleSummary {
    pub grid: Vec<f64>,
    pub mean: Vec<f64>,
    pub var: Vec<f64>,
    /// Exact truncated variance at each grid point.
    pub var_truncated: Vec<f64>,
    pub var_std_error: Vec<f64>,
}

pub fn summarize(e: &PathEnsemble) -> Result<EnsembleSummary> {
    let n = e.n_paths() as f64;
    let mut mean = Vec::new();
    let mut var = Vec::new();
    let mut var_truncated = Vec::new();
    let mut var_std_error = Vec::new();
    for (g, &t) in e.time_grid.iter().enumerate() {
        mean.push(e.paths.iter().map(|p| p[g]).sum::<f64>() / n);
        let c = empirical_covariance(e, g, g)?;
        var.push(c.estimate);
        var_std_error.push(c.std_error);
        var_truncated.push(truncated_covariance(e.process, e.basis_depth, t, t)?);
    }
    Ok(EnsembleSummary {
        grid: e.time_grid.clone(),
        mean,
        var,
        var_truncated,
        var_std_error,
    })
}
