//! The kernel zoo: sinc, Brownian motion, Brownian bridge, binomial, and
//! user-supplied tables, together with the sample sets they are evaluated on.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact;
use crate::gram::build_gram;
use crate::linalg;

/// Largest integer argument accepted by the binomial kernel. `K_b(x, x) = C(2x, x)`
/// stays inside `i128` up to here.
pub const MAX_BINOMIAL_ARG: u64 = 120;

/// A positive-definite kernel on a subset of the real line.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelSpec {
    /// Shannon kernel `sin(pi (s - t)) / (pi (s - t))` on all of R.
    Sinc,
    /// `min(s, t)` on `[0, inf)`.
    BrownianMotion,
    /// `min(s, t) - s t` on `(0, 1)`.
    BrownianBridge,
    /// `sum_k C(x, k) C(y, k)` on the non-negative integers.
    Binomial,
    /// Explicit symmetric table over a finite point set.
    Tabulated(Arc<KernelTable>),
}

/// Symmetric value table. Values are stored once per unordered pair.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelTable {
    points: Vec<f64>,
    packed: Vec<f64>,
    source: Option<String>,
}

impl KernelTable {
    /// Builds a table from a full square matrix, rejecting any asymmetry.
    pub fn new(points: Vec<f64>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::InvalidInput("kernel table has no points".into()));
        }
        for w in points.windows(2) {
            if !(w[0] < w[1]) {
                return Err(Error::InvalidInput(
                    "kernel table points must be strictly increasing".into(),
                ));
            }
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(format!(
                "kernel table must be {n}x{n} to match its header"
            )));
        }
        let mut packed = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidInput(format!(
                        "kernel table is not symmetric at ({i}, {j})"
                    )));
                }
                packed.push(rows[i][j]);
            }
        }
        Ok(Self {
            points,
            packed,
            source: None,
        })
    }

    /// Parses CSV: a header row with the points, followed by the symmetric body.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty kernel table".into()))?;
        let points = parse_csv_row(header)?;
        let rows = lines.map(parse_csv_row).collect::<Result<Vec<_>>>()?;
        Self::new(points, rows)
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut table = Self::from_csv_str(&text)?;
        table.source = Some(path.display().to_string());
        Ok(table)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }

    fn index_of(&self, t: f64) -> Option<usize> {
        self.points.iter().position(|&p| p == t)
    }

    fn value(&self, i: usize, j: usize) -> f64 {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let n = self.points.len();
        // rows 0..i of the packed upper triangle hold n, n-1, ..., n-i+1 entries
        let start = i * n - i * (i.max(1) - 1) / 2;
        self.packed[start + (j - i)]
    }
}

fn parse_csv_row(line: &str) -> Result<Vec<f64>> {
    line.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("bad number {tok:?}: {e}")))
        })
        .collect()
}

fn sinc_pi(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-8 {
        let px = PI * ax;
        1.0 - px * px / 6.0
    } else {
        (PI * ax).sin() / (PI * ax)
    }
}

fn as_count(t: f64) -> Option<u64> {
    if t >= 0.0 && t.fract() == 0.0 && t <= MAX_BINOMIAL_ARG as f64 {
        Some(t as u64)
    } else {
        None
    }
}

impl KernelSpec {
    /// Parses the text form `sinc | brownian | bridge | binomial | tabulated:<path>`,
    /// loading the table file for the tabulated variant.
    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    pub fn name(&self) -> &'static str {
        match self {
            KernelSpec::Sinc => "sinc",
            KernelSpec::BrownianMotion => "brownian",
            KernelSpec::BrownianBridge => "bridge",
            KernelSpec::Binomial => "binomial",
            KernelSpec::Tabulated(_) => "tabulated",
        }
    }

    /// Checks that `t` lies in the kernel's domain.
    pub fn check_domain(&self, t: f64) -> Result<()> {
        if !t.is_finite() {
            return Err(Error::Domain(format!(
                "{}: argument {t} is not finite",
                self.name()
            )));
        }
        match self {
            KernelSpec::Sinc => Ok(()),
            KernelSpec::BrownianMotion if t < 0.0 => Err(Error::Domain(format!(
                "brownian: argument {t} must be >= 0"
            ))),
            KernelSpec::BrownianBridge if !(t > 0.0 && t < 1.0) => Err(Error::Domain(format!(
                "bridge: argument {t} must lie in the open interval (0, 1)"
            ))),
            KernelSpec::Binomial if as_count(t).is_none() => Err(Error::Domain(format!(
                "binomial: argument {t} must be an integer in [0, {MAX_BINOMIAL_ARG}]"
            ))),
            KernelSpec::Tabulated(table) if table.index_of(t).is_none() => Err(Error::Domain(
                format!("tabulated: argument {t} is not a table point"),
            )),
            _ => Ok(()),
        }
    }

    /// `K(s, t)`.
    pub fn eval(&self, s: f64, t: f64) -> Result<f64> {
        self.check_domain(s)?;
        self.check_domain(t)?;
        Ok(match self {
            KernelSpec::Sinc => sinc_pi((s - t).abs()),
            KernelSpec::BrownianMotion => s.min(t),
            KernelSpec::BrownianBridge => s.min(t) - s * t,
            KernelSpec::Binomial => {
                let (x, y) = (s as u64, t as u64);
                exact::binomial_kernel_exact(x, y)? as f64
            }
            KernelSpec::Tabulated(table) => {
                // Domain check above guarantees both indices exist.
                let i = table.index_of(s).unwrap_or_default();
                let j = table.index_of(t).unwrap_or_default();
                table.value(i, j)
            }
        })
    }

    /// True when Gram entries are exact integers (binomial kernel).
    pub fn is_integer_valued(&self) -> bool {
        matches!(self, KernelSpec::Binomial)
    }

    /// Exact integer kernel value, only for integer-valued kernels.
    pub fn eval_exact(&self, s: f64, t: f64) -> Result<i128> {
        match self {
            KernelSpec::Binomial => {
                self.check_domain(s)?;
                self.check_domain(t)?;
                exact::binomial_kernel_exact(s as u64, t as u64)
            }
            other => Err(Error::InvalidInput(format!(
                "{} kernel has no exact integer form",
                other.name()
            ))),
        }
    }
}

/// Free-function form of [`KernelSpec::eval`].
pub fn eval_kernel(spec: &KernelSpec, s: f64, t: f64) -> Result<f64> {
    spec.eval(s, t)
}

impl fmt::Display for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelSpec::Tabulated(table) => {
                write!(f, "tabulated:{}", table.source().unwrap_or("<inline>"))
            }
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for KernelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "sinc" => Ok(KernelSpec::Sinc),
            "brownian" => Ok(KernelSpec::BrownianMotion),
            "bridge" => Ok(KernelSpec::BrownianBridge),
            "binomial" => Ok(KernelSpec::Binomial),
            _ => match s.strip_prefix("tabulated:") {
                Some(path) if !path.is_empty() => Ok(KernelSpec::Tabulated(Arc::new(
                    KernelTable::from_csv_path(Path::new(path))?,
                ))),
                _ => Err(Error::Parse(format!(
                    "unknown kernel {s:?}; expected sinc | brownian | bridge | binomial | tabulated:<path>"
                ))),
            },
        }
    }
}

/// Strictly increasing, non-empty, finite sequence of sample points.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    points: Vec<f64>,
}

impl SampleSet {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("sample set is empty".into()));
        }
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "sample point {p} is not finite"
            )));
        }
        if let Some(i) = points.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidInput(format!(
                "sample points must be strictly increasing: points[{i}] = {} >= points[{}] = {}",
                points[i],
                i + 1,
                points[i + 1]
            )));
        }
        Ok(Self { points })
    }

    /// Builds the set and checks every point against the kernel's domain.
    pub fn for_kernel(points: Vec<f64>, spec: &KernelSpec) -> Result<Self> {
        let set = Self::new(points)?;
        set.validate_for(spec)?;
        Ok(set)
    }

    /// Consecutive integers `lo..=hi`.
    pub fn integers(lo: i64, hi: i64) -> Result<Self> {
        Self::new((lo..=hi).map(|k| k as f64).collect())
    }

    pub fn validate_for(&self, spec: &KernelSpec) -> Result<()> {
        self.points.iter().try_for_each(|&p| spec.check_domain(p))
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<f64> {
        self.points.get(i).copied()
    }

    pub fn contains(&self, t: f64) -> bool {
        self.points.contains(&t)
    }

    /// The first `n` points.
    pub fn prefix(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.len() {
            return Err(Error::InvalidInput(format!(
                "prefix length {n} outside 1..={}",
                self.len()
            )));
        }
        Ok(Self {
            points: self.points[..n].to_vec(),
        })
    }

    /// `N` when the set is exactly `{-N, ..., N}`.
    pub fn symmetric_integer_radius(&self) -> Option<u64> {
        let n = self.len();
        if n.is_multiple_of(2) {
            return None;
        }
        let radius = (n / 2) as f64;
        let ok = self
            .points
            .iter()
            .enumerate()
            .all(|(i, &p)| p == i as f64 - radius);
        ok.then_some(n as u64 / 2)
    }
}

/// Result of [`check_positive_definite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdCheck {
    pub positive_definite: bool,
    pub min_eigenvalue: f64,
}

/// Smallest eigenvalue of the Gram matrix over `set`, with the flag
/// `min_eigenvalue >= -tol`.
pub fn check_positive_definite(spec: &KernelSpec, set: &SampleSet, tol: f64) -> Result<PdCheck> {
    let gram = build_gram(spec, set)?;
    let min_eigenvalue = linalg::symmetric_eigenvalues(gram.matrix())[0];
    Ok(PdCheck {
        positive_definite: min_eigenvalue >= -tol,
        min_eigenvalue,
    })
}
