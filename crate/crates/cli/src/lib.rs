//! Command-line front end for `kernsamp`.
//!
//! Every command writes a report (JSON by default, CSV where a table makes
//! sense) that echoes the resolved arguments, so a report is enough to re-run
//! the computation. Failures exit with 1 for rejected input and 2 for
//! numerical failure, after printing a one-line JSON diagnostic on stderr.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kernsamp::frame::{self, FrameReport};
use kernsamp::interpolation::{self, cm_norm_sq};
use kernsamp::mass_probe::{self, DEFAULT_REL_INCREMENT_THRESHOLD, DEFAULT_WINDOW};
use kernsamp::report::{to_json, SCHEMA_VERSION};
use kernsamp::stochastic::{self, Process};
use kernsamp::{build_gram, Error, KernelSpec, SampleSet};

/// Environment variable naming the directory for relative `--out` paths.
pub const OUT_DIR_ENV: &str = "KERNSAMP_OUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InterpolationMode {
    /// Kernel ridge interpolation, `(alpha W^-1 + G) c = y`.
    Ridge,
    /// Piecewise-linear spline with its Cameron-Martin norm.
    Spline,
    /// Saw-tooth witness vanishing on the points.
    Sawtooth,
}

#[derive(Debug, Clone, Parser, Serialize)]
#[command(
    name = "kernsamp",
    version,
    about = "Sampling and discrete-mass diagnostics for positive-definite kernels"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output path, `-` for stdout. Relative paths resolve against $KERNSAMP_OUT_DIR when set.
    #[arg(long, global = true, default_value = "-")]
    pub out: String,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate K(s, t), optionally checking positive-definiteness on a point set.
    KernelEval {
        #[arg(long)]
        kernel: String,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        /// Points for a positive-definiteness check.
        #[arg(long, allow_hyphen_values = true)]
        pd_points: Option<String>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Build a Gram matrix with LU and closed-form determinants.
    Gram {
        #[arg(long)]
        kernel: String,
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Parseval defect and truncated frame bounds.
    FrameCheck {
        #[arg(long, default_value = "sinc")]
        kernel: String,
        /// Use the integers -N..=N as the truncation.
        #[arg(long, conflicts_with = "points")]
        integers: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, default_value_t = 1.1e-4)]
        tail_budget: f64,
        /// Compute frame bounds only when the truncation has at most this many points.
        #[arg(long, default_value_t = 1000)]
        bounds_max: usize,
    },
    /// Evaluate sum_s f(s) K(t, s) from samples.
    Reconstruct {
        #[arg(long, default_value = "sinc")]
        kernel: String,
        #[arg(long, conflicts_with = "points")]
        integers: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
        /// Sample values aligned with the points (inline list or CSV path).
        #[arg(long, allow_hyphen_values = true, conflicts_with = "section")]
        values: Option<String>,
        /// Sample the kernel section K(., c) instead of explicit values.
        #[arg(long, allow_hyphen_values = true)]
        section: Option<f64>,
        /// Evaluation points.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Ridge interpolation, spline interpolation, or saw-tooth witness.
    Interpolate {
        #[arg(long, value_enum, default_value_t = InterpolationMode::Ridge)]
        mode: InterpolationMode,
        #[arg(long, default_value = "brownian")]
        kernel: String,
        /// Two-column CSV `point,value`; alternative to --points/--values.
        #[arg(long, conflicts_with_all = ["points", "values"])]
        data: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        values: Option<String>,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long)]
        weights: Option<String>,
        /// Finiteness budget for the spline norm.
        #[arg(long, default_value_t = f64::INFINITY)]
        budget: f64,
        /// Saw-tooth slopes, one per interval; defaults to 1/(n sqrt(dx)).
        #[arg(long, allow_hyphen_values = true)]
        slopes: Option<String>,
        /// Start the saw-tooth with a tooth on [0, x_1].
        #[arg(long)]
        from_origin: bool,
    },
    /// Penalized obstruction probe at an off-sample point t0.
    Obstruct {
        #[arg(long)]
        kernel: String,
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long, allow_hyphen_values = true)]
        t0: f64,
        #[arg(long, allow_hyphen_values = true)]
        y0: f64,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        weights: Option<String>,
    },
    /// Nested projection norms of a Dirac mass.
    MassProbe {
        #[arg(long)]
        kernel: String,
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// Target point (must be one of the points).
        #[arg(long, allow_hyphen_values = true)]
        target: f64,
        /// Prefix length; defaults to all points.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_REL_INCREMENT_THRESHOLD)]
        threshold: f64,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: usize,
    },
    /// Karhunen-Loeve simulation of Brownian motion or the bridge.
    Simulate {
        /// `brownian` or `bridge`.
        #[arg(long, default_value = "brownian")]
        kernel: String,
        /// `start:stop:step` or an explicit list within [0, 1].
        #[arg(long, default_value = "0:1:0.015625")]
        grid: String,
        #[arg(long, default_value_t = 20000)]
        paths: usize,
        #[arg(long, default_value_t = 10)]
        depth: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of grid pairs checked against the exact truncated covariance.
        #[arg(long, default_value_t = 20)]
        check_pairs: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::KernelEval { .. } => "kernel-eval",
            Command::Gram { .. } => "gram",
            Command::FrameCheck { .. } => "frame-check",
            Command::Reconstruct { .. } => "reconstruct",
            Command::Interpolate { .. } => "interpolate",
            Command::Obstruct { .. } => "obstruct",
            Command::MassProbe { .. } => "mass-probe",
            Command::Simulate { .. } => "simulate",
        }
    }
}

/// Failure of a run, carrying its exit status.
#[derive(Debug)]
pub struct RunError {
    pub error: Error,
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        if self.error.is_numerical() {
            2
        } else {
            1
        }
    }

    /// One-line JSON diagnostic.
    pub fn diagnostic(&self) -> String {
        serde_json::json!({
            "error": self.error.kind(),
            "message": self.error.to_string(),
            "exit_code": self.exit_code(),
        })
        .to_string()
    }
}

impl From<Error> for RunError {
    fn from(error: Error) -> Self {
        Self { error }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'static str,
    config: &'a RunConfig,
    result: T,
}

/// Parses a number list: `a..b` (integers), `start:stop:step` (reals),
/// comma-separated values, or a path to a CSV file of numbers.
pub fn parse_points(text: &str) -> Result<Vec<f64>, Error> {
    let text = text.trim();
    if Path::new(text).is_file() {
        let body = std::fs::read_to_string(text)?;
        return body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(parse_number)
            .collect();
    }
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "range {text:?} must be start:stop:step"
            )));
        }
        let nums = parts
            .iter()
            .map(|p| parse_number(p))
            .collect::<Result<Vec<_>, _>>()?;
        return stochastic::uniform_grid(nums[0], nums[1], nums[2]);
    }
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: i64 = lo
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad range start {lo:?}: {e}")))?;
        let hi: i64 = hi
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|e| Error::Parse(format!("bad range end {hi:?}: {e}")))?;
        if hi < lo {
            return Err(Error::Parse(format!("empty range {text:?}")));
        }
        return Ok((lo..=hi).map(|k| k as f64).collect());
    }
    text.split(',').map(parse_number).collect()
}

fn parse_number(tok: &str) -> Result<f64, Error> {
    let tok = tok.trim();
    match tok {
        "pi" => Ok(std::f64::consts::PI),
        _ => tok
            .parse()
            .map_err(|e| Error::Parse(format!("bad number {tok:?}: {e}"))),
    }
}

fn sample_set(spec: &KernelSpec, text: &str) -> Result<SampleSet, Error> {
    SampleSet::for_kernel(parse_points(text)?, spec)
}

fn truncation(
    spec: &KernelSpec,
    integers: Option<u64>,
    points: Option<&str>,
) -> Result<SampleSet, Error> {
    let set = match (integers, points) {
        (Some(n), _) => SampleSet::integers(-(n as i64), n as i64)?,
        (None, Some(p)) => SampleSet::new(parse_points(p)?)?,
        (None, None) => {
            return Err(Error::InvalidInput(
                "one of --integers or --points is required".into(),
            ))
        }
    };
    set.validate_for(spec)?;
    Ok(set)
}

fn parse_process(kernel: &str) -> Result<Process, Error> {
    match kernel {
        "brownian" => Ok(Process::Brownian),
        "bridge" => Ok(Process::Bridge),
        other => Err(Error::InvalidInput(format!(
            "simulate supports brownian | bridge, got {other:?}"
        ))),
    }
}

fn csv_line(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v:.16e}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Runs one command and returns the rendered report.
pub fn run(config: &RunConfig) -> Result<String, RunError> {
    let json =
        |result: &dyn erased::Report| -> Result<String, RunError> { Ok(result.render(config)?) };
    match &config.command {
        Command::KernelEval {
            kernel,
            s,
            t,
            pd_points,
            tol,
        } => {
            let spec = KernelSpec::parse(kernel)?;
            let value = spec.eval(*s, *t)?;
            let pd = pd_points
                .as_deref()
                .map(|p| {
                    let set = sample_set(&spec, p)?;
                    kernsamp::check_positive_definite(&spec, &set, *tol)
                })
                .transpose()?;
            if config.format == Format::Csv {
                return Ok(format!("value\n{value:.16e}\n"));
            }
            #[derive(Serialize)]
            struct Out {
                value: f64,
                positive_definite: Option<bool>,
                min_eigenvalue: Option<f64>,
            }
            json(&Out {
                value,
                positive_definite: pd.map(|p| p.positive_definite),
                min_eigenvalue: pd.map(|p| p.min_eigenvalue),
            })
        }
        Command::Gram { kernel, points } => {
            let spec = KernelSpec::parse(kernel)?;
            let gram = build_gram(&spec, &sample_set(&spec, points)?)?;
            if config.format == Format::Csv {
                return Ok(gram.to_csv());
            }
            json(&gram.report())
        }
        Command::FrameCheck {
            kernel,
            integers,
            points,
            grid,
            tail_budget,
            bounds_max,
        } => {
            let spec = KernelSpec::parse(kernel)?;
            let set = truncation(&spec, *integers, points.as_deref())?;
            let grid = parse_points(grid)?;
            let mut report: FrameReport = frame::parseval_defect(&spec, &set, &grid, *tail_budget)?;
            if set.len() <= *bounds_max {
                report.bounds = Some(frame::frame_bounds_truncated(&spec, &set)?);
            }
            if config.format == Format::Csv {
                let mut out = String::from("t,defect\n");
                for (t, d) in report.grid.iter().zip(&report.pointwise) {
                    out.push_str(&csv_line(&[*t, *d]));
                    out.push('\n');
                }
                return Ok(out);
            }
            json(&report)
        }
        Command::Reconstruct {
            kernel,
            integers,
            points,
            values,
            section,
            at,
        } => {
            let spec = KernelSpec::parse(kernel)?;
            let set = truncation(&spec, *integers, points.as_deref())?;
            let samples = match (values, section) {
                (Some(v), _) => parse_points(v)?,
                (None, Some(c)) => set
                    .points()
                    .iter()
                    .map(|&s| spec.eval(s, *c))
                    .collect::<Result<_, _>>()?,
                (None, None) => {
                    return Err(Error::InvalidInput(
                        "one of --values or --section is required".into(),
                    )
                    .into())
                }
            };
            let at = parse_points(at)?;
            let recon = at
                .iter()
                .map(|&t| frame::reconstruct(&spec, &set, &samples, t))
                .collect::<Result<Vec<_>, _>>()?;
            if config.format == Format::Csv {
                let mut out = String::from("t,value\n");
                for (t, v) in at.iter().zip(&recon) {
                    out.push_str(&csv_line(&[*t, *v]));
                    out.push('\n');
                }
                return Ok(out);
            }
            let tail_bound = match spec {
                KernelSpec::Sinc => set.symmetric_integer_radius().map(|n| {
                    let tmax = at.iter().fold(0.0, |m: f64, t| m.max(t.abs()));
                    frame::sinc_tail_bound(n, tmax)
                }),
                _ => None,
            };
            #[derive(Serialize)]
            struct Out {
                at: Vec<f64>,
                values: Vec<f64>,
                tail_bound: Option<f64>,
            }
            json(&Out {
                at,
                values: recon,
                tail_bound,
            })
        }
        Command::Interpolate {
            mode,
            kernel,
            data,
            points,
            values,
            alpha,
            weights,
            budget,
            slopes,
            from_origin,
        } => run_interpolate(
            config,
            *mode,
            kernel,
            data.as_deref(),
            points.as_deref(),
            values.as_deref(),
            *alpha,
            weights.as_deref(),
            *budget,
            slopes.as_deref(),
            *from_origin,
        ),
        Command::Obstruct {
            kernel,
            points,
            t0,
            y0,
            alpha,
            weights,
        } => {
            let spec = KernelSpec::parse(kernel)?;
            let set = sample_set(&spec, points)?;
            let w = weights.as_deref().map(parse_points).transpose()?;
            let r = interpolation::obstruction_probe(&spec, &set, *t0, *y0, *alpha, w.as_deref())?;
            if config.format == Format::Csv {
                let mut out = String::from("point,coefficient\n");
                for (p, c) in r.span_points.iter().zip(&r.coefficients) {
                    out.push_str(&csv_line(&[*p, *c]));
                    out.push('\n');
                }
                return Ok(out);
            }
            json(&r)
        }
        Command::MassProbe {
            kernel,
            points,
            target,
            n_max,
            threshold,
            window,
        } => {
            let spec = KernelSpec::parse(kernel)?;
            let set = sample_set(&spec, points)?;
            let x_index = set
                .points()
                .iter()
                .position(|&p| p == *target)
                .ok_or_else(|| {
                    Error::InvalidInput(format!("target {target} is not one of the points"))
                })?;
            let n_max = n_max.unwrap_or(set.len());
            let report = mass_probe::probe_mass(&spec, &set, x_index, n_max, *threshold, *window)?;
            if config.format == Format::Csv {
                return Ok(report.to_csv());
            }
            json(&report)
        }
        Command::Simulate {
            kernel,
            grid,
            paths,
            depth,
            seed,
            check_pairs,
        } => {
            let process = parse_process(kernel)?;
            let grid = parse_points(grid)?;
            let ensemble = match process {
                Process::Brownian => stochastic::simulate_brownian(&grid, *paths, *depth, *seed)?,
                Process::Bridge => stochastic::simulate_bridge(&grid, *paths, *depth, *seed)?,
            };
            if config.format == Format::Csv {
                return Ok(ensemble.to_csv());
            }
            let summary = stochastic::summarize(&ensemble)?;
            let cov_checks = covariance_checks(&ensemble, *check_pairs, *seed)?;
            #[derive(Serialize)]
            struct Out {
                #[serde(flatten)]
                summary: stochastic::EnsembleSummary,
                cov_checks: Vec<CovCheck>,
            }
            json(&Out {
                summary,
                cov_checks,
            })
        }
    }
}

/// One empirical-vs-truncated covariance comparison.
#[derive(Debug, Clone, Serialize)]
pub struct CovCheck {
    pub s: f64,
    pub t: f64,
    pub estimate: f64,
    pub std_error: f64,
    pub truncated: f64,
    pub exact: f64,
    /// `|estimate - truncated| <= 5 SE`
    pub within_5se: bool,
}

/// Compares the empirical covariance with the exact truncated covariance at
/// `count` grid pairs drawn deterministically from `seed`.
pub fn covariance_checks(
    e: &stochastic::PathEnsemble,
    count: usize,
    seed: u64,
) -> Result<Vec<CovCheck>, Error> {
    use rand_pairs::pairs;
    pairs(e.time_grid.len(), count, seed)
        .into_iter()
        .map(|(i, j)| {
            let (s, t) = (e.time_grid[i], e.time_grid[j]);
            let c = stochastic::empirical_covariance(e, i, j)?;
            let truncated = stochastic::truncated_covariance(e.process, e.basis_depth, s, t)?;
            Ok(CovCheck {
                s,
                t,
                estimate: c.estimate,
                std_error: c.std_error,
                truncated,
                exact: stochastic::exact_covariance(e.process, s, t),
                within_5se: (c.estimate - truncated).abs() <= 5.0 * c.std_error,
            })
        })
        .collect()
}

mod rand_pairs {
    /// Deterministic index pairs from a SplitMix64 sequence.
    pub fn pairs(n: usize, count: usize, seed: u64) -> Vec<(usize, usize)> {
        let mut state = seed ^ 0x9E37_79B9_7F4A_7C15;
        let mut next = move || {
            state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^ (z >> 31)
        };
        (0..count)
            .map(|_| ((next() % n as u64) as usize, (next() % n as u64) as usize))
            .collect()
    }
}

#[allow(clippy::too_many_arguments)]
fn run_interpolate(
    config: &RunConfig,
    mode: InterpolationMode,
    kernel: &str,
    data: Option<&str>,
    points: Option<&str>,
    values: Option<&str>,
    alpha: f64,
    weights: Option<&str>,
    budget: f64,
    slopes: Option<&str>,
    from_origin: bool,
) -> Result<String, RunError> {
    let (xs, ys) = match (data, points) {
        (Some(path), _) => read_two_column(path)?,
        (None, Some(p)) => (parse_points(p)?, values.map(parse_points).transpose()?),
        (None, None) => {
            return Err(Error::InvalidInput("one of --data or --points is required".into()).into())
        }
    };
    let require_values = |ys: Option<Vec<f64>>| {
        ys.ok_or_else(|| {
            Error::InvalidInput("--values (or --data) is required for this mode".into())
        })
    };
    let set = SampleSet::new(xs)?;
    let pwl_csv = |f: &interpolation::PiecewiseLinearFunction| f.to_csv();
    match mode {
        InterpolationMode::Ridge => {
            let spec = KernelSpec::parse(kernel)?;
            set.validate_for(&spec)?;
            let ys = require_values(ys)?;
            let w = weights.map(parse_points).transpose()?;
            let f = interpolation::ridge_interpolant(&spec, &set, &ys, alpha, w.as_deref())?;
            let node_residuals = set
                .points()
                .iter()
                .zip(&ys)
                .map(|(&p, y)| Ok(f.eval(p)? - y))
                .collect::<Result<Vec<f64>, Error>>()?;
            let norm_sq = f.norm_sq()?;
            if config.format == Format::Csv {
                let mut out = String::from("point,coefficient,residual\n");
                for ((p, c), r) in set.points().iter().zip(f.coeffs()).zip(&node_residuals) {
                    out.push_str(&csv_line(&[*p, *c, *r]));
                    out.push('\n');
                }
                return Ok(out);
            }
            #[derive(Serialize)]
            struct Out {
                points: Vec<f64>,
                coefficients: Vec<f64>,
                node_residuals: Vec<f64>,
                norm_sq: f64,
            }
            Ok(erased::Report::render(
                &Out {
                    points: set.points().to_vec(),
                    coefficients: f.coeffs().to_vec(),
                    node_residuals,
                    norm_sq,
                },
                config,
            )?)
        }
        InterpolationMode::Spline => {
            let ys = require_values(ys)?;
            let s = interpolation::spline_interpolant(&set, &ys, budget)?;
            if config.format == Format::Csv {
                return Ok(pwl_csv(&s.function));
            }
            #[derive(Serialize)]
            struct Out {
                knots: Vec<f64>,
                values: Vec<f64>,
                norm_sq: f64,
                cm_norm_sq: f64,
                admissible: bool,
                budget: Option<f64>,
            }
            Ok(erased::Report::render(
                &Out {
                    knots: s.function.knots().to_vec(),
                    values: s.function.values().to_vec(),
                    norm_sq: s.norm_sq,
                    cm_norm_sq: cm_norm_sq(&s.function),
                    admissible: s.admissible,
                    budget: budget.is_finite().then_some(budget),
                },
                config,
            )?)
        }
        InterpolationMode::Sawtooth => {
            let c = slopes.map(parse_points).transpose()?;
            let teeth = if from_origin {
                interpolation::with_origin(&set)?
            } else {
                set.clone()
            };
            let w = interpolation::sawtooth_witness(&teeth, c.as_deref())?;
            if config.format == Format::Csv {
                return Ok(pwl_csv(&w));
            }
            let spec = KernelSpec::BrownianMotion;
            set.validate_for(&spec)?;
            let at_points: Vec<f64> = frame::analysis(&spec, &set, |t| Ok(w.eval(t)))?;
            #[derive(Serialize)]
            struct Out {
                knots: Vec<f64>,
                values: Vec<f64>,
                cm_norm_sq: f64,
                norm_sq_closed: f64,
                max_abs_at_points: f64,
            }
            Ok(erased::Report::render(
                &Out {
                    knots: w.knots().to_vec(),
                    values: w.values().to_vec(),
                    cm_norm_sq: cm_norm_sq(&w),
                    norm_sq_closed: interpolation::sawtooth_norm_closed(&teeth, c.as_deref())?,
                    max_abs_at_points: kernsamp::linalg::max_abs(&at_points),
                },
                config,
            )?)
        }
    }
}

fn read_two_column(path: &str) -> Result<(Vec<f64>, Option<Vec<f64>>), Error> {
    let body = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for line in body.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 2 {
            return Err(Error::Parse(format!("expected two columns in {line:?}")));
        }
        // skip a header row
        let (Ok(x), Ok(y)) = (parse_number(cols[0]), parse_number(cols[1])) else {
            if xs.is_empty() {
                continue;
            }
            return Err(Error::Parse(format!("bad row {line:?}")));
        };
        xs.push(x);
        ys.push(y);
    }
    Ok((xs, Some(ys)))
}

mod erased {
    use super::*;

    /// Object-safe wrapper so each command can hand back its own result type.
    pub trait Report {
        fn render(&self, config: &RunConfig) -> Result<String, Error>;
    }

    impl<T: Serialize> Report for T {
        fn render(&self, config: &RunConfig) -> Result<String, Error> {
            let mut text = to_json(&Envelope {
                schema_version: SCHEMA_VERSION,
                command: config.command.name(),
                config,
                result: self,
            })?;
            text.push('\n');
            Ok(text)
        }
    }
}

/// Resolves `--out` against the output directory from the environment.
pub fn output_path(out: &str) -> Option<PathBuf> {
    if out == "-" {
        return None;
    }
    let p = PathBuf::from(out);
    if p.is_relative() {
        if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
            return Some(PathBuf::from(dir).join(p));
        }
    }
    Some(p)
}
