//! Acceptance suite: one line per criterion, non-zero exit if any fails.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use kernsamp::exact::{binomial_gram_exact, pascal_inverse, pascal_lower};
use kernsamp::frame::{frame_bounds_truncated, parseval_defect, reconstruct};
use kernsamp::interpolation::{
    cm_norm_sq, obstruction_probe, ridge_interpolant, sawtooth_norm_closed, sawtooth_witness,
    sawtooth_witness_anchored, spline_interpolant,
};
use kernsamp::mass_probe::{
    probe_mass, projection_norm_sequence, sparse_points, Verdict, DEFAULT_REL_INCREMENT_THRESHOLD,
    DEFAULT_WINDOW,
};
use kernsamp::stochastic::{
    empirical_covariance, simulate_bridge, simulate_brownian, truncated_covariance, uniform_grid,
    PathEnsemble, Process,
};
use kernsamp::{binomial_gram_inverse, build_gram, KernelSpec, SampleSet};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !($cond) {
            return Err(format!($($msg)+));
        }
    };
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Strictly increasing points `lo + sum of gaps`, gaps uniform in `gap`.
fn increasing(rng: &mut ChaCha8Rng, n: usize, lo: f64, gap: (f64, f64)) -> Vec<f64> {
    let mut x = lo;
    (0..n)
        .map(|_| {
            x += rng.random_range(gap.0..gap.1);
            x
        })
        .collect()
}

/// `n` sorted distinct uniform points in `(lo, hi)`.
fn uniform_sorted(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(lo..hi)).collect();
        v.sort_by(f64::total_cmp);
        if v.windows(2).all(|w| w[1] - w[0] > 1e-3) && v[0] > lo + 1e-3 && v[n - 1] < hi - 1e-3 {
            return v;
        }
    }
}

fn min_kernel(s: f64, t: f64) -> f64 {
    s.min(t)
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// Pascal triangle rows `0..=n` as `u128`.
fn pascal_rows(n: usize) -> Vec<Vec<u128>> {
    let mut rows: Vec<Vec<u128>> = vec![vec![1]];
    for k in 1..=n {
        let prev = &rows[k - 1];
        let mut row = vec![1u128; k + 1];
        for j in 1..k {
            row[j] = prev[j - 1] + prev[j];
        }
        rows.push(row);
    }
    rows
}

fn dense_det(n: usize, k: impl Fn(usize, usize) -> f64) -> f64 {
    DMatrix::from_fn(n, n, k).lu().determinant()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(1..=10);
        let x = uniform_sorted(&mut rng, n, 0.0, 10.0);
        let set = SampleSet::new(x.clone()).map_err(|e| e.to_string())?;
        let gram = build_gram(&KernelSpec::BrownianMotion, &set).map_err(|e| e.to_string())?;
        let closed = gram.det_closed().ok_or("no closed form")?;
        let oracle = x[0] * x.windows(2).map(|w| w[1] - w[0]).product::<f64>();
        let lu = dense_det(n, |i, j| min_kernel(x[i], x[j]));
        worst = worst
            .max(rel(closed, lu))
            .max(rel(oracle, lu))
            .max(rel(gram.det_lu(), lu));
    }
    let elapsed = start.elapsed();
    ensure!(worst <= 1e-10, "max relative error {worst:e}");
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("max rel err {worst:.2e}, {elapsed:.2?}"))
}

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(1..=10);
        let x = uniform_sorted(&mut rng, n, 0.0, 1.0);
        let set = SampleSet::new(x.clone()).map_err(|e| e.to_string())?;
        let gram = build_gram(&KernelSpec::BrownianBridge, &set).map_err(|e| e.to_string())?;
        let closed = gram.det_closed().ok_or("no closed form")?;
        let mut ext = vec![0.0];
        ext.extend_from_slice(&x);
        ext.push(1.0);
        let oracle: f64 = ext.windows(2).map(|w| w[1] - w[0]).product();
        let lu = dense_det(n, |i, j| x[i].min(x[j]) - x[i] * x[j]);
        worst = worst.max(rel(closed, lu)).max(rel(oracle, lu));
    }
    ensure!(worst <= 1e-10, "max relative error {worst:e}");
    Ok(format!("max rel err {worst:.2e}"))
}

fn criterion_3() -> Check {
    let bm = KernelSpec::BrownianMotion;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let x = increasing(&mut rng, 40, 0.0, (0.1, 1.0));
        let set = SampleSet::new(x.clone()).map_err(|e| e.to_string())?;
        let norms = projection_norm_sequence(&bm, &set, 0, 40).map_err(|e| e.to_string())?;
        let limit = x[1] / (x[0] * (x[1] - x[0]));
        ensure!(
            (norms[0] - 1.0 / x[0]).abs() <= 1e-10,
            "n=1 value {}",
            norms[0]
        );
        for (k, &v) in norms.iter().enumerate().skip(1) {
            worst = worst.max((v - limit).abs());
            ensure!(
                (v - limit).abs() <= 1e-10,
                "n={} value {v} vs limit {limit}",
                k + 1
            );
        }
        let report = probe_mass(
            &bm,
            &set,
            0,
            40,
            DEFAULT_REL_INCREMENT_THRESHOLD,
            DEFAULT_WINDOW,
        )
        .map_err(|e| e.to_string())?;
        ensure!(
            matches!(report.verdict, Verdict::Bounded { .. }),
            "verdict {:?}",
            report.verdict
        );

        let pair = set.prefix(2).map_err(|e| e.to_string())?;
        let zeta = build_gram(&bm, &pair)
            .and_then(|g| g.solve_spd(&[1.0, 0.0]))
            .map_err(|e| e.to_string())?;
        let expect = [limit, -1.0 / (x[1] - x[0])];
        for (z, e) in zeta.iter().zip(expect) {
            ensure!((z - e).abs() <= 1e-10, "zeta {z} vs {e}");
        }
    }
    Ok(format!("10 sets of 40, max deviation {worst:.2e}"))
}

fn criterion_4() -> Check {
    let mut worst = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (spec, gap) in [
        (KernelSpec::BrownianMotion, (0.1, 1.0)),
        (KernelSpec::BrownianBridge, (0.01, 0.04)),
    ] {
        for _ in 0..20 {
            let n = 20;
            let x = increasing(&mut rng, n, 0.0, gap);
            let set = SampleSet::new(x.clone()).map_err(|e| e.to_string())?;
            for i in 1..n - 1 {
                let closed = (x[i + 1] - x[i - 1]) / ((x[i] - x[i - 1]) * (x[i + 1] - x[i]));
                let norms =
                    projection_norm_sequence(&spec, &set, i, n).map_err(|e| e.to_string())?;
                let probe = norms[n - 1];
                worst = worst.max(rel(probe, closed));
                ensure!(
                    rel(probe, closed) <= 1e-9,
                    "{spec} i={i}: {probe} vs {closed}"
                );
            }
        }
    }
    Ok(format!(
        "20 random sets per kernel, max rel err {worst:.2e}"
    ))
}

fn criterion_5() -> Check {
    let bm = KernelSpec::BrownianMotion;
    // i = 2..=51 so that i = 50 still has a right neighbour.
    let set = sparse_points(2, 51).map_err(|e| e.to_string())?;
    let n = set.len();
    let mut prev = f64::INFINITY;
    let mut worst = 0.0f64;
    for i in 2..=50usize {
        let norms = projection_norm_sequence(&bm, &set, i - 2, n).map_err(|e| e.to_string())?;
        let probe = norms[n - 1];
        let expect = (2 * i - 1) as f64 / ((i - 1) * i) as f64;
        worst = worst.max((probe - expect).abs());
        ensure!((probe - expect).abs() <= 1e-9, "i={i}: {probe} vs {expect}");
        ensure!(probe < prev, "not decreasing at i={i}");
        prev = probe;
    }
    Ok(format!("i=2..50, max err {worst:.2e}, last {prev:.4e}"))
}

fn criterion_6() -> Check {
    let rows = pascal_rows(25);
    let oracle = |x: usize, n: usize| -> f64 {
        (x..=n).map(|k| rows[k][x] * rows[k][x]).sum::<u128>() as f64
    };
    let binomial = KernelSpec::Binomial;
    let v = SampleSet::integers(0, 25).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for x in 0..=10 {
        let norms = projection_norm_sequence(&binomial, &v, x, 26).map_err(|e| e.to_string())?;
        for n in x..=25 {
            let exact = oracle(x, n);
            let diag = binomial_gram_inverse(n)
                .map_err(|e| e.to_string())?
                .get(x, x);
            worst = worst.max(rel(diag, exact)).max(rel(norms[n], exact));
            ensure!(
                rel(diag, exact) <= 1e-8,
                "Gram inverse diag x={x} n={n}: {diag} vs {exact}"
            );
            ensure!(
                rel(norms[n], exact) <= 1e-8,
                "probe x={x} n={n}: {} vs {exact}",
                norms[n]
            );
        }
    }
    let report = probe_mass(
        &binomial,
        &v,
        5,
        26,
        DEFAULT_REL_INCREMENT_THRESHOLD,
        DEFAULT_WINDOW,
    )
    .map_err(|e| e.to_string())?;
    let last = *report.norms.last().unwrap();
    ensure!(last > 2.8e9, "x=5, n=25 value {last}");
    ensure!(
        report.verdict == Verdict::Diverging,
        "verdict {:?}",
        report.verdict
    );
    Ok(format!(
        "max rel err {worst:.2e}; x=5,n=25 -> {last:.4e}, Diverging"
    ))
}

fn criterion_7() -> Check {
    let rows = pascal_rows(60);
    for n in 0..=60 {
        let l = pascal_lower(n).map_err(|e| e.to_string())?;
        for x in 0..=n {
            for y in 0..=x {
                ensure!(l.get(x, y) as u128 == rows[x][y], "L[{x},{y}] at n={n}");
            }
        }
        let prod = l
            .as_matrix()
            .checked_mul(&pascal_inverse(n).map_err(|e| e.to_string())?);
        ensure!(
            prod.map_err(|e| e.to_string())?.is_identity(),
            "L L^-1 != I at n={n}"
        );
    }
    for n in 0..=25 {
        let l = pascal_lower(n).map_err(|e| e.to_string())?;
        let llt = l
            .as_matrix()
            .checked_mul(&l.as_matrix().transpose())
            .map_err(|e| e.to_string())?;
        let k = binomial_gram_exact(n).map_err(|e| e.to_string())?;
        ensure!(llt == k, "K != L L^T at n={n}");
        for x in 0..=n {
            for y in 0..=n {
                let direct: u128 = (0..=x.min(y)).map(|j| rows[x][j] * rows[y][j]).sum();
                ensure!(k.get(x, y) as u128 == direct, "K[{x},{y}] at n={n}");
            }
        }
    }
    let mut worst = 0.0f64;
    for n in 0..=15 {
        let k = build_gram(
            &KernelSpec::Binomial,
            &SampleSet::integers(0, n as i64).unwrap(),
        )
        .map_err(|e| e.to_string())?;
        let kinv = binomial_gram_inverse(n).map_err(|e| e.to_string())?;
        let a = k.matrix().to_nalgebra() * kinv.to_nalgebra();
        let dev = (a - DMatrix::<f64>::identity(n + 1, n + 1)).amax();
        worst = worst.max(dev);
        ensure!(dev <= 1e-9, "K K^-1 deviation {dev:e} at n={n}");
    }
    Ok(format!(
        "exact for n<=60 and n<=25; float K K^-1 max dev {worst:.2e}"
    ))
}

fn criterion_8() -> Check {
    let start = Instant::now();
    let grid = [0.25, 0.5, PI / 7.0];
    let set = SampleSet::integers(-2000, 2000).map_err(|e| e.to_string())?;
    let report =
        parseval_defect(&KernelSpec::Sinc, &set, &grid, 1.1e-4).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for (t, d) in grid.iter().zip(&report.pointwise) {
        let oracle = (1.0
            - (-2000..=2000)
                .map(|n| sinc(PI * (t - n as f64)).powi(2))
                .sum::<f64>())
        .abs();
        ensure!(
            (d - oracle).abs() <= 1e-12,
            "t={t}: defect {d} vs oracle {oracle}"
        );
        ensure!(*d <= 5e-4, "t={t}: defect {d}");
    }
    let tail = report.tail_bound.ok_or("no tail bound reported")?;
    ensure!(tail <= 1.1e-4, "tail bound {tail}");
    ensure!(
        report.tail_within_budget == Some(true),
        "tail not within budget"
    );
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "defect {:.3e}, tail bound {tail:.3e}, {elapsed:.2?}",
        report.defect
    ))
}

fn criterion_9() -> Check {
    let set = SampleSet::integers(-2000, 2000).map_err(|e| e.to_string())?;
    let samples: Vec<f64> = set.points().iter().map(|&n| sinc(PI * (n - 0.3))).collect();
    let mut worst = 0.0f64;
    for t in [0.3, -1.7, 0.05, 12.9] {
        let v = reconstruct(&KernelSpec::Sinc, &set, &samples, t).map_err(|e| e.to_string())?;
        let truth = sinc(PI * (t - 0.3));
        worst = worst.max((v - truth).abs());
        ensure!((v - truth).abs() <= 1e-3, "t={t}: {v} vs {truth}");
    }
    Ok(format!("max err {worst:.2e}"))
}

fn criterion_10() -> Check {
    let set = SampleSet::integers(-50, 50).map_err(|e| e.to_string())?;
    let fb = frame_bounds_truncated(&KernelSpec::Sinc, &set).map_err(|e| e.to_string())?;
    ensure!(
        (fb.a - 1.0).abs() <= 1e-12 && (fb.b - 1.0).abs() <= 1e-12,
        "sinc bounds {fb:?}"
    );

    let set = SampleSet::new(vec![1.0, 2.0]).unwrap();
    let fb =
        frame_bounds_truncated(&KernelSpec::BrownianMotion, &set).map_err(|e| e.to_string())?;
    // eigenvalues of [[1, 1], [1, 2]] from the characteristic polynomial
    let (tr, det) = (3.0f64, 1.0f64);
    let disc = (tr * tr - 4.0 * det).sqrt();
    let (hi, lo) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
    ensure!(
        (fb.a - 1.0 / hi).abs() <= 1e-12,
        "a = {} vs {}",
        fb.a,
        1.0 / hi
    );
    ensure!(
        (fb.b - 1.0 / lo).abs() <= 1e-12,
        "b = {} vs {}",
        fb.b,
        1.0 / lo
    );
    Ok(format!(
        "sinc (1,1); BM {{1,2}} ({:.12}, {:.12})",
        fb.a, fb.b
    ))
}

fn criterion_11() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let n = rng.random_range(2..=60);
        let x = increasing(&mut rng, n, 0.0, (0.01, 2.0));
        let c: Vec<f64> = (0..n - 1).map(|_| rng.random_range(0.1..5.0)).collect();
        let set = SampleSet::new(x.clone()).unwrap();
        let w = sawtooth_witness(&set, Some(&c)).map_err(|e| e.to_string())?;
        for &p in &x {
            ensure!(w.eval(p) == 0.0, "witness {} at sample {p}", w.eval(p));
        }
        let oracle: f64 = x
            .windows(2)
            .zip(&c)
            .map(|(w, c)| c * c * (w[1] - w[0]))
            .sum();
        ensure!(
            rel(cm_norm_sq(&w), oracle) <= 1e-12,
            "segment norm {} vs {oracle}",
            cm_norm_sq(&w)
        );
        let closed = sawtooth_norm_closed(&set, Some(&c)).map_err(|e| e.to_string())?;
        ensure!(
            rel(closed, oracle) <= 1e-12,
            "closed norm {closed} vs {oracle}"
        );
    }

    let s = SampleSet::integers(1, 200).unwrap();
    let basel = PI * PI / 6.0;
    let w = sawtooth_witness_anchored(&s, None).map_err(|e| e.to_string())?;
    for &p in s.points() {
        ensure!(w.eval(p) == 0.0, "anchored witness nonzero at {p}");
    }
    let anchored = cm_norm_sq(&w);
    let interior = cm_norm_sq(&sawtooth_witness(&s, None).map_err(|e| e.to_string())?);
    let partial: f64 = (1..=200).map(|n| 1.0 / (n * n) as f64).sum();
    ensure!(
        rel(anchored, partial) <= 1e-12,
        "norm {anchored} vs partial sum {partial}"
    );
    ensure!(
        (anchored - basel).abs() <= 5e-3,
        "gap to pi^2/6 is {:e}",
        basel - anchored
    );
    Ok(format!(
        "S={{1..200}}: norm {anchored:.10} (gap {:.3e}); without [0,1] tooth {interior:.10}",
        basel - anchored
    ))
}

fn criterion_12() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let n = rng.random_range(2..=100);
        let x = increasing(&mut rng, n, -5.0, (0.01, 1.0));
        let y: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
        let set = SampleSet::new(x.clone()).unwrap();
        let s = spline_interpolant(&set, &y, f64::INFINITY).map_err(|e| e.to_string())?;
        let oracle: f64 = (1..n)
            .map(|i| (y[i] - y[i - 1]).powi(2) / (x[i] - x[i - 1]))
            .sum();
        let segment = cm_norm_sq(&s.function);
        worst = worst.max(rel(s.norm_sq, oracle)).max(rel(segment, oracle));
        ensure!(
            rel(s.norm_sq, oracle) <= 1e-12,
            "norm {} vs {oracle}",
            s.norm_sq
        );
        ensure!(
            rel(segment, oracle) <= 1e-12,
            "segment norm {segment} vs {oracle}"
        );
        for (xi, yi) in x.iter().zip(&y) {
            ensure!(s.function.eval(*xi) == *yi, "spline misses ({xi}, {yi})");
        }
    }
    Ok(format!("50 instances, max rel err {worst:.2e}"))
}

fn criterion_13() -> Check {
    let bm = KernelSpec::BrownianMotion;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let n = rng.random_range(2..=10);
        let x = increasing(&mut rng, n, 0.0, (0.2, 1.0));
        let y: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let set = SampleSet::new(x.clone()).unwrap();
        let f = ridge_interpolant(&bm, &set, &y, 0.0, None).map_err(|e| e.to_string())?;
        let oracle = DMatrix::from_fn(n, n, |i, j| min_kernel(x[i], x[j]))
            .lu()
            .solve(&DVector::from_column_slice(&y))
            .ok_or("oracle solve failed")?;
        for (c, o) in f.coeffs().iter().zip(oracle.iter()) {
            worst = worst.max((c - o).abs());
            ensure!((c - o).abs() <= 1e-10, "coefficient {c} vs {o}");
        }
        for (xi, yi) in x.iter().zip(&y) {
            let r = (f.eval(*xi).map_err(|e| e.to_string())? - yi).abs();
            ensure!(r <= 1e-10, "residual {r} at {xi}");
        }

        // off-sample t0 strictly between two points
        let k = rng.random_range(0..n - 1);
        let t0 = 0.5 * (x[k] + x[k + 1]);
        let zero = obstruction_probe(&bm, &set, t0, 0.0, 0.1, None).map_err(|e| e.to_string())?;
        ensure!(
            zero.minimum_value == 0.0,
            "y0=0 gives minimum {}",
            zero.minimum_value
        );
        let y0 = rng.random_range(0.5..2.0);
        let mut last = f64::INFINITY;
        for alpha in [1e-1, 1e-2, 1e-3] {
            let r = obstruction_probe(&bm, &set, t0, y0, alpha, None).map_err(|e| e.to_string())?;
            ensure!(
                r.minimum_value > 0.0,
                "y0={y0} gives minimum {}",
                r.minimum_value
            );
            ensure!(r.minimum_value <= last, "minimum rises at alpha={alpha}");
            last = r.minimum_value;
        }
    }
    Ok(format!(
        "10 instances, max coefficient deviation {worst:.2e}"
    ))
}

fn bits(e: &PathEnsemble) -> Vec<u64> {
    e.paths.iter().flatten().map(|v| v.to_bits()).collect()
}

fn criterion_14() -> Check {
    let start = Instant::now();
    let grid = uniform_grid(0.0, 1.0, 1.0 / 64.0).map_err(|e| e.to_string())?;
    let (paths, depth, seed) = (20000, 10, 20240915);
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut worst = 0.0f64;
    for process in [Process::Brownian, Process::Bridge] {
        let sim = match process {
            Process::Brownian => simulate_brownian,
            Process::Bridge => simulate_bridge,
        };
        let e = sim(&grid, paths, depth, seed).map_err(|e| e.to_string())?;
        ensure!(
            e.paths.iter().all(|p| p[0] == 0.0),
            "{process:?} nonzero at t=0"
        );
        if process == Process::Bridge {
            ensure!(
                e.paths.iter().all(|p| *p.last().unwrap() == 0.0),
                "bridge nonzero at t=1"
            );
        }
        for _ in 0..20 {
            let i = rng.random_range(0..grid.len());
            let j = rng.random_range(0..grid.len());
            let (s, t) = (grid[i], grid[j]);
            let truncated =
                truncated_covariance(process, depth, s, t).map_err(|e| e.to_string())?;
            // dyadic grid coarser than the basis: the truncation is exact there
            let exact = match process {
                Process::Brownian => s.min(t),
                Process::Bridge => s.min(t) - s * t,
            };
            ensure!(
                (truncated - exact).abs() <= 1e-12,
                "truncated {truncated} vs {exact}"
            );
            let c = empirical_covariance(&e, i, j).map_err(|e| e.to_string())?;
            let z = (c.estimate - truncated).abs() / c.std_error.max(f64::MIN_POSITIVE);
            if c.std_error > 0.0 {
                worst = worst.max(z);
            }
            ensure!(
                (c.estimate - truncated).abs() <= 5.0 * c.std_error,
                "{process:?} ({s}, {t}): {} vs {truncated}, SE {}",
                c.estimate,
                c.std_error
            );
        }
        let again = sim(&grid, paths, depth, seed).map_err(|e| e.to_string())?;
        ensure!(bits(&e) == bits(&again), "{process:?} rerun differs");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "max |z| {worst:.2}, reruns bit-identical, {elapsed:.2?}"
    ))
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("Brownian determinant identity", criterion_1),
        ("bridge determinant identity", criterion_2),
        ("projection stabilization", criterion_3),
        ("interior delta norm", criterion_4),
        ("sparse decay", criterion_5),
        ("binomial dichotomy", criterion_6),
        ("Pascal algebra", criterion_7),
        ("sinc Parseval defect", criterion_8),
        ("Shannon reconstruction", criterion_9),
        ("frame bounds", criterion_10),
        ("saw-tooth obstruction", criterion_11),
        ("spline norm identity", criterion_12),
        ("ridge and obstruction probe", criterion_13),
        ("Monte Carlo covariance", criterion_14),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail})", k + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {reason}", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
