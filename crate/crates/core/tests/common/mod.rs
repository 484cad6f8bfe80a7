//! Independent oracles and case generators shared by the integration tests.
#![allow(dead_code)]

use sumsq::dist::RandomSource;
use sumsq::{GroupedSample, Sample};

/// `|a − b| ≤ rel·max(|a|, |b|) + 1e-12`.
pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()) + 1e-12
}

/// Exact sum of squares of integer data: `(nΣx² − (Σx)²) / n`, in i128.
pub fn exact_integer_ss(values: &[i64]) -> (i128, i128) {
    let n = values.len() as i128;
    let sum: i128 = values.iter().map(|&v| v as i128).sum();
    let sum_sq: i128 = values.iter().map(|&v| (v as i128) * (v as i128)).sum();
    (n * sum_sq - sum * sum, n)
}

/// Adaptive Simpson quadrature with Richardson correction.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 60)
}

/// `∫₀ˣ t^(a−1)(1−t)^(b−1) dt` for `b ≥ 1`. For `a < 1` the substitution
/// `t = u^(1/a)` removes the endpoint singularity.
fn beta_partial_integral(a: f64, b: f64, x: f64) -> f64 {
    assert!(b >= 1.0, "oracle requires b >= 1");
    if a >= 1.0 {
        let f = |t: f64| t.powf(a - 1.0) * (1.0 - t).powf(b - 1.0);
        adaptive_simpson(&f, 0.0, x, 1e-15)
    } else {
        let f = |u: f64| (1.0 - u.powf(1.0 / a)).max(0.0).powf(b - 1.0) / a;
        adaptive_simpson(&f, 0.0, x.powf(a), 1e-15)
    }
}

/// Quadrature oracle for the regularized incomplete beta function.
pub fn reg_inc_beta_quadrature(a: f64, b: f64, x: f64) -> f64 {
    beta_partial_integral(a, b, x) / beta_partial_integral(a, b, 1.0)
}

/// The 50-point `(a, b, x)` grid used for incomplete-beta accuracy checks.
pub fn beta_grid() -> Vec<(f64, f64, f64)> {
    let a_values = [0.5, 1.0, 2.5, 4.0, 7.0];
    let b_values = [1.0, 1.5, 3.0, 5.0, 10.0];
    let mut grid = Vec::with_capacity(50);
    for (i, &a) in a_values.iter().enumerate() {
        for (j, &b) in b_values.iter().enumerate() {
            let shift = 0.03 * (i + j) as f64;
            grid.push((a, b, 0.15 + shift));
            grid.push((a, b, 0.6 + shift));
        }
    }
    grid
}

/// Monte Carlo estimate of `P(F(d1, d2) > f)` from ratios of scaled
/// chi-square variates built from squared standard normals.
pub fn f_tail_monte_carlo(f: f64, d1: usize, d2: usize, draws: usize, seed: u64) -> f64 {
    let mut src = RandomSource::new(seed);
    let mut chi2 = |df: usize| (0..df).map(|_| src.next_standard_normal().powi(2)).sum::<f64>();
    let mut hits = 0usize;
    for _ in 0..draws {
        let num = chi2(d1) / d1 as f64;
        let den = chi2(d2) / d2 as f64;
        if num / den > f {
            hits += 1;
        }
    }
    hits as f64 / draws as f64
}

/// Random grouped data: 2–6 groups of 2–50 values uniform on [−1e3, 1e3].
pub fn random_grouped(src: &mut RandomSource, min_groups: usize, max_groups: usize) -> GroupedSample {
    let k = min_groups + (src.next_uniform() * (max_groups - min_groups + 1) as f64) as usize;
    let groups = (0..k)
        .map(|j| {
            let n = 2 + (src.next_uniform() * 49.0) as usize;
            let values = (0..n).map(|_| src.next_uniform() * 2e3 - 1e3).collect();
            (format!("g{j}"), Sample::new(values).unwrap())
        })
        .collect();
    GroupedSample::new(groups).unwrap()
}

pub fn random_values(src: &mut RandomSource, n: usize, half_width: f64) -> Vec<f64> {
    (0..n).map(|_| (src.next_uniform() * 2.0 - 1.0) * half_width).collect()
}

/// The four scores and their two groups.
pub fn noise_groups() -> GroupedSample {
    GroupedSample::new(vec![
        ("g1", Sample::new(vec![11.0, 7.0]).unwrap()),
        ("g2", Sample::new(vec![30.0, 20.0]).unwrap()),
    ])
    .unwrap()
}
