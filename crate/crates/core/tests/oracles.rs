mod common;

use common::*;
use sumsq::dist::{f_upper_tail, ln_gamma, reg_inc_beta, t_two_sided, FParams};
use sumsq::kernel::{sum_of_squares, sum_of_squares_computational, sum_of_squares_streaming};
use sumsq::Sample;

#[test]
fn quadrature_oracle_matches_closed_forms() {
    // I_x(a, 1) = x^a and I_x(1, b) = 1 − (1 − x)^b
    for &(a, x) in &[(0.5, 0.3), (2.5, 0.7), (7.0, 0.9)] {
        assert!((reg_inc_beta_quadrature(a, 1.0, x) - x.powf(a)).abs() < 1e-11);
    }
    for &(b, x) in &[(1.5, 0.2), (10.0, 0.05)] {
        assert!((reg_inc_beta_quadrature(1.0, b, x) - (1.0 - (1.0 - x).powf(b))).abs() < 1e-11);
    }
    assert!((reg_inc_beta_quadrature(2.0, 3.0, 0.25) - 0.261_718_75).abs() < 1e-11);
}

#[test]
fn reg_inc_beta_against_quadrature_grid() {
    let grid = beta_grid();
    assert_eq!(grid.len(), 50);
    for (a, b, x) in grid {
        let oracle = reg_inc_beta_quadrature(a, b, x);
        let got = reg_inc_beta(a, b, x).unwrap();
        assert!((got - oracle).abs() < 1e-8, "I_{x}({a}, {b}) = {got}, oracle {oracle}");
    }
}

#[test]
fn reg_inc_beta_quarter_point() {
    let oracle = reg_inc_beta_quadrature(2.0, 3.0, 0.25);
    assert!((oracle - 0.2617).abs() < 1e-4);
    assert!((reg_inc_beta(2.0, 3.0, 0.25).unwrap() - oracle).abs() < 1e-10);
}

#[test]
fn ln_gamma_matches_factorials() {
    let mut ln_fact = 0.0;
    for k in 1..=100u32 {
        // ln Γ(k) = ln (k−1)!
        assert!((ln_gamma(k as f64).unwrap() - ln_fact).abs() < 1e-10, "k = {k}");
        ln_fact += (k as f64).ln();
    }
    // Γ(k + ½) = (2k)! √π / (4^k k!)
    for k in 0..60u32 {
        let ln_double_fact: f64 = (1..=2 * k).map(|i| (i as f64).ln()).sum();
        let ln_fact_k: f64 = (1..=k).map(|i| (i as f64).ln()).sum();
        let expected = ln_double_fact + 0.5 * std::f64::consts::PI.ln() - k as f64 * 4f64.ln() - ln_fact_k;
        assert!((ln_gamma(k as f64 + 0.5).unwrap() - expected).abs() < 1e-10, "k = {k}");
    }
}

#[test]
fn f_tail_against_monte_carlo() {
    let oracle = f_tail_monte_carlo(16.0, 2, 3, 2_000_000, 31_337);
    let got = f_upper_tail(16.0, FParams::new(2, 3).unwrap()).unwrap();
    assert!((oracle - 0.0252).abs() < 1e-3, "oracle drifted: {oracle}");
    assert!((got - 0.0252).abs() < 1e-3);
    assert!((got - oracle).abs() < 1e-3);
}

#[test]
fn f_tail_reproduces_table_significance() {
    let p = f_upper_tail(8.8276, FParams::new(1, 2).unwrap()).unwrap();
    assert!((p - 0.0971).abs() < 5e-4);
    let p = t_two_sided(2.9711, 2).unwrap();
    assert!((p - 0.0971).abs() < 5e-4);
}

#[test]
fn t_tail_df2_closed_form() {
    for i in 0..=1000 {
        let t = i as f64 / 100.0;
        let closed = 1.0 - t / (2.0 + t * t).sqrt();
        let got = t_two_sided(t, 2).unwrap();
        assert!((got - closed).abs() < 1e-10, "t = {t}: {got} vs {closed}");
    }
    assert!((t_two_sided(1.0, 2).unwrap() - 0.42265).abs() < 1e-4);
}

#[test]
fn shifted_data_stability() {
    let data: [i64; 4] = [100_000_011, 100_000_007, 100_000_030, 100_000_020];
    let (num, den) = exact_integer_ss(&data);
    assert_eq!((num % den, num / den), (0, 314));

    let values: Vec<f64> = data.iter().map(|&v| v as f64).collect();
    let sample = Sample::new(values.clone()).unwrap();
    assert!((sum_of_squares(&sample).unwrap() - 314.0).abs() < 1e-6);
    assert!((sum_of_squares_streaming(values).unwrap().sum_squares - 314.0).abs() < 1e-6);
    let raw = sum_of_squares_computational(&sample).unwrap();
    assert!((raw - 314.0).abs() > 1e-3, "raw-moment formula returned {raw}");
}
