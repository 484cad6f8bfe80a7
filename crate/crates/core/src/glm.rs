//! Two-sample t-test, point-biserial correlation and simple least-squares
//! regression, all expressed through the same sums of squares as the ANOVA.
//!
//! With two groups the pieces line up exactly: `t² = F`, the two-sided t
//! p-value equals the upper-tail F p-value, and regressing the outcome on a 0/1
//! group code reproduces `SS_between` as the model SS and η² as R².

use serde::Serialize;

use crate::dist::{f_upper_tail, t_two_sided, FParams};
use crate::error::{Result, StatsError};
use crate::kernel::{self, Sample};
use crate::partition::{partition_ss, Degeneracy, GroupedSample};

/// Pooled-variance (Student) two-sample t-test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TTestResult {
    /// `None` when the pooled variance is zero; see `degeneracy`.
    pub t_stat: Option<f64>,
    pub df: usize,
    /// Two-sided.
    pub p_value: Option<f64>,
    pub mean_diff: f64,
    pub pooled_variance: f64,
    pub degeneracy: Option<Degeneracy>,
}

pub fn t_test_independent(a: &Sample, b: &Sample) -> Result<TTestResult> {
    let (n1, n2) = (a.len(), b.len());
    if n1 == 0 || n2 == 0 {
        return Err(StatsError::EmptySample);
    }
    if n1 + n2 < 3 {
        return Err(StatsError::InsufficientData { needed: 3, got: n1 + n2 });
    }
    let df = n1 + n2 - 2;
    let mean_diff = kernel::mean(a)? - kernel::mean(b)?;
    let pooled_variance = (kernel::sum_of_squares(a)? + kernel::sum_of_squares(b)?) / df as f64;

    if pooled_variance == 0.0 {
        let p_value = (mean_diff != 0.0).then_some(0.0);
        return Ok(TTestResult {
            t_stat: None,
            df,
            p_value,
            mean_diff,
            pooled_variance,
            degeneracy: Some(Degeneracy::ZeroPooledVariance),
        });
    }

    let se = (pooled_variance * (1.0 / n1 as f64 + 1.0 / n2 as f64)).sqrt();
    let t = mean_diff / se;
    Ok(TTestResult {
        t_stat: Some(t),
        df,
        p_value: Some(t_two_sided(t, df)?),
        mean_diff,
        pooled_variance,
        degeneracy: None,
    })
}

/// Correlation between a 0/1 group code and the outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Association {
    pub r: f64,
    pub r_squared: f64,
}

/// Point-biserial correlation for exactly two groups.
///
/// The first-listed group is coded 0 and the second 1, so `r > 0` when the
/// second group has the larger mean. Reordering the groups flips the sign of
/// `r` and leaves `r_squared` unchanged.
pub fn point_biserial(g: &GroupedSample) -> Result<Association> {
    if g.k() != 2 {
        return Err(StatsError::NotTwoGroups(g.k()));
    }
    let p = partition_ss(g)?;
    if p.ss_total == 0.0 {
        return Err(StatsError::ZeroTotalVariance);
    }
    let r_squared = (p.ss_between / p.ss_total).clamp(0.0, 1.0);
    let direction = p.group_means[1] - p.group_means[0];
    let r = if direction == 0.0 { 0.0 } else { direction.signum() * r_squared.sqrt() };
    Ok(Association { r, r_squared })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    pub ss_model: f64,
    pub ss_residual: f64,
    pub ss_total: f64,
    /// `None` when the response is constant.
    pub r_squared: Option<f64>,
    pub n: usize,
}

impl RegressionFit {
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }

    /// Model F statistic `SS_model / (SS_residual / (n − 2))` and its upper-tail
    /// p-value. `None` when `n < 3` or the fit is exact.
    pub fn f_test(&self) -> Result<Option<(f64, f64)>> {
        if self.n < 3 || self.ss_residual <= 0.0 {
            return Ok(None);
        }
        let df_resid = self.n - 2;
        let f = self.ss_model / (self.ss_residual / df_resid as f64);
        let p = f_upper_tail(f, FParams::new(1, df_resid)?)?;
        Ok(Some((f, p)))
    }

    /// Residual SS of an arbitrary line over the data, for optimality checks.
    pub fn residual_ss_of_line(x: &[f64], y: &[f64], slope: f64, intercept: f64) -> f64 {
        let residuals: Vec<f64> = x.iter().zip(y).map(|(&xi, &yi)| yi - (intercept + slope * xi)).collect();
        kernel::ss_about(&residuals, 0.0)
    }
}

/// Least-squares line `ŷ = intercept + slope·x`.
///
/// The slope is the centered cross-deviation sum over `SS(x)`; model and
/// residual SS are accumulated separately from the fitted values, so their
/// sum against `SS(y)` is a genuine check rather than an identity.
pub fn fit_simple_regression(x: &Sample, y: &Sample) -> Result<RegressionFit> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch { x: x.len(), y: y.len() });
    }
    let n = x.len();
    if n < 2 {
        return Err(StatsError::InsufficientData { needed: 2, got: n });
    }
    let ss_x = kernel::sum_of_squares(x)?;
    if ss_x == 0.0 {
        return Err(StatsError::ZeroPredictorVariance);
    }
    let slope = kernel::cross_deviations(x, y)? / ss_x;
    let (x_mean, y_mean) = (kernel::mean(x)?, kernel::mean(y)?);
    let intercept = y_mean - slope * x_mean;

    let fitted: Vec<f64> = x.values().iter().map(|&xi| intercept + slope * xi).collect();
    let residuals: Vec<f64> = y.values().iter().zip(&fitted).map(|(&yi, &fi)| yi - fi).collect();
    let ss_model = kernel::ss_about(&fitted, y_mean);
    let ss_residual = kernel::ss_about(&residuals, 0.0);
    let ss_total = kernel::sum_of_squares(y)?;
    let r_squared = (ss_total > 0.0).then(|| (ss_model / ss_total).clamp(0.0, 1.0));

    Ok(RegressionFit { slope, intercept, ss_model, ss_residual, ss_total, r_squared, n })
}

/// Codes the first-listed group 0 and the second 1; `y` is the pooled outcome
/// in the same order.
pub fn dummy_encode(g: &GroupedSample) -> Result<(Sample, Sample)> {
    if g.k() != 2 {
        return Err(StatsError::NotTwoGroups(g.k()));
    }
    let x = g
        .groups()
        .iter()
        .enumerate()
        .flat_map(|(code, group)| std::iter::repeat_n(code as f64, group.sample.len()))
        .collect();
    Ok((Sample::new(x)?, g.pooled()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{anova, Design};

    fn s(v: &[f64]) -> Sample {
        Sample::try_from(v).unwrap()
    }

    fn grouped(a: &[f64], b: &[f64]) -> GroupedSample {
        GroupedSample::new(vec![("g1", s(a)), ("g2", s(b))]).unwrap()
    }

    #[test]
    fn t_test_worked_example() {
        let r = t_test_independent(&s(&[11.0, 7.0]), &s(&[30.0, 20.0])).unwrap();
        let t = r.t_stat.unwrap();
        assert!((t + 2.971).abs() < 0.01);
        assert!((r.p_value.unwrap() - 0.097).abs() < 1e-3);
        assert_eq!(r.df, 2);
        assert_eq!(r.mean_diff, -16.0);
        assert_eq!(r.pooled_variance, 29.0);
    }

    #[test]
    fn t_test_trivial_cases() {
        let r = t_test_independent(&s(&[1.0, 2.0]), &s(&[1.0, 2.0])).unwrap();
        assert_eq!(r.t_stat, Some(0.0));
        assert_eq!(r.p_value, Some(1.0));

        let r = t_test_independent(&s(&[0.0, 0.0]), &s(&[1.0, 1.0])).unwrap();
        assert_eq!(r.degeneracy, Some(Degeneracy::ZeroPooledVariance));
        assert_eq!(r.t_stat, None);
        assert_eq!(r.p_value, Some(0.0));

        let r = t_test_independent(&s(&[3.0, 3.0]), &s(&[3.0])).unwrap();
        assert_eq!(r.degeneracy, Some(Degeneracy::ZeroPooledVariance));
        assert_eq!(r.p_value, None);
    }

    #[test]
    fn t_test_errors() {
        assert_eq!(
            t_test_independent(&s(&[1.0]), &s(&[2.0])),
            Err(StatsError::InsufficientData { needed: 3, got: 2 })
        );
        assert_eq!(t_test_independent(&s(&[]), &s(&[2.0, 3.0])), Err(StatsError::EmptySample));
        // A singleton group is fine when the other has spread.
        assert!(t_test_independent(&s(&[1.0]), &s(&[2.0, 4.0])).unwrap().t_stat.is_some());
    }

    #[test]
    fn t_squared_is_f() {
        let (a, b) = (s(&[11.0, 7.0]), s(&[30.0, 20.0]));
        let t = t_test_independent(&a, &b).unwrap();
        let f = anova(&grouped(&[11.0, 7.0], &[30.0, 20.0]), Design::default()).unwrap();
        let (t, f_stat) = (t.t_stat.unwrap(), f.f_stat.unwrap());
        assert!((t * t - f_stat).abs() <= 1e-9 * f_stat);
    }

    #[test]
    fn point_biserial_examples() {
        let a = point_biserial(&grouped(&[11.0, 7.0], &[30.0, 20.0])).unwrap();
        assert!((a.r_squared - 0.815).abs() < 1e-3);
        assert!((a.r - 0.903).abs() < 5e-3);

        let flipped = point_biserial(&grouped(&[30.0, 20.0], &[11.0, 7.0])).unwrap();
        assert!((flipped.r + 0.903).abs() < 5e-3);
        assert_eq!(flipped.r_squared, a.r_squared);

        let equal = point_biserial(&grouped(&[1.0, 3.0], &[0.0, 4.0])).unwrap();
        assert_eq!((equal.r, equal.r_squared), (0.0, 0.0));
    }

    #[test]
    fn point_biserial_errors() {
        let three = GroupedSample::new(vec![("a", s(&[1.0])), ("b", s(&[2.0])), ("c", s(&[3.0]))]).unwrap();
        assert_eq!(point_biserial(&three), Err(StatsError::NotTwoGroups(3)));
        assert_eq!(point_biserial(&grouped(&[2.0, 2.0], &[2.0])), Err(StatsError::ZeroTotalVariance));
    }

    #[test]
    fn regression_examples() {
        let fit = fit_simple_regression(&s(&[0.0, 0.0, 1.0, 1.0]), &s(&[11.0, 7.0, 30.0, 20.0])).unwrap();
        assert_eq!((fit.slope, fit.intercept), (16.0, 9.0));
        assert_eq!((fit.ss_model, fit.ss_residual, fit.ss_total), (256.0, 58.0, 314.0));
        assert!((fit.r_squared.unwrap() - 0.815).abs() < 1e-3);

        let fit = fit_simple_regression(&s(&[1.0, 2.0, 3.0]), &s(&[3.0, 5.0, 7.0])).unwrap();
        assert_eq!((fit.slope, fit.intercept, fit.r_squared), (2.0, 1.0, Some(1.0)));
        assert_eq!(fit.predict(10.0), 21.0);

        let fit = fit_simple_regression(&s(&[1.0, 2.0, 3.0]), &s(&[4.0, 4.0, 4.0])).unwrap();
        assert_eq!((fit.slope, fit.intercept, fit.ss_model), (0.0, 4.0, 0.0));
        assert_eq!(fit.r_squared, None);
    }

    #[test]
    fn regression_errors() {
        assert_eq!(
            fit_simple_regression(&s(&[1.0, 2.0]), &s(&[1.0])),
            Err(StatsError::LengthMismatch { x: 2, y: 1 })
        );
        assert_eq!(
            fit_simple_regression(&s(&[2.0, 2.0]), &s(&[1.0, 3.0])),
            Err(StatsError::ZeroPredictorVariance)
        );
        assert_eq!(
            fit_simple_regression(&s(&[2.0]), &s(&[1.0])),
            Err(StatsError::InsufficientData { needed: 2, got: 1 })
        );
    }

    #[test]
    fn dummy_encoding() {
        let (x, y) = dummy_encode(&grouped(&[11.0, 7.0], &[30.0, 20.0])).unwrap();
        assert_eq!(x.values(), &[0.0, 0.0, 1.0, 1.0]);
        assert_eq!(y.values(), &[11.0, 7.0, 30.0, 20.0]);

        let g = GroupedSample::new(vec![("a", s(&[1.0])), ("b", s(&[2.0, 3.0]))]).unwrap();
        let (x, y) = dummy_encode(&g).unwrap();
        assert_eq!(x.values(), &[0.0, 1.0, 1.0]);
        assert_eq!(y.values(), &[1.0, 2.0, 3.0]);

        let three = GroupedSample::new(vec![("a", s(&[1.0])), ("b", s(&[2.0])), ("c", s(&[3.0]))]).unwrap();
        assert_eq!(dummy_encode(&three), Err(StatsError::NotTwoGroups(3)));
    }

    #[test]
    fn dummy_regression_reproduces_anova() {
        let g = grouped(&[11.0, 7.0], &[30.0, 20.0]);
        let (x, y) = dummy_encode(&g).unwrap();
        let fit = fit_simple_regression(&x, &y).unwrap();
        let table = anova(&g, Design::default()).unwrap();
        assert_eq!(fit.ss_model, table.partition.ss_between);
        assert_eq!(fit.ss_residual, table.partition.ss_within);
        assert_eq!(fit.r_squared, table.eta_squared);
    }
}
