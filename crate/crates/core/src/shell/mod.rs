//! Data ingestion, commands and report rendering behind the `sumsq` binary.

mod dataset;
mod report;

use thiserror::Error;

use crate::dist::ALGORITHM;
use crate::error::StatsError;
use crate::glm::{dummy_encode, fit_simple_regression, point_biserial, t_test_independent};
use crate::kernel::{self, DivisorMode, Sample};
use crate::lab::{run_study, StudyConfig, StudyKind};
use crate::partition::{anova, partition_ss, Design, GroupedSample};

pub use dataset::{parse_csv, parse_csv_reader, Cell, Column, CsvOptions, Dataset};
pub use report::{
    AnovaCheck, AnovaReport, DescribeReport, GroupSummary, RegressReport, Report, ReportKind, StudyBody,
    TTestReport,
};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const DATA: i32 = 3;
    pub const NUMERIC: i32 = 4;
}

#[derive(Debug, Error)]
pub enum ShellError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at row {row}, column {column}: {message}")]
    Parse { row: u64, column: usize, message: String },

    #[error("row {row} has {found} fields, expected {expected}")]
    RaggedRows { row: u64, expected: usize, found: usize },

    #[error("unknown column '{0}'")]
    UnknownColumn(String),

    #[error("column '{column}' is not numeric: row {row} holds '{text}'")]
    NonNumericColumn { column: String, row: u64, text: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Stats(#[from] StatsError),
}

impl ShellError {
    pub fn exit_code(&self) -> i32 {
        match self {
            ShellError::Usage(_) => exit::USAGE,
            ShellError::Io { .. }
            | ShellError::Parse { .. }
            | ShellError::RaggedRows { .. }
            | ShellError::UnknownColumn(_)
            | ShellError::NonNumericColumn { .. } => exit::DATA,
            ShellError::Stats(e) => match e {
                StatsError::Config(_) => exit::USAGE,
                StatsError::ZeroTotalVariance
                | StatsError::ZeroPredictorVariance
                | StatsError::Domain(_)
                | StatsError::NoConvergence(_) => exit::NUMERIC,
                StatsError::EmptySample
                | StatsError::EmptyStream
                | StatsError::NonFinite { .. }
                | StatsError::InsufficientData { .. }
                | StatsError::FewerThanTwoGroups(_)
                | StatsError::NotTwoGroups(_)
                | StatsError::EmptyGroup(_)
                | StatsError::DuplicateLabel(_)
                | StatsError::LengthMismatch { .. } => exit::DATA,
            },
        }
    }
}

type Result<T> = std::result::Result<T, ShellError>;

/// Values of `value_column` split by `group_column`, groups in order of first
/// appearance.
fn group_values(ds: &Dataset, value_column: &str, group_column: &str) -> Result<Vec<(String, Vec<f64>)>> {
    let values = ds.numeric(value_column)?;
    let labels = ds.labels(group_column)?;
    let mut groups: Vec<(String, Vec<f64>)> = Vec::new();
    for (label, value) in labels.into_iter().zip(values) {
        match groups.iter_mut().find(|(l, _)| l == label) {
            Some((_, v)) => v.push(value),
            None => groups.push((label.to_string(), vec![value])),
        }
    }
    Ok(groups)
}

fn grouped_sample(groups: Vec<(String, Vec<f64>)>) -> Result<GroupedSample> {
    let groups = groups
        .into_iter()
        .map(|(l, v)| Ok((l, Sample::new(v)?)))
        .collect::<std::result::Result<Vec<_>, StatsError>>()?;
    Ok(GroupedSample::new(groups)?)
}

fn two_groups(ds: &Dataset, value_column: &str, group_column: &str) -> Result<GroupedSample> {
    let groups = group_values(ds, value_column, group_column)?;
    if groups.len() != 2 {
        return Err(StatsError::NotTwoGroups(groups.len()).into());
    }
    grouped_sample(groups)
}

fn summaries(g: &GroupedSample) -> Result<Vec<GroupSummary>> {
    g.groups()
        .iter()
        .map(|grp| {
            Ok(GroupSummary {
                label: grp.label.clone(),
                n: grp.sample.len(),
                mean: kernel::mean(&grp.sample)?,
            })
        })
        .collect()
}

pub fn cmd_describe(ds: &Dataset, value_column: &str, mode: DivisorMode) -> Result<Report> {
    let sample = Sample::new(ds.numeric(value_column)?)?;
    let s = kernel::summarize(&sample, mode)?;
    Ok(Report::Describe(DescribeReport {
        column: value_column.to_string(),
        n: s.n,
        mean: s.mean,
        sum_squares: s.sum_squares,
        variance: s.variance,
        std_dev: s.std_dev,
        mean_abs_dev: s.mean_abs_dev,
        divisor_mode: s.divisor_mode,
    }))
}

pub fn cmd_anova(ds: &Dataset, value_column: &str, group_column: &str, design: Design) -> Result<Report> {
    let g = grouped_sample(group_values(ds, value_column, group_column)?)?;
    let table = anova(&g, design)?;

    let (r, r_squared, t) = if g.k() == 2 {
        let assoc = point_biserial(&g).ok();
        let [a, b] = [&g.groups()[0].sample, &g.groups()[1].sample];
        let t = t_test_independent(a, b)?.t_stat;
        (assoc.map(|x| x.r), assoc.map(|x| x.r_squared), t)
    } else {
        (None, None, None)
    };

    let p = &table.partition;
    Ok(Report::Anova(AnovaReport {
        value_column: value_column.to_string(),
        group_column: group_column.to_string(),
        groups: summaries(&g)?,
        ss_between: p.ss_between,
        ss_within: p.ss_within,
        ss_total: p.ss_total,
        df_between: p.df_between,
        df_within: p.df_within,
        df_total: p.df_total,
        ms_between: table.ms_between,
        ms_within: table.ms_within,
        f: table.f_stat,
        p: table.p_value,
        eta_squared: table.eta_squared,
        r,
        r_squared,
        t,
        design,
        degenerate: table.degeneracy,
        caveat: table.caveat().map(str::to_string),
    }))
}

pub fn cmd_ttest(ds: &Dataset, value_column: &str, group_column: &str) -> Result<Report> {
    let g = two_groups(ds, value_column, group_column)?;
    let [a, b] = [&g.groups()[0].sample, &g.groups()[1].sample];
    let result = t_test_independent(a, b)?;
    let f = anova(&g, Design::default())?.f_stat;
    Ok(Report::Ttest(TTestReport {
        value_column: value_column.to_string(),
        group_column: group_column.to_string(),
        groups: summaries(&g)?,
        t: result.t_stat,
        df: result.df,
        p: result.p_value,
        mean_diff: result.mean_diff,
        pooled_variance: result.pooled_variance,
        t_squared: result.t_stat.map(|t| t * t),
        f,
        degenerate: result.degeneracy,
    }))
}

/// Predictor for `cmd_regress`: a numeric column, or a two-level grouping
/// column that is dummy coded.
#[derive(Debug, Clone, Copy)]
pub enum Predictor<'a> {
    Continuous(&'a str),
    Groups(&'a str),
}

fn relative_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300) || (a - b).abs() <= 1e-12
}

pub fn cmd_regress(ds: &Dataset, y_column: &str, predictor: Predictor<'_>) -> Result<Report> {
    let (x, y, check, coding) = match predictor {
        Predictor::Continuous(x_column) => {
            let x = Sample::new(ds.numeric(x_column)?)?;
            let y = Sample::new(ds.numeric(y_column)?)?;
            (x, y, None, None)
        }
        Predictor::Groups(group_column) => {
            let g = two_groups(ds, y_column, group_column)?;
            let (x, y) = dummy_encode(&g)?;
            let p = partition_ss(&g)?;
            let eta_squared = (p.ss_total > 0.0).then(|| p.ss_between / p.ss_total);
            let coding = [g.groups()[0].label.clone(), g.groups()[1].label.clone()];
            (x, y, Some((p.ss_between, p.ss_within, eta_squared)), Some(coding))
        }
    };
    let fit = fit_simple_regression(&x, &y)?;
    let f_test = fit.f_test()?;

    let anova = check.map(|(ss_between, ss_within, eta_squared)| {
        let matches = relative_eq(fit.ss_model, ss_between, 1e-9)
            && relative_eq(fit.ss_residual, ss_within, 1e-9)
            && match (fit.r_squared, eta_squared) {
                (Some(a), Some(b)) => relative_eq(a, b, 1e-9),
                (None, None) => true,
                _ => false,
            };
        AnovaCheck { ss_between, ss_within, eta_squared, matches }
    });

    let (x_column, group_column) = match predictor {
        Predictor::Continuous(c) => (Some(c.to_string()), None),
        Predictor::Groups(c) => (None, Some(c.to_string())),
    };
    Ok(Report::Regress(RegressReport {
        y_column: y_column.to_string(),
        x_column,
        group_column,
        coding,
        n: fit.n,
        slope: fit.slope,
        intercept: fit.intercept,
        ss_model: fit.ss_model,
        ss_residual: fit.ss_residual,
        ss_total: fit.ss_total,
        r_squared: fit.r_squared,
        f: f_test.map(|(f, _)| f),
        p: f_test.map(|(_, p)| p),
        anova,
    }))
}

pub fn cmd_study(kind: StudyKind, cfg: &StudyConfig) -> Result<Report> {
    let r = run_study(kind, cfg)?;
    Ok(Report::Study(StudyBody {
        study: r.kind,
        seed: cfg.seed,
        replicates: cfg.replicates,
        sample_size: cfg.sample_size,
        true_mean: cfg.true_mean,
        true_sd: cfg.true_sd,
        contamination: cfg.contamination,
        generator: ALGORITHM.to_string(),
        estimators: r.estimators,
        mean_ratio: r.mean_ratio,
        efficiency_ratio: r.efficiency_ratio,
        verdict: r.verdict,
    }))
}
