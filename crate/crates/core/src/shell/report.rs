//! Report documents and their text / JSON renderings.
//!
//! JSON carries every number at full precision (shortest round-trip form).
//! Text tables use three decimals; the `Sig.` column drops the leading zero.

use std::fmt::Write as _;

use serde::Serialize;

use crate::dist::ContaminationModel;
use crate::kernel::DivisorMode;
use crate::lab::{EstimatorSummary, StudyKind, Verdict};
use crate::partition::{Degeneracy, Design};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Describe,
    Anova,
    Ttest,
    Regress,
    Study,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupSummary {
    pub label: String,
    pub n: usize,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescribeReport {
    pub column: String,
    pub n: usize,
    pub mean: f64,
    pub sum_squares: f64,
    pub variance: f64,
    pub std_dev: f64,
    pub mean_abs_dev: f64,
    pub divisor_mode: DivisorMode,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaReport {
    pub value_column: String,
    pub group_column: String,
    pub groups: Vec<GroupSummary>,
    pub ss_between: f64,
    pub ss_within: f64,
    pub ss_total: f64,
    pub df_between: usize,
    pub df_within: usize,
    pub df_total: usize,
    pub ms_between: f64,
    pub ms_within: f64,
    pub f: Option<f64>,
    pub p: Option<f64>,
    pub eta_squared: Option<f64>,
    /// Two-group case only.
    pub r: Option<f64>,
    pub r_squared: Option<f64>,
    pub t: Option<f64>,
    pub design: Design,
    pub degenerate: Option<Degeneracy>,
    pub caveat: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TTestReport {
    pub value_column: String,
    pub group_column: String,
    pub groups: Vec<GroupSummary>,
    pub t: Option<f64>,
    pub df: usize,
    pub p: Option<f64>,
    pub mean_diff: f64,
    pub pooled_variance: f64,
    pub t_squared: Option<f64>,
    /// F of the matching two-group ANOVA.
    pub f: Option<f64>,
    pub degenerate: Option<Degeneracy>,
}

/// Agreement between a dummy-coded regression and the ANOVA on the same groups.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaCheck {
    pub ss_between: f64,
    pub ss_within: f64,
    pub eta_squared: Option<f64>,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressReport {
    pub y_column: String,
    pub x_column: Option<String>,
    pub group_column: Option<String>,
    /// Group coded 0 and group coded 1, for the dummy-coded path.
    pub coding: Option<[String; 2]>,
    pub n: usize,
    pub slope: f64,
    pub intercept: f64,
    pub ss_model: f64,
    pub ss_residual: f64,
    pub ss_total: f64,
    pub r_squared: Option<f64>,
    pub f: Option<f64>,
    pub p: Option<f64>,
    pub anova: Option<AnovaCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyBody {
    pub study: StudyKind,
    pub seed: u64,
    pub replicates: usize,
    pub sample_size: usize,
    pub true_mean: f64,
    pub true_sd: f64,
    pub contamination: Option<ContaminationModel>,
    pub generator: String,
    pub estimators: Vec<EstimatorSummary>,
    pub mean_ratio: f64,
    pub efficiency_ratio: Option<f64>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Report {
    Describe(DescribeReport),
    Anova(AnovaReport),
    Ttest(TTestReport),
    Regress(RegressReport),
    Study(StudyBody),
}

impl Report {
    pub fn kind(&self) -> ReportKind {
        match self {
            Report::Describe(_) => ReportKind::Describe,
            Report::Anova(_) => ReportKind::Anova,
            Report::Ttest(_) => ReportKind::Ttest,
            Report::Regress(_) => ReportKind::Regress,
            Report::Study(_) => ReportKind::Study,
        }
    }

    pub fn caveat(&self) -> Option<&str> {
        match self {
            Report::Anova(a) => a.caveat.as_deref(),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only serializable data")
    }

    pub fn render_text(&self) -> String {
        match self {
            Report::Describe(r) => render_describe(r),
            Report::Anova(r) => render_anova(r),
            Report::Ttest(r) => render_ttest(r),
            Report::Regress(r) => render_regress(r),
            Report::Study(r) => render_study(r),
        }
    }
}

pub(crate) fn fixed3(x: f64) -> String {
    format!("{x:.3}")
}

/// Three decimals with the leading zero removed, e.g. `.097`.
pub(crate) fn sig3(p: f64) -> String {
    let s = fixed3(p);
    match s.strip_prefix("0.") {
        Some(rest) => format!(".{rest}"),
        None => s,
    }
}

fn opt3(x: Option<f64>) -> String {
    x.map_or_else(|| "undefined".to_string(), fixed3)
}

fn degenerate_note(d: Degeneracy) -> &'static str {
    match d {
        Degeneracy::ZeroWithinVariance => "no variation within groups; F is infinite and p = 0",
        Degeneracy::ZeroPooledVariance => "pooled variance is zero; t is not finite",
        Degeneracy::AllEqual => "every value is identical; F and p are undefined",
    }
}

fn render_groups(out: &mut String, groups: &[GroupSummary]) {
    for g in groups {
        let _ = writeln!(out, "  {:<12} n = {:<4} mean = {}", g.label, g.n, fixed3(g.mean));
    }
}

fn render_describe(r: &DescribeReport) -> String {
    let divisor = match r.divisor_mode {
        DivisorMode::Sample => "n-1",
        DivisorMode::Population => "N",
    };
    let mut out = String::new();
    let _ = writeln!(out, "Column: {} (variance divisor {divisor})", r.column);
    let rows = [
        ("n", r.n.to_string()),
        ("Mean", fixed3(r.mean)),
        ("Sum of Squares", fixed3(r.sum_squares)),
        ("Variance", fixed3(r.variance)),
        ("Std. Deviation", fixed3(r.std_dev)),
        ("Mean Abs. Dev.", fixed3(r.mean_abs_dev)),
    ];
    for (name, value) in rows {
        let _ = writeln!(out, "{name:<16}{value:>14}");
    }
    out
}

fn table_header() -> String {
    format!("{:<16}{:>16}{:>6}{:>14}{:>10}{:>8}", "", "Sum of Squares", "df", "Mean Square", "F", "Sig.")
}

fn table_row(
    label: &str,
    ss: f64,
    df: usize,
    ms: Option<f64>,
    f: Option<String>,
    sig: Option<String>,
) -> String {
    let mut row = format!("{label:<16}{:>16}{df:>6}", fixed3(ss));
    if let Some(ms) = ms {
        let _ = write!(row, "{:>14}", fixed3(ms));
    }
    if let Some(f) = f {
        let _ = write!(row, "{f:>10}");
    }
    if let Some(sig) = sig {
        let _ = write!(row, "{sig:>8}");
    }
    row
}

fn render_anova(r: &AnovaReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "One-way ANOVA: {} by {}", r.value_column, r.group_column);
    render_groups(&mut out, &r.groups);
    out.push('\n');

    let (f_cell, sig_cell) = match (r.f, r.p) {
        (Some(f), Some(p)) => (fixed3(f), sig3(p)),
        (None, Some(p)) => ("inf".to_string(), sig3(p)),
        _ => ("--".to_string(), "--".to_string()),
    };
    let _ = writeln!(out, "{}", table_header());
    let _ = writeln!(
        out,
        "{}",
        table_row(
            "Between Groups",
            r.ss_between,
            r.df_between,
            Some(r.ms_between),
            Some(f_cell),
            Some(sig_cell)
        )
    );
    let _ = writeln!(
        out,
        "{}",
        table_row("Within Groups", r.ss_within, r.df_within, Some(r.ms_within), None, None)
    );
    let _ = writeln!(out, "{}", table_row("Total", r.ss_total, r.df_total, None, None, None));
    out.push('\n');

    let _ = writeln!(out, "eta^2 = {}", opt3(r.eta_squared));
    if let Some(rr) = r.r {
        let _ = writeln!(out, "r = {}  (r^2 = {})", fixed3(rr), opt3(r.r_squared));
    }
    if let Some(t) = r.t {
        let _ = writeln!(out, "t = {}  (t^2 = {})", fixed3(t), fixed3(t * t));
    }
    if let Some(d) = r.degenerate {
        let _ = writeln!(out, "note: {}", degenerate_note(d));
    }
    if let Some(c) = &r.caveat {
        let _ = writeln!(out, "\n{c}");
    }
    out
}

fn render_ttest(r: &TTestReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "Independent-samples t-test (pooled variance): {} by {}",
        r.value_column, r.group_column
    );
    render_groups(&mut out, &r.groups);
    out.push('\n');
    let _ = writeln!(out, "t = {}", opt3(r.t));
    let _ = writeln!(out, "df = {}", r.df);
    let _ = writeln!(out, "Sig. (2-tailed) = {}", r.p.map_or_else(|| "undefined".into(), sig3));
    let _ = writeln!(out, "mean difference = {}", fixed3(r.mean_diff));
    let _ = writeln!(out, "pooled variance = {}", fixed3(r.pooled_variance));
    let _ = writeln!(out, "t^2 = {}  (ANOVA F = {})", opt3(r.t_squared), opt3(r.f));
    if let Some(d) = r.degenerate {
        let _ = writeln!(out, "note: {}", degenerate_note(d));
    }
    out
}

fn render_regress(r: &RegressReport) -> String {
    let mut out = String::new();
    match (&r.x_column, &r.group_column, &r.coding) {
        (Some(x), _, _) => {
            let _ = writeln!(out, "Least-squares regression: {} on {}", r.y_column, x);
        }
        (None, Some(g), Some([zero, one])) => {
            let _ =
                writeln!(out, "Least-squares regression: {} on {} ({zero} = 0, {one} = 1)", r.y_column, g);
        }
        _ => {
            let _ = writeln!(out, "Least-squares regression: {}", r.y_column);
        }
    }
    let _ = writeln!(out, "n = {}", r.n);
    let _ = writeln!(out, "slope = {}", fixed3(r.slope));
    let _ = writeln!(out, "intercept = {}", fixed3(r.intercept));
    let _ = writeln!(out, "SS model = {}", fixed3(r.ss_model));
    let _ = writeln!(out, "SS residual = {}", fixed3(r.ss_residual));
    let _ = writeln!(out, "SS total = {}", fixed3(r.ss_total));
    let _ = writeln!(out, "R^2 = {}", opt3(r.r_squared));
    if let (Some(f), Some(p)) = (r.f, r.p) {
        let _ = writeln!(out, "F = {}  Sig. = {}", fixed3(f), sig3(p));
    }
    if let Some(check) = &r.anova {
        let verdict = if check.matches { "matches" } else { "DOES NOT match" };
        let _ = writeln!(
            out,
            "ANOVA: SS between = {}, SS within = {}, eta^2 = {} ({verdict} the regression)",
            fixed3(check.ss_between),
            fixed3(check.ss_within),
            opt3(check.eta_squared)
        );
    }
    out
}

fn render_study(r: &StudyBody) -> String {
    let mut out = String::new();
    let name = match r.study {
        StudyKind::Unbiasedness => "unbiasedness",
        StudyKind::ScaleEfficiency => "scale-efficiency",
    };
    let _ = writeln!(
        out,
        "Study: {name}  (seed {}, {} replicates, n = {}, mean {}, sd {})",
        r.seed, r.replicates, r.sample_size, r.true_mean, r.true_sd
    );
    match &r.contamination {
        Some(m) => {
            let _ = writeln!(
                out,
                "Population: contaminated normal, epsilon = {}, scale factor = {}",
                m.epsilon, m.scale_factor
            );
        }
        None => {
            let _ = writeln!(out, "Population: normal");
        }
    }
    out.push('\n');
    let _ = writeln!(out, "{:<20}{:>12}{:>12}{:>12}{:>10}", "estimator", "target", "mean", "spread", "cv");
    for e in &r.estimators {
        let _ =
            writeln!(out, "{:<20}{:>12.5}{:>12.5}{:>12.5}{:>10.5}", e.name, e.target, e.mean, e.spread, e.cv);
    }
    out.push('\n');
    match r.study {
        StudyKind::Unbiasedness => {
            let _ = writeln!(out, "mean(divisor n) / mean(divisor n-1) = {:.5}", r.mean_ratio);
        }
        StudyKind::ScaleEfficiency => {
            let _ = writeln!(out, "mean MAD / mean SD = {:.5}", r.mean_ratio);
        }
    }
    if let Some(e) = r.efficiency_ratio {
        let _ = writeln!(out, "efficiency ratio CV(MAD)/CV(SD) = {e:.5}");
    }
    let _ = writeln!(out, "verdict: {}", r.verdict);
    out
}
