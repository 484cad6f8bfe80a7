//! Between/within partition of the total sum of squares and the one-way
//! ANOVA table built from it.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::dist::{f_upper_tail, FParams};
use crate::error::{Result, StatsError};
use crate::kernel::{self, Sample};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Group {
    pub label: String,
    pub sample: Sample,
}

/// Labeled groups in order of first appearance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupedSample {
    groups: Vec<Group>,
}

impl GroupedSample {
    /// Requires at least two groups, each non-empty, with unique labels.
    pub fn new<L: Into<String>>(groups: Vec<(L, Sample)>) -> Result<Self> {
        let groups: Vec<Group> =
            groups.into_iter().map(|(label, sample)| Group { label: label.into(), sample }).collect();
        if groups.len() < 2 {
            return Err(StatsError::FewerThanTwoGroups(groups.len()));
        }
        let mut seen = HashSet::new();
        for g in &groups {
            if g.sample.is_empty() {
                return Err(StatsError::EmptyGroup(g.label.clone()));
            }
            if !seen.insert(g.label.as_str()) {
                return Err(StatsError::DuplicateLabel(g.label.clone()));
            }
        }
        Ok(Self { groups })
    }

    /// Groups `(label, value)` pairs, ordering groups by first appearance.
    pub fn from_labeled<L, I>(pairs: I) -> Result<Self>
    where
        L: AsRef<str>,
        I: IntoIterator<Item = (L, f64)>,
    {
        let mut order: Vec<(String, Vec<f64>)> = Vec::new();
        for (label, value) in pairs {
            let label = label.as_ref();
            match order.iter_mut().find(|(l, _)| l == label) {
                Some((_, values)) => values.push(value),
                None => order.push((label.to_string(), vec![value])),
            }
        }
        let groups = order.into_iter().map(|(l, v)| Ok((l, Sample::new(v)?))).collect::<Result<Vec<_>>>()?;
        Self::new(groups)
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn k(&self) -> usize {
        self.groups.len()
    }

    pub fn total_n(&self) -> usize {
        self.groups.iter().map(|g| g.sample.len()).sum()
    }

    /// All observations, group by group.
    pub fn pooled(&self) -> Sample {
        let values = self.groups.iter().flat_map(|g| g.sample.values().iter().copied()).collect();
        Sample::new(values).expect("group samples are already validated")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SsPartition {
    pub ss_total: f64,
    pub ss_between: f64,
    pub ss_within: f64,
    pub df_between: usize,
    pub df_within: usize,
    pub df_total: usize,
    pub grand_mean: f64,
    pub group_means: Vec<f64>,
}

impl SsPartition {
    /// Between-group SS by subtraction, `SS_total − SS_within`.
    pub fn ss_between_by_subtraction(&self) -> f64 {
        self.ss_total - self.ss_within
    }
}

pub fn partition_ss(g: &GroupedSample) -> Result<SsPartition> {
    let pooled = g.pooled();
    let grand_mean = kernel::mean(&pooled)?;
    let ss_total = kernel::sum_of_squares(&pooled)?;

    let mut ss_within = 0.0;
    let mut group_means = Vec::with_capacity(g.k());
    let mut sizes = Vec::with_capacity(g.k());
    for group in g.groups() {
        ss_within += kernel::sum_of_squares(&group.sample)?;
        group_means.push(kernel::mean(&group.sample)?);
        sizes.push(group.sample.len() as f64);
    }
    let ss_between = kernel::weighted_ss_about(&group_means, &sizes, grand_mean);

    let n = g.total_n();
    let k = g.k();
    Ok(SsPartition {
        ss_total,
        ss_between,
        ss_within,
        df_between: k - 1,
        df_within: n - k,
        df_total: n - 1,
        grand_mean,
        group_means,
    })
}

/// How the groups were formed. Changes only the interpretive caveat.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Design {
    /// Units randomly assigned to groups by the investigator.
    Experimental,
    /// Group membership not under the investigator's control.
    #[default]
    Observational,
}

impl Design {
    pub fn caveat(self) -> Option<&'static str> {
        match self {
            Design::Experimental => None,
            Design::Observational => Some(
                "Observational design: groups were not randomly assigned, so a difference \
                 between them does not establish cause and effect.",
            ),
        }
    }
}

/// Statistic that could not be formed as a finite ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    /// No variation inside groups but the means differ: statistic is +∞, p = 0.
    ZeroWithinVariance,
    /// Two-sample analogue of `ZeroWithinVariance` (or of `AllEqual` when the means agree).
    ZeroPooledVariance,
    /// Every observation is identical: statistic undefined, no p-value.
    AllEqual,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaTable {
    pub partition: SsPartition,
    pub ms_between: f64,
    pub ms_within: f64,
    /// `None` when degenerate; see `degeneracy`.
    pub f_stat: Option<f64>,
    pub p_value: Option<f64>,
    /// `None` when the total SS is zero.
    pub eta_squared: Option<f64>,
    pub design: Design,
    pub degeneracy: Option<Degeneracy>,
}

impl AnovaTable {
    pub fn caveat(&self) -> Option<&'static str> {
        self.design.caveat()
    }
}

pub fn anova(g: &GroupedSample, design: Design) -> Result<AnovaTable> {
    let partition = partition_ss(g)?;
    if partition.df_within == 0 {
        return Err(StatsError::InsufficientData { needed: g.k() + 1, got: g.total_n() });
    }
    let ms_between = partition.ss_between / partition.df_between as f64;
    let ms_within = partition.ss_within / partition.df_within as f64;

    let (f_stat, p_value, degeneracy) = if partition.ss_total == 0.0 {
        (None, None, Some(Degeneracy::AllEqual))
    } else if partition.ss_within == 0.0 {
        (None, Some(0.0), Some(Degeneracy::ZeroWithinVariance))
    } else {
        let f = ms_between / ms_within;
        let p = f_upper_tail(f, FParams::new(partition.df_between, partition.df_within)?)?;
        (Some(f), Some(p), None)
    };
    let eta_squared =
        (partition.ss_total > 0.0).then(|| (partition.ss_between / partition.ss_total).clamp(0.0, 1.0));

    Ok(AnovaTable { partition, ms_between, ms_within, f_stat, p_value, eta_squared, design, degeneracy })
}
