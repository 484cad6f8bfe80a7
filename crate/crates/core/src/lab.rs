//! Monte Carlo studies of variance and scale estimators.
//!
//! Two studies are provided:
//!
//! - **Unbiasedness**: draws normal samples and compares the variance computed
//!   with divisor `n` against divisor `n − 1`. The first is biased low by the
//!   factor `(n − 1)/n`; the second is unbiased.
//! - **Scale efficiency**: compares the sampling variability of the standard
//!   deviation with that of the mean absolute deviation, under a pure normal
//!   and under a scale-contaminated normal. Variability is measured by the
//!   coefficient of variation of each estimator across replicates, which is
//!   unaffected by the constant `√(π/2)` that puts the MAD on the SD's scale.
//!
//! Replicate `i` draws from [`RandomSource::for_task`]`(seed, i)`, and results
//! are reduced in replicate order, so reports do not depend on thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dist::{sample_contaminated, sample_normal, ContaminationModel, RandomSource};
use crate::error::{Result, StatsError};
use crate::kernel::{self, DivisorMode, Sample};

/// Smallest replicate count accepted for a study.
pub const MIN_REPLICATES: usize = 100;

/// `√(π/2)`, the factor taking the normal-theory MAD onto the SD's scale.
pub const MAD_TO_SD: f64 = 1.253_314_137_315_500_3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub seed: u64,
    pub replicates: usize,
    pub sample_size: usize,
    pub true_mean: f64,
    pub true_sd: f64,
    /// When present its `base_sd` must equal `true_sd`.
    pub contamination: Option<ContaminationModel>,
}

impl StudyConfig {
    pub fn normal(seed: u64, replicates: usize, sample_size: usize, true_sd: f64) -> Self {
        Self { seed, replicates, sample_size, true_mean: 0.0, true_sd, contamination: None }
    }

    /// Contaminated normal with base SD `true_sd`.
    pub fn contaminated(
        seed: u64,
        replicates: usize,
        sample_size: usize,
        true_sd: f64,
        epsilon: f64,
        scale_factor: f64,
    ) -> Self {
        Self {
            contamination: Some(ContaminationModel { epsilon, scale_factor, base_sd: true_sd }),
            ..Self::normal(seed, replicates, sample_size, true_sd)
        }
    }

    fn validate(&self, min_sample_size: usize) -> Result<()> {
        let fail = |msg: String| Err(StatsError::Config(msg));
        if self.replicates < MIN_REPLICATES {
            return fail(format!("replicates must be at least {MIN_REPLICATES}, got {}", self.replicates));
        }
        if self.sample_size < min_sample_size {
            return fail(format!("sample size must be at least {min_sample_size}, got {}", self.sample_size));
        }
        if !self.true_mean.is_finite() {
            return fail(format!("true mean must be finite, got {}", self.true_mean));
        }
        if !(self.true_sd.is_finite() && self.true_sd > 0.0) {
            return fail(format!("true sd must be positive, got {}", self.true_sd));
        }
        if let Some(model) = &self.contamination {
            model.validate().map_err(|e| StatsError::Config(e.to_string()))?;
            if model.base_sd != self.true_sd {
                return fail(format!(
                    "contamination base sd {} differs from true sd {}",
                    model.base_sd, self.true_sd
                ));
            }
        }
        Ok(())
    }

    fn draw(&self, src: &mut RandomSource) -> Result<Sample> {
        match &self.contamination {
            None => sample_normal(src, self.true_mean, self.true_sd, self.sample_size),
            Some(model) => {
                let centered = sample_contaminated(src, model, self.sample_size)?;
                centered.affine(1.0, self.true_mean)
            }
        }
    }

    fn population_variance(&self) -> f64 {
        match &self.contamination {
            None => self.true_sd * self.true_sd,
            Some(model) => model.variance(),
        }
    }

    /// `E|X − μ|` of the generating distribution.
    fn population_mean_abs_dev(&self) -> f64 {
        let sigma_mix = match &self.contamination {
            None => self.true_sd,
            Some(m) => m.base_sd * ((1.0 - m.epsilon) + m.epsilon * m.scale_factor),
        };
        sigma_mix / MAD_TO_SD
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StudyKind {
    Unbiasedness,
    ScaleEfficiency,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "SD_wins")]
    SdWins,
    #[serde(rename = "MAD_wins")]
    MadWins,
    #[serde(rename = "unbiased")]
    Unbiased,
    #[serde(rename = "bias_detected")]
    BiasDetected,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::SdWins => "SD_wins",
            Verdict::MadWins => "MAD_wins",
            Verdict::Unbiased => "unbiased",
            Verdict::BiasDetected => "bias_detected",
        })
    }
}

/// Distribution of one estimator across replicates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimatorSummary {
    pub name: String,
    /// Population value the estimator is aimed at.
    pub target: f64,
    pub mean: f64,
    /// Standard deviation of the estimates.
    pub spread: f64,
    /// `spread / mean`.
    pub cv: f64,
    /// Standard error of `mean`.
    pub std_error: f64,
}

impl EstimatorSummary {
    fn from_estimates(name: &str, target: f64, estimates: Vec<f64>) -> Result<Self> {
        let n = estimates.len();
        let stats = kernel::summarize(&Sample::new(estimates)?, DivisorMode::Sample)?;
        Ok(Self {
            name: name.to_string(),
            target,
            mean: stats.mean,
            spread: stats.std_dev,
            cv: stats.std_dev / stats.mean,
            std_error: stats.std_dev / (n as f64).sqrt(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyReport {
    pub kind: StudyKind,
    pub config: StudyConfig,
    pub estimators: Vec<EstimatorSummary>,
    /// Unbiasedness: mean(n-divisor) / mean(n−1 divisor).
    /// Scale efficiency: mean(MAD) / mean(SD).
    pub mean_ratio: f64,
    /// `CV(MAD-based) / CV(SD-based)`; scale-efficiency study only.
    pub efficiency_ratio: Option<f64>,
    pub verdict: Verdict,
}

impl StudyReport {
    pub fn estimator(&self, name: &str) -> Option<&EstimatorSummary> {
        self.estimators.iter().find(|e| e.name == name)
    }
}

/// Runs `per_replicate` for every replicate in parallel, returning results in
/// replicate order.
fn replicate<T, F>(cfg: &StudyConfig, per_replicate: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&Sample) -> Result<T> + Sync,
{
    (0..cfg.replicates)
        .into_par_iter()
        .map(|i| {
            let mut src = RandomSource::for_task(cfg.seed, i as u64);
            per_replicate(&cfg.draw(&mut src)?)
        })
        .collect()
}

/// Compares variance with divisor `n` against divisor `n − 1` on normal data.
pub fn run_unbiasedness_study(cfg: &StudyConfig) -> Result<StudyReport> {
    cfg.validate(2)?;
    if cfg.contamination.is_some() {
        return Err(StatsError::Config("the unbiasedness study draws from a pure normal".into()));
    }
    let n = cfg.sample_size;
    let pairs = replicate(cfg, |s| {
        let ss = kernel::sum_of_squares(s)?;
        Ok((ss / n as f64, ss / (n - 1) as f64))
    })?;
    let (biased, unbiased): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();

    let sigma2 = cfg.population_variance();
    let biased = EstimatorSummary::from_estimates("variance_n", sigma2, biased)?;
    let unbiased = EstimatorSummary::from_estimates("variance_n_minus_1", sigma2, unbiased)?;

    let verdict = if (unbiased.mean - sigma2).abs() < 4.0 * unbiased.std_error {
        Verdict::Unbiased
    } else {
        Verdict::BiasDetected
    };
    Ok(StudyReport {
        kind: StudyKind::Unbiasedness,
        config: cfg.clone(),
        mean_ratio: biased.mean / unbiased.mean,
        estimators: vec![biased, unbiased],
        efficiency_ratio: None,
        verdict,
    })
}

/// Compares the sampling variability of the SD and the mean absolute deviation.
pub fn run_scale_efficiency_study(cfg: &StudyConfig) -> Result<StudyReport> {
    cfg.validate(10)?;
    let pairs = replicate(cfg, |s| Ok((kernel::std_dev(s, DivisorMode::Sample)?, kernel::mean_abs_dev(s)?)))?;
    let (sds, mads): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let rescaled: Vec<f64> = mads.iter().map(|m| m * MAD_TO_SD).collect();

    let sd_target = cfg.population_variance().sqrt();
    let mad_target = cfg.population_mean_abs_dev();
    let sd = EstimatorSummary::from_estimates("sd", sd_target, sds)?;
    let mad = EstimatorSummary::from_estimates("mad", mad_target, mads)?;
    let mad_scaled = EstimatorSummary::from_estimates("mad_rescaled", mad_target * MAD_TO_SD, rescaled)?;

    let verdict = if sd.cv < mad_scaled.cv { Verdict::SdWins } else { Verdict::MadWins };
    Ok(StudyReport {
        kind: StudyKind::ScaleEfficiency,
        config: cfg.clone(),
        mean_ratio: mad.mean / sd.mean,
        efficiency_ratio: Some(mad_scaled.cv / sd.cv),
        estimators: vec![sd, mad, mad_scaled],
        verdict,
    })
}

pub fn run_study(kind: StudyKind, cfg: &StudyConfig) -> Result<StudyReport> {
    match kind {
        StudyKind::Unbiasedness => run_unbiasedness_study(cfg),
        StudyKind::ScaleEfficiency => run_scale_efficiency_study(cfg),
    }
}
