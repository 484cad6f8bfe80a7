//! Parametric statistics from one sum-of-squares kernel.
//!
//! Variance, one-way ANOVA, the pooled two-sample t-test, point-biserial
//! correlation and simple least-squares regression all obtain their sums of
//! squares from [`kernel`]. The identities that tie them together
//! (`SS_total = SS_between + SS_within`, `t² = F`, `r² = η² = R²` under 0/1
//! coding) hold by construction and are checked by the test suite.
//!
//! ```
//! use sumsq::{anova, Design, GroupedSample, Sample};
//!
//! let g = GroupedSample::new(vec![
//!     ("noisy", Sample::new(vec![11.0, 7.0]).unwrap()),
//!     ("quiet", Sample::new(vec![30.0, 20.0]).unwrap()),
//! ])
//! .unwrap();
//! let table = anova(&g, Design::Experimental).unwrap();
//! assert_eq!(table.partition.ss_between, 256.0);
//! assert_eq!(table.partition.ss_within, 58.0);
//! ```

pub mod dist;
pub mod error;
pub mod glm;
pub mod kernel;
pub mod lab;
pub mod partition;
pub mod shell;

pub use error::{Result, StatsError};
pub use glm::{
    dummy_encode, fit_simple_regression, point_biserial, t_test_independent, Association, RegressionFit,
    TTestResult,
};
pub use kernel::{DivisorMode, Sample, SsAccumulator, SummaryStats};
pub use lab::{StudyConfig, StudyKind, StudyReport, Verdict};
pub use partition::{anova, partition_ss, AnovaTable, Degeneracy, Design, GroupedSample, SsPartition};
