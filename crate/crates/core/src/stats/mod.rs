//! Descriptive statistics, rank correlation, one-way ANOVA and friends.

mod anova;
mod correlation;
mod descriptive;
mod histogram;
mod reliability;
pub mod special;

pub use anova::{one_way_anova, AnovaResult, Decision};
pub use correlation::{average_ranks, correlation_matrix, spearman, CorrelationMatrix};
pub use descriptive::{describe, describe_with, mean, percentile_inc, sample_variance, DescriptiveStats};
pub use histogram::{histogram, HistogramBin};
pub use reliability::cronbach_alpha;
pub use special::f_sf;
