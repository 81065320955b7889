//! Anthropometric furniture-fit analysis: population data, descriptive and
//! inferential statistics, fit criteria with mismatch reports, and
//! dimension proposal/optimization.

// `!(x > 0.0)` style checks are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod design;
pub mod error;
pub mod fit;
pub mod io;
pub mod model;
pub mod reference;
pub mod stats;
pub mod synth;

pub use error::{DatasetError, DesignError, FitError, SpecError, StatsError};
pub use model::{
    required_sample_size, AnthropometricRecord, Dimension, DimensionValue, FitConfig, FurnitureSpec, Gender,
    Measure, PopulationDataset,
};
