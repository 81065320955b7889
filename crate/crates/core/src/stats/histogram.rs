use serde::{Deserialize, Serialize};

use crate::error::StatsError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistogramBin {
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
}

/// Equal-width bins over `[min, max]`; bins are half-open except the last,
/// which also takes the maximum. A zero-width range yields one bin.
pub fn histogram(values: &[f64], bin_count: usize) -> Result<Vec<HistogramBin>, StatsError> {
    if values.is_empty() {
        return Err(StatsError::domain("histogram of an empty list"));
    }
    if bin_count == 0 {
        return Err(StatsError::domain("bin_count must be >= 1"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(StatsError::domain("input contains non-finite values"));
    }
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == min {
        return Ok(vec![HistogramBin {
            lower: min,
            upper: max,
            count: values.len(),
        }]);
    }
    let width = (max - min) / bin_count as f64;
    let mut edges: Vec<f64> = (0..=bin_count).map(|i| min + width * i as f64).collect();
    edges[bin_count] = max;

    let mut counts = vec![0usize; bin_count];
    for &v in values {
        // Estimate from the width, then settle against the stored edges so the
        // assignment agrees exactly with the reported bin boundaries.
        let mut i = (((v - min) / width).floor() as usize).min(bin_count - 1);
        while i > 0 && v < edges[i] {
            i -= 1;
        }
        while i + 1 < bin_count && v >= edges[i + 1] {
            i += 1;
        }
        counts[i] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| HistogramBin {
            lower: edges[i],
            upper: edges[i + 1],
            count,
        })
        .collect())
}
