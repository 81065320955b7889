use serde::{Deserialize, Serialize};

use crate::error::StatsError;

/// Summary of one measure over one group, in mm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DescriptiveStats {
    pub n: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator).
    pub sd: f64,
    pub p5: f64,
    pub p50: f64,
    pub p95: f64,
}

fn check_finite(values: &[f64]) -> Result<(), StatsError> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(StatsError::domain("input contains non-finite values"));
    }
    Ok(())
}

pub(crate) fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

/// Inclusive linear-interpolation percentile on an already sorted slice.
pub(crate) fn percentile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let h = p * (n - 1) as f64;
    let lo = h.floor() as usize;
    if lo + 1 >= n {
        return sorted[n - 1];
    }
    let frac = h - lo as f64;
    sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
}

/// Spreadsheet-style inclusive percentile: rank `1 + p(n-1)` on the sorted
/// values with linear interpolation between neighbours.
pub fn percentile_inc(values: &[f64], p: f64) -> Result<f64, StatsError> {
    if values.is_empty() {
        return Err(StatsError::domain("percentile of an empty list"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(StatsError::domain(format!("percentile {p} outside [0, 1]")));
    }
    check_finite(values)?;
    Ok(percentile_sorted(&sorted(values), p))
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample variance (n - 1 denominator), two-pass.
pub fn sample_variance(values: &[f64]) -> f64 {
    let m = mean(values);
    values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (values.len() - 1) as f64
}

pub fn describe(values: &[f64]) -> Result<DescriptiveStats, StatsError> {
    describe_with(values, [0.05, 0.50, 0.95])
}

/// `describe` with a caller-chosen percentile triple.
pub fn describe_with(values: &[f64], percentiles: [f64; 3]) -> Result<DescriptiveStats, StatsError> {
    if values.len() < 2 {
        return Err(StatsError::domain(format!(
            "descriptive statistics need at least 2 values, got {}",
            values.len()
        )));
    }
    check_finite(values)?;
    let s = sorted(values);
    let [a, b, c] = percentiles;
    Ok(DescriptiveStats {
        n: s.len(),
        min: s[0],
        max: s[s.len() - 1],
        mean: mean(&s),
        sd: sample_variance(&s).sqrt(),
        p5: percentile_sorted(&s, a),
        p50: percentile_sorted(&s, b),
        p95: percentile_sorted(&s, c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const FIVE: [f64; 5] = [10.0, 20.0, 30.0, 40.0, 50.0];

    #[test]
    fn percentile_examples() {
        assert_eq!(percentile_inc(&FIVE, 0.5).unwrap(), 30.0);
        assert_eq!(percentile_inc(&FIVE, 1.0).unwrap(), 50.0);
        assert_abs_diff_eq!(percentile_inc(&FIVE, 0.05).unwrap(), 12.0, epsilon = 1e-12);
        assert_eq!(percentile_inc(&[7.0], 0.3).unwrap(), 7.0);
    }

    #[test]
    fn percentile_errors() {
        assert!(percentile_inc(&[], 0.5).is_err());
        assert!(percentile_inc(&FIVE, 1.2).is_err());
        assert!(percentile_inc(&FIVE, -0.01).is_err());
    }

    #[test]
    fn describe_examples() {
        let s = describe(&[5.0, 5.0, 5.0]).unwrap();
        assert_eq!((s.min, s.max, s.mean, s.sd), (5.0, 5.0, 5.0, 0.0));
        assert_eq!((s.p5, s.p50, s.p95), (5.0, 5.0, 5.0));
        let s = describe(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.mean, 2.0);
        assert_eq!(s.sd, 1.0);
        assert!(describe(&[1.0]).is_err());
    }

    proptest! {
        #[test]
        fn percentile_bounds_and_monotone(
            v in prop::collection::vec(-1e4f64..1e4, 1..60),
            p in 0.0f64..=1.0,
            q in 0.0f64..=1.0,
        ) {
            let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            prop_assert_eq!(percentile_inc(&v, 0.0).unwrap(), lo);
            prop_assert_eq!(percentile_inc(&v, 1.0).unwrap(), hi);
            let a = percentile_inc(&v, p.min(q)).unwrap();
            let b = percentile_inc(&v, p.max(q)).unwrap();
            prop_assert!(a <= b);
            prop_assert!(lo <= a && b <= hi);
        }

        #[test]
        fn describe_is_order_independent(mut v in prop::collection::vec(0.0f64..1000.0, 2..40)) {
            let a = describe(&v).unwrap();
            v.reverse();
            v.rotate_left(1);
            let b = describe(&v).unwrap();
            prop_assert_eq!(a.min, b.min);
            prop_assert_eq!(a.p50, b.p50);
            prop_assert_eq!(a.mean, b.mean);
            prop_assert!(a.min <= a.p5 && a.p5 <= a.p50 && a.p50 <= a.p95 && a.p95 <= a.max);
        }
    }
}
