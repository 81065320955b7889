use serde::{Deserialize, Serialize};

use crate::error::StatsError;
use crate::model::{Measure, PopulationDataset};

/// Square matrix of pairwise Spearman coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix {
    pub labels: Vec<Measure>,
    pub values: Vec<Vec<f64>>,
}

impl CorrelationMatrix {
    pub fn get(&self, a: Measure, b: Measure) -> Option<f64> {
        let i = self.labels.iter().position(|&m| m == a)?;
        let j = self.labels.iter().position(|&m| m == b)?;
        Some(self.values[i][j])
    }
}

/// 1-based ranks; tied values share the average of the ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let dx = a - mx;
        let dy = b - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

/// Spearman rank correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::domain(format!(
            "length mismatch ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    if x.len() < 3 {
        return Err(StatsError::domain(format!(
            "spearman needs at least 3 pairs, got {}",
            x.len()
        )));
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(StatsError::domain("input contains non-finite values"));
    }
    pearson(&average_ranks(x), &average_ranks(y))
        .ok_or_else(|| StatsError::UndefinedCorrelation("zero rank variance".into()))
}

/// Pairwise Spearman matrix over all records (both genders combined).
pub fn correlation_matrix(
    d: &PopulationDataset,
    measures: &[Measure],
) -> Result<CorrelationMatrix, StatsError> {
    if d.len() < 3 {
        return Err(StatsError::domain(format!(
            "correlation needs at least 3 records, got {}",
            d.len()
        )));
    }
    let columns: Vec<Vec<f64>> = measures.iter().map(|&m| d.values(m)).collect();
    let k = measures.len();
    let mut values = vec![vec![0.0; k]; k];
    for i in 0..k {
        values[i][i] = 1.0;
        for j in (i + 1)..k {
            let r = spearman(&columns[i], &columns[j]).map_err(|e| match e {
                StatsError::UndefinedCorrelation(msg) => StatsError::UndefinedCorrelation(format!(
                    "{} vs {}: {msg}",
                    measures[i], measures[j]
                )),
                StatsError::Domain(msg) => {
                    StatsError::Domain(format!("{} vs {}: {msg}", measures[i], measures[j]))
                }
                other => other,
            })?;
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationMatrix {
        labels: measures.to_vec(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn spearman_examples() {
        assert_abs_diff_eq!(spearman(&[1.0, 2.0, 3.0], &[10.0, 20.0, 30.0]).unwrap(), 1.0);
        assert_abs_diff_eq!(spearman(&[1.0, 2.0, 3.0], &[30.0, 20.0, 10.0]).unwrap(), -1.0);
        assert_abs_diff_eq!(
            spearman(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap(),
            0.8,
            epsilon = 1e-12
        );
    }

    #[test]
    fn spearman_errors() {
        assert!(matches!(spearman(&[1.0, 2.0], &[1.0, 2.0]), Err(StatsError::Domain(_))));
        assert!(matches!(
            spearman(&[1.0, 2.0, 3.0], &[1.0, 2.0]),
            Err(StatsError::Domain(_))
        ));
        assert!(matches!(
            spearman(&[4.0, 4.0, 4.0], &[1.0, 2.0, 3.0]),
            Err(StatsError::UndefinedCorrelation(_))
        ));
    }

    #[test]
    fn ties_get_average_ranks() {
        assert_eq!(average_ranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
        // Tied ranks oracle: Pearson on hand-computed ranks.
        // x ranks [1, 2.5, 2.5, 4], y ranks [1, 2, 3, 4]
        let r = spearman(&[1.0, 2.0, 2.0, 5.0], &[1.0, 2.0, 3.0, 4.0]).unwrap();
        let expected = 4.5 / (4.5f64 * 5.0).sqrt();
        assert_abs_diff_eq!(r, expected, epsilon = 1e-12);
    }

    proptest! {
        #[test]
        fn symmetric_and_rank_invariant(
            pairs in prop::collection::vec((-1000i32..1000, -1000i32..1000), 3..40)
        ) {
            // tenths of a unit, so the transform below cannot collapse distinct values
            let x: Vec<f64> = pairs.iter().map(|p| p.0 as f64 / 10.0).collect();
            let y: Vec<f64> = pairs.iter().map(|p| p.1 as f64 / 10.0).collect();
            if let Ok(r) = spearman(&x, &y) {
                prop_assert!((-1.0..=1.0).contains(&r));
                prop_assert_eq!(r, spearman(&y, &x).unwrap());
                // strictly increasing transform leaves ranks unchanged
                let tx: Vec<f64> = x.iter().map(|v| (v / 50.0).exp() * 3.0 + 7.0).collect();
                let r2 = spearman(&tx, &y).unwrap();
                prop_assert!((r - r2).abs() < 1e-12);
            }
        }
    }
}
