use super::descriptive::sample_variance;
use crate::error::StatsError;

/// Cronbach's alpha for a respondents × items response matrix.
pub fn cronbach_alpha<R: AsRef<[f64]>>(rows: &[R]) -> Result<f64, StatsError> {
    if rows.len() < 2 {
        return Err(StatsError::domain("cronbach alpha needs at least 2 respondents"));
    }
    let k = rows[0].as_ref().len();
    if k < 2 {
        return Err(StatsError::domain("cronbach alpha needs at least 2 items"));
    }
    if let Some(i) = rows.iter().position(|r| r.as_ref().len() != k) {
        return Err(StatsError::domain(format!(
            "respondent {} has {} items, expected {k}",
            i + 1,
            rows[i].as_ref().len()
        )));
    }
    if rows.iter().flat_map(|r| r.as_ref()).any(|v| !v.is_finite()) {
        return Err(StatsError::domain("responses contain non-finite values"));
    }
    let item_var_sum: f64 = (0..k)
        .map(|j| {
            let col: Vec<f64> = rows.iter().map(|r| r.as_ref()[j]).collect();
            sample_variance(&col)
        })
        .sum();
    let totals: Vec<f64> = rows.iter().map(|r| r.as_ref().iter().sum()).collect();
    let total_var = sample_variance(&totals);
    if total_var <= 0.0 {
        return Err(StatsError::domain("total score variance is zero"));
    }
    let k = k as f64;
    Ok(k / (k - 1.0) * (1.0 - item_var_sum / total_var))
}
