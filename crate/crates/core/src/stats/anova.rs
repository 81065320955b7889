use std::fmt;

use serde::{Deserialize, Serialize};

use super::special::f_sf;
use crate::error::StatsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decision {
    /// Null hypothesis retained.
    Accept,
    Reject,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Accept => "Accept",
            Decision::Reject => "Reject",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnovaResult {
    pub f_value: f64,
    pub df_between: u32,
    pub df_within: u32,
    pub p_value: f64,
    pub alpha: f64,
    pub decision: Decision,
    pub ss_between: f64,
    pub ss_within: f64,
}

/// One-way ANOVA across `groups` with decision at significance level `alpha`.
///
/// Groups may hold a single observation as long as the pooled within-group
/// degrees of freedom are at least one.
pub fn one_way_anova<G: AsRef<[f64]>>(groups: &[G], alpha: f64) -> Result<AnovaResult, StatsError> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(StatsError::domain(format!("alpha {alpha} outside (0, 1)")));
    }
    let k = groups.len();
    if k < 2 {
        return Err(StatsError::domain(format!("ANOVA needs at least 2 groups, got {k}")));
    }
    let mut n_total = 0usize;
    let mut means = Vec::with_capacity(k);
    for (i, g) in groups.iter().enumerate() {
        let g = g.as_ref();
        if g.is_empty() {
            return Err(StatsError::domain(format!("group {} is empty", i + 1)));
        }
        if g.iter().any(|v| !v.is_finite()) {
            return Err(StatsError::domain(format!("group {} has non-finite values", i + 1)));
        }
        n_total += g.len();
        means.push(g.iter().sum::<f64>() / g.len() as f64);
    }
    if n_total <= k {
        return Err(StatsError::domain(format!(
            "insufficient degrees of freedom: {n_total} observations in {k} groups"
        )));
    }
    let grand_mean = groups
        .iter()
        .zip(&means)
        .map(|(g, m)| g.as_ref().len() as f64 * m)
        .sum::<f64>()
        / n_total as f64;

    let ss_between = if means.iter().all(|&m| m == means[0]) {
        0.0
    } else {
        groups
            .iter()
            .zip(&means)
            .map(|(g, m)| g.as_ref().len() as f64 * (m - grand_mean).powi(2))
            .sum::<f64>()
    };
    let ss_within = groups
        .iter()
        .zip(&means)
        .map(|(g, m)| g.as_ref().iter().map(|x| (x - m).powi(2)).sum::<f64>())
        .sum::<f64>();

    let df_between = (k - 1) as u32;
    let df_within = (n_total - k) as u32;

    let f_value = if ss_between == 0.0 {
        0.0
    } else if ss_within == 0.0 {
        return Err(StatsError::DegenerateVariance);
    } else {
        (ss_between / df_between as f64) / (ss_within / df_within as f64)
    };
    let p_value = f_sf(f_value, df_between as f64, df_within as f64)?;
    let decision = if p_value <= alpha {
        Decision::Reject
    } else {
        Decision::Accept
    };
    Ok(AnovaResult {
        f_value,
        df_between,
        df_within,
        p_value,
        alpha,
        decision,
        ss_between,
        ss_within,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn hand_computed_two_groups() {
        let r = one_way_anova(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]], 0.05).unwrap();
        assert_abs_diff_eq!(r.ss_between, 13.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.ss_within, 4.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.f_value, 13.5, epsilon = 1e-12);
        assert_eq!((r.df_between, r.df_within), (1, 4));
        // P(F(1,4) > 13.5) = 0.0213116411, cross-checked by quadrature in tests/f_distribution.rs
        assert_abs_diff_eq!(r.p_value, 0.021_311_641, epsilon = 1e-6);
        assert_eq!(r.decision, Decision::Reject);
    }

    #[test]
    fn identical_groups_accept() {
        let r = one_way_anova(&[vec![3.0, 1.0, 7.0], vec![3.0, 1.0, 7.0]], 0.05).unwrap();
        assert_eq!(r.f_value, 0.0);
        assert_eq!(r.p_value, 1.0);
        assert_eq!(r.decision, Decision::Accept);
        let r = one_way_anova(&[vec![5.0, 5.0], vec![5.0]], 0.05).unwrap();
        assert_eq!(r.f_value, 0.0);
    }

    #[test]
    fn observed_vs_expected_triples() {
        let r = one_way_anova(
            &[[422.65, 444.96, 466.49], [443.79, 457.2, 470.61]],
            0.05,
        )
        .unwrap();
        assert_abs_diff_eq!(r.f_value, 0.71, epsilon = 0.02);
        assert_abs_diff_eq!(r.p_value, 0.447, epsilon = 0.005);
        assert_eq!(r.decision, Decision::Accept);
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            one_way_anova(&[vec![1.0, 1.0], vec![2.0, 2.0]], 0.05),
            Err(StatsError::DegenerateVariance)
        ));
        assert!(matches!(
            one_way_anova(&[vec![1.0], vec![2.0]], 0.05),
            Err(StatsError::Domain(_))
        ));
        assert!(one_way_anova(&[vec![1.0, 2.0]], 0.05).is_err());
        assert!(one_way_anova(&[vec![1.0, 2.0], vec![]], 0.05).is_err());
    }

    proptest! {
        #[test]
        fn f_invariant_under_affine_maps(
            a in prop::collection::vec(0.0f64..100.0, 2..8),
            b in prop::collection::vec(0.0f64..100.0, 2..8),
            shift in -500.0f64..500.0,
            scale in 0.1f64..20.0,
        ) {
            let base = one_way_anova(&[a.clone(), b.clone()], 0.05).unwrap();
            let shifted: Vec<Vec<f64>> = [&a, &b].iter().map(|g| g.iter().map(|x| x + shift).collect()).collect();
            let scaled: Vec<Vec<f64>> = [&a, &b].iter().map(|g| g.iter().map(|x| x * scale).collect()).collect();
            let s = one_way_anova(&shifted, 0.05).unwrap();
            let m = one_way_anova(&scaled, 0.05).unwrap();
            let tol = 1e-6 * base.f_value.max(1.0);
            prop_assert!((s.f_value - base.f_value).abs() <= tol);
            prop_assert!((m.f_value - base.f_value).abs() <= tol);
            prop_assert!((0.0..=1.0).contains(&base.p_value));
        }
    }
}
