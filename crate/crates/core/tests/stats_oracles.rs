mod common;

use approx::assert_abs_diff_eq;
use ergofit::stats::{cronbach_alpha, histogram, one_way_anova, percentile_inc, spearman, Decision};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

#[test]
fn histogram_matches_brute_force_binning() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let normal = Normal::new(444.0, 13.0).unwrap();
    let xs: Vec<f64> = (0..1000).map(|_| normal.sample(&mut rng)).collect();
    let bins = histogram(&xs, 20).unwrap();
    assert_eq!(bins.len(), 20);
    assert_eq!(bins.iter().map(|b| b.count).sum::<usize>(), 1000);
    let last = bins.len() - 1;
    for (i, b) in bins.iter().enumerate() {
        // Half-open bins, the last one closed on the right.
        let n = xs
            .iter()
            .filter(|&&x| x >= b.lower && (x < b.upper || (i == last && x <= b.upper)))
            .count();
        assert_eq!(b.count, n, "bin {i}");
    }
}

/// Alpha from the item covariance matrix: k/(k-1) * (1 - tr(C) / sum(C)).
fn alpha_from_covariance(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    let k = rows[0].len();
    let means: Vec<f64> = (0..k).map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / n as f64).collect();
    let mut trace = 0.0;
    let mut total = 0.0;
    for a in 0..k {
        for b in 0..k {
            let c = rows.iter().map(|r| (r[a] - means[a]) * (r[b] - means[b])).sum::<f64>() / (n - 1) as f64;
            total += c;
            if a == b {
                trace += c;
            }
        }
    }
    k as f64 / (k - 1) as f64 * (1.0 - trace / total)
}

#[test]
fn cronbach_matches_covariance_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let noise = Normal::new(0.0, 0.8).unwrap();
    let rows: Vec<Vec<f64>> = (0..120)
        .map(|_| {
            let trait_level: f64 = noise.sample(&mut rng) * 2.0;
            (0..6).map(|_| trait_level + noise.sample(&mut rng)).collect()
        })
        .collect();
    let got = cronbach_alpha(&rows).unwrap();
    assert_abs_diff_eq!(got, alpha_from_covariance(&rows), epsilon = 1e-12);
    assert!(got > 0.7);
}

#[test]
fn anova_matches_textbook_decomposition() {
    let groups = [vec![12.0, 15.0, 11.0, 14.0], vec![18.0, 20.0, 17.0], vec![9.0, 10.0, 12.0, 8.0, 11.0]];
    let all: Vec<f64> = groups.iter().flatten().copied().collect();
    let grand = all.iter().sum::<f64>() / all.len() as f64;
    let ssb: f64 = groups
        .iter()
        .map(|g| {
            let m = g.iter().sum::<f64>() / g.len() as f64;
            g.len() as f64 * (m - grand).powi(2)
        })
        .sum();
    let ssw: f64 = groups
        .iter()
        .map(|g| {
            let m = g.iter().sum::<f64>() / g.len() as f64;
            g.iter().map(|x| (x - m).powi(2)).sum::<f64>()
        })
        .sum();
    let f = (ssb / 2.0) / (ssw / 9.0);
    let r = one_way_anova(&groups, 0.05).unwrap();
    assert_abs_diff_eq!(r.ss_between, ssb, epsilon = 1e-9);
    assert_abs_diff_eq!(r.ss_within, ssw, epsilon = 1e-9);
    assert_abs_diff_eq!(r.f_value, f, epsilon = 1e-9);
    assert_abs_diff_eq!(r.p_value, common::f_tail_quadrature(f, 2.0, 9.0), epsilon = 1e-9);
    assert_eq!(r.decision, Decision::Reject);
}

proptest! {
    #[test]
    fn percentile_matches_sorted_interpolation(
        mut xs in prop::collection::vec(-1e3f64..1e3, 2..60),
        p in 0.0f64..=1.0,
    ) {
        let got = percentile_inc(&xs, p).unwrap();
        xs.sort_by(f64::total_cmp);
        let h = p * (xs.len() - 1) as f64;
        let lo = h.floor() as usize;
        let hi = h.ceil() as usize;
        let want = xs[lo] + (h - lo as f64) * (xs[hi] - xs[lo]);
        prop_assert!((got - want).abs() <= 1e-9 * (1.0 + want.abs()));
    }

    #[test]
    fn spearman_of_reversed_order_is_minus_one(xs in prop::collection::btree_set(-500i32..500, 3..40)) {
        let x: Vec<f64> = xs.iter().map(|&v| v as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| -v * 3.0 + 1.0).collect();
        prop_assert!((spearman(&x, &y).unwrap() + 1.0).abs() < 1e-12);
    }
}
