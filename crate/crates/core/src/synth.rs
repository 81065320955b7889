//! Seeded synthetic populations drawn from the published per-gender
//! summary (independent truncated normals per measure).
//!
//! Useful for demos and tests when the measured dataset is unavailable. The
//! marginals follow the summary; cross-measure correlation is not modelled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::model::{AnthropometricRecord, Gender, Measure, PopulationDataset};
use crate::reference::summary;

pub fn synthetic_population(seed: u64, n_male: usize, n_female: usize) -> PopulationDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(n_male + n_female);
    let plan = [(Gender::Male, n_male), (Gender::Female, n_female)];
    for (g, count) in plan {
        let dists: Vec<(Normal<f64>, f64, f64)> = Measure::ALL
            .iter()
            .map(|&m| {
                let s = summary(m, g);
                (Normal::new(s.mean, s.sd).expect("positive sd"), s.min, s.max)
            })
            .collect();
        for i in 0..count {
            let mut measures = [0.0; 11];
            for (slot, (dist, lo, hi)) in measures.iter_mut().zip(&dists) {
                let mut v = dist.sample(&mut rng);
                // Resample into the observed range; clamp after a few tries.
                for _ in 0..16 {
                    if (*lo..=*hi).contains(&v) {
                        break;
                    }
                    v = dist.sample(&mut rng);
                }
                *slot = (v.clamp(*lo, *hi) * 10.0).round() / 10.0;
            }
            let id = format!("{}{:03}", g.code(), i + 1);
            let year = (i % 4) as i32 + 1;
            let age = 18 + year + (i % 3) as i32;
            records.push(
                AnthropometricRecord::new(id, g, measures)
                    .with_age(age)
                    .with_study_year(year),
            );
        }
    }
    PopulationDataset::new(records, format!("synthetic (seed {seed})")).expect("synthetic records are valid")
}
