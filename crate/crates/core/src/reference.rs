//! Published reference furniture and the per-gender summary of the measured
//! student population (mm).

use crate::model::{DimensionValue, FurnitureSpec, Gender, Measure};

use DimensionValue::{Adjustable, Fixed};

fn build(name: &str, dims: [DimensionValue; 11]) -> FurnitureSpec {
    FurnitureSpec::new(name, dims).expect("reference spec is valid")
}

/// Existing lab set with a non-adjustable chair and table.
pub fn existing_type1() -> FurnitureSpec {
    build(
        "existing type-1 (non-adjustable chair and table)",
        [
            Fixed(457.2),
            Fixed(393.7),
            Fixed(406.4),
            Fixed(304.8),
            Fixed(355.6),
            Fixed(406.4),
            Fixed(241.3),
            Fixed(88.9),
            Fixed(546.1),
            Fixed(482.6),
            Fixed(749.3),
        ],
    )
}

/// Existing lab set with an adjustable chair and a fixed table.
pub fn existing_type2() -> FurnitureSpec {
    build(
        "existing type-2 (adjustable chair, non-adjustable table)",
        [
            Adjustable { lo: 431.8, hi: 533.4 },
            Fixed(457.2),
            Fixed(431.8),
            Fixed(304.8),
            Fixed(393.7),
            Fixed(406.4),
            Adjustable { lo: 228.6, hi: 330.2 },
            Adjustable { lo: 95.25, hi: 196.85 },
            Fixed(628.65),
            Fixed(457.2),
            Fixed(749.3),
        ],
    )
}

/// Proposed non-adjustable set. TL and TD are not redesigned and carry over
/// from the existing type-1 table.
pub fn proposed_type1() -> FurnitureSpec {
    build(
        "proposed type-1 (non-adjustable chair and table)",
        [
            Fixed(430.0),
            Fixed(425.0),
            Fixed(385.0),
            Fixed(350.0),
            Fixed(390.0),
            Fixed(465.0),
            Fixed(260.0),
            Fixed(200.0),
            Fixed(645.0),
            Fixed(482.6),
            Fixed(749.3),
        ],
    )
}

/// Proposed adjustable-chair set; TL and TD carry over from existing type-2.
pub fn proposed_type2() -> FurnitureSpec {
    build(
        "proposed type-2 (adjustable chair, non-adjustable table)",
        [
            Adjustable { lo: 400.0, hi: 450.0 },
            Fixed(425.0),
            Fixed(385.0),
            Fixed(350.0),
            Fixed(390.0),
            Fixed(465.0),
            Adjustable { lo: 235.0, hi: 310.0 },
            Adjustable { lo: 95.25, hi: 200.0 },
            Fixed(645.0),
            Fixed(457.2),
            Fixed(749.3),
        ],
    )
}

/// Published summary row for one measure and gender.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryRow {
    pub measure: Measure,
    pub gender: Gender,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub sd: f64,
    pub p5: f64,
    pub p50: f64,
    pub p95: f64,
}

const fn row(
    measure: Measure,
    gender: Gender,
    v: [f64; 7],
) -> SummaryRow {
    SummaryRow {
        measure,
        gender,
        min: v[0],
        max: v[1],
        mean: v[2],
        sd: v[3],
        p5: v[4],
        p50: v[5],
        p95: v[6],
    }
}

use Gender::{Female, Male};

/// Descriptive statistics reported for the surveyed students
/// (min, max, mean, sd, p5, p50, p95).
pub const POPULATION_SUMMARY: [SummaryRow; 22] = [
    row(Measure::PH, Male, [414.0, 489.0, 444.37, 13.37, 422.65, 444.96, 466.49]),
    row(Measure::PH, Female, [373.0, 447.0, 415.1, 13.5, 395.2, 414.6, 438.4]),
    row(Measure::SEH, Male, [188.0, 308.0, 234.7, 16.73, 205.99, 235.05, 261.23]),
    row(Measure::SEH, Female, [191.0, 282.0, 231.3, 16.7, 200.6, 230.3, 257.6]),
    row(Measure::BPL, Male, [402.0, 498.0, 454.03, 18.17, 422.91, 454.1, 483.72]),
    row(Measure::BPL, Female, [394.0, 478.0, 447.2, 17.3, 412.8, 448.2, 471.0]),
    row(Measure::AL, Male, [331.0, 394.0, 364.1, 10.77, 346.35, 363.86, 382.29]),
    row(Measure::AL, Female, [322.0, 366.0, 342.4, 9.6, 327.0, 342.1, 355.9]),
    row(Measure::TT, Male, [131.0, 178.0, 156.14, 7.76, 143.46, 155.99, 168.68]),
    row(Measure::TT, Female, [126.0, 175.0, 145.1, 9.7, 129.3, 144.6, 161.4]),
    row(Measure::SSH, Male, [470.0, 556.0, 511.78, 14.9, 488.6, 512.03, 539.42]),
    row(Measure::SSH, Female, [447.0, 522.0, 488.0, 13.3, 467.0, 488.9, 509.2]),
    row(Measure::SCH, Male, [484.0, 540.0, 511.7, 10.22, 495.19, 511.42, 528.01]),
    row(Measure::SCH, Female, [469.0, 524.0, 493.6, 10.8, 475.1, 493.8, 510.1]),
    row(Measure::EFL, Male, [426.0, 471.0, 450.46, 7.67, 437.08, 450.21, 462.3]),
    row(Measure::EFL, Female, [385.0, 428.0, 406.9, 9.5, 391.7, 407.5, 421.4]),
    row(Measure::SEB, Male, [396.0, 492.0, 447.47, 15.36, 424.46, 447.56, 470.46]),
    row(Measure::SEB, Female, [390.0, 464.0, 422.9, 17.2, 396.1, 421.2, 452.9]),
    row(Measure::HB, Male, [328.0, 382.0, 350.53, 9.4, 335.31, 350.23, 365.34]),
    row(Measure::HB, Female, [344.0, 390.0, 366.2, 8.5, 353.3, 367.2, 379.4]),
    row(Measure::BKL, Male, [496.0, 548.0, 521.47, 9.54, 505.0, 522.23, 536.1]),
    row(Measure::BKL, Female, [475.0, 546.0, 509.0, 13.7, 489.2, 509.0, 529.9]),
];

pub fn summary(measure: Measure, gender: Gender) -> &'static SummaryRow {
    POPULATION_SUMMARY
        .iter()
        .find(|r| r.measure == measure && r.gender == gender)
        .expect("every measure/gender pair is listed")
}
