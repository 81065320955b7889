//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use ergofit::fit::{Criterion, FitClass};
use ergofit::{AnthropometricRecord, Dimension, DimensionValue, FitConfig, FurnitureSpec, Gender, Measure};
use rand::Rng;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

// ---------------------------------------------------------------------------
// F distribution by quadrature

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let diff = left + right - whole;
    if depth == 0 || diff.abs() <= 15.0 * tol {
        return left + right + diff / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson over 64 equal panels; the panels guard against the
/// coarse first estimate agreeing with its refinement by accident.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a >= b {
        return 0.0;
    }
    const PANELS: usize = 64;
    let h = (b - a) / PANELS as f64;
    (0..PANELS)
        .map(|i| {
            let (x0, x1) = (a + i as f64 * h, if i + 1 == PANELS { b } else { a + (i + 1) as f64 * h });
            let (fa, fb, fm) = (f(x0), f(x1), f(0.5 * (x0 + x1)));
            let whole = simpson(x0, x1, fa, fm, fb);
            adaptive(f, x0, x1, fa, fm, fb, whole, tol / PANELS as f64, 40)
        })
        .sum()
}

/// Upper tail of F(d1, d2) by integrating the density after substituting
/// x = tan²θ, which leaves a bounded, smooth integrand on [0, π/2]:
/// sin^(d1-1)θ · cos^(d2-1)θ · (d2 cos²θ + d1 sin²θ)^(-(d1+d2)/2).
pub fn f_tail_quadrature(f: f64, d1: f64, d2: f64) -> f64 {
    let g = |t: f64| {
        let (s, c) = t.sin_cos();
        s.powf(d1 - 1.0) * c.powf(d2 - 1.0) * (d2 * c * c + d1 * s * s).powf(-(d1 + d2) / 2.0)
    };
    let start = f.sqrt().atan();
    let rough = integrate(&g, 0.0, FRAC_PI_2, 1e-6);
    let tol = 1e-13 * rough;
    integrate(&g, start, FRAC_PI_2, tol) / integrate(&g, 0.0, FRAC_PI_2, tol)
}

// ---------------------------------------------------------------------------
// Fit criteria written out directly

/// (lo, hi, lower bound strict) for a criterion, from the raw relations.
pub fn oracle_bounds(c: Criterion, r: &AnthropometricRecord, seat: f64, cfg: &FitConfig) -> (f64, f64, bool) {
    let v = |m: Measure| r.get(m);
    let rad = |deg: f64| deg.to_radians();
    let k = v(Measure::PH) + cfg.shoe_allowance;
    let inf = f64::INFINITY;
    match c {
        Criterion::SeatHeight => (k * rad(30.0).cos(), k * rad(5.0).cos(), false),
        Criterion::SeatWidth => (1.1 * v(Measure::HB), 1.3 * v(Measure::HB), false),
        Criterion::SeatDepth => (0.8 * v(Measure::BPL), 0.95 * v(Measure::BPL), false),
        Criterion::BackrestHeight => (0.6 * v(Measure::SSH), 0.8 * v(Measure::SSH), false),
        Criterion::BackrestWidth => (v(Measure::HB), inf, false),
        Criterion::BackrestUpperEdge => (-inf, v(Measure::SCH), false),
        Criterion::SeatToTableHeight => (v(Measure::SEH), v(Measure::SEH) + 50.0, false),
        Criterion::SeatToTableClearance => (v(Measure::TT) + cfg.clearance_margin, inf, true),
        Criterion::UnderneathTableHeight => (
            seat + v(Measure::TT) + 30.0,
            v(Measure::SEH) + k * rad(5.0).cos() + 0.1483 * v(Measure::AL) - cfg.table_thickness,
            false,
        ),
        Criterion::TableLength => (v(Measure::BKL), inf, false),
        Criterion::TableDepth => (
            0.5 * v(Measure::SEB) + 0.342 * v(Measure::AL) + cfg.clearance_margin,
            v(Measure::EFL),
            false,
        ),
    }
}

pub fn oracle_seat(spec: &FurnitureSpec) -> f64 {
    match spec.get(Dimension::SH) {
        DimensionValue::Fixed(v) => v,
        DimensionValue::Adjustable { lo, .. } => lo,
    }
}

/// A range [a, b] matches when its highest admissible point min(b, hi)
/// is still inside both the range and the lower bound.
pub fn oracle_classify(c: Criterion, r: &AnthropometricRecord, spec: &FurnitureSpec, cfg: &FitConfig) -> FitClass {
    let (lo, hi, strict) = oracle_bounds(c, r, oracle_seat(spec), cfg);
    let (a, b) = match spec.get(c.dimension()) {
        DimensionValue::Fixed(v) => (v, v),
        DimensionValue::Adjustable { lo, hi } => (lo, hi),
    };
    let top = b.min(hi);
    let matched = top >= a && if strict { top > lo } else { top >= lo };
    if matched {
        FitClass::Match
    } else if !(lo.is_finite() && hi.is_finite()) {
        FitClass::Mismatch
    } else if a > hi && b >= lo {
        FitClass::LowMismatch
    } else {
        FitClass::HighMismatch
    }
}

// ---------------------------------------------------------------------------
// Random inputs

/// Published per-gender range of each measure, widened by 10%.
pub fn random_record<R: Rng>(rng: &mut R, id: String) -> AnthropometricRecord {
    let gender = if rng.random_bool(0.5) { Gender::Male } else { Gender::Female };
    let mut m = [0.0; 11];
    for (slot, measure) in m.iter_mut().zip(Measure::ALL) {
        let s = ergofit::reference::summary(measure, gender);
        let pad = 0.1 * (s.max - s.min);
        *slot = ((rng.random_range(s.min - pad..=s.max + pad)) * 10.0).round() / 10.0;
    }
    AnthropometricRecord::new(id, gender, m)
}

fn reference_values() -> [f64; 11] {
    let base = ergofit::reference::existing_type1();
    Dimension::ALL.map(|d| base.get(d).lo())
}

/// A spec with each dimension fixed or adjustable, within ±40% of the
/// existing type-1 values; values are rounded to 0.5 mm so exact boundary
/// hits occur.
pub fn random_spec<R: Rng>(rng: &mut R) -> FurnitureSpec {
    let base = reference_values();
    let dims = base.map(|b| {
        let pick = |rng: &mut R| (rng.random_range(0.6 * b..1.4 * b) * 2.0).round() / 2.0;
        if rng.random_bool(0.3) {
            let lo = pick(rng);
            let span = (rng.random_range(5.0..0.3 * b) * 2.0).round() / 2.0;
            DimensionValue::Adjustable { lo, hi: lo + span }
        } else {
            DimensionValue::Fixed(pick(rng))
        }
    });
    FurnitureSpec::new("random", dims).expect("random spec is valid")
}

// ---------------------------------------------------------------------------
// Fixture files

#[derive(Debug, Clone)]
pub struct AnovaFixture {
    pub table: String,
    pub comparison: String,
    pub gender: String,
    pub observed: [f64; 3],
    pub expected: [f64; 3],
    pub f_value: f64,
    pub p_value: f64,
    pub decision: String,
}

pub fn anova_fixtures() -> Vec<AnovaFixture> {
    let text = std::fs::read_to_string(data_dir().join("anova_fixtures.csv")).expect("fixture file");
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            let n = |i: usize| c[i].parse::<f64>().expect("number");
            AnovaFixture {
                table: c[0].into(),
                comparison: c[1].into(),
                gender: c[2].into(),
                observed: [n(3), n(4), n(5)],
                expected: [n(6), n(7), n(8)],
                f_value: n(9),
                p_value: n(10),
                decision: c[11].into(),
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct MismatchFixture {
    pub spec: String,
    pub criterion: Criterion,
    pub gender: Gender,
    pub cells: [Option<f64>; 4],
}

pub fn mismatch_fixtures() -> Vec<MismatchFixture> {
    let text = std::fs::read_to_string(data_dir().join("reference_mismatch.csv")).expect("fixture file");
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            let cell = |i: usize| (!c[i].is_empty()).then(|| c[i].parse::<f64>().expect("number"));
            MismatchFixture {
                spec: c[0].into(),
                criterion: c[1].parse().expect("criterion id"),
                gender: c[2].parse().expect("gender"),
                cells: [cell(3), cell(4), cell(5), cell(6)],
            }
        })
        .collect()
}
