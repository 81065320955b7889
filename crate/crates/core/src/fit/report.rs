use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::criteria::{classify_value, effective_seat_height, interval_with_seat, Criterion, FitClass};
use crate::error::FitError;
use crate::model::{AnthropometricRecord, Dimension, FitConfig, FurnitureSpec, Gender, PopulationDataset};

/// Per-class counts for one criterion over one group of records.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTally {
    pub n: usize,
    pub matched: usize,
    pub low: usize,
    pub high: usize,
    /// One-sided mismatches.
    pub mismatch: usize,
}

impl ClassTally {
    pub fn add(&mut self, class: FitClass) {
        self.n += 1;
        match class {
            FitClass::Match => self.matched += 1,
            FitClass::LowMismatch => self.low += 1,
            FitClass::HighMismatch => self.high += 1,
            FitClass::Mismatch => self.mismatch += 1,
        }
    }

    pub fn merge(&mut self, other: &ClassTally) {
        self.n += other.n;
        self.matched += other.matched;
        self.low += other.low;
        self.high += other.high;
        self.mismatch += other.mismatch;
    }

    pub fn total_mismatch(&self) -> usize {
        self.n - self.matched
    }

    /// Total mismatch as a percentage of `n`; zero for an empty tally.
    pub fn total_mismatch_pct(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            100.0 * self.total_mismatch() as f64 / self.n as f64
        }
    }
}

/// Classifies every record against one criterion and counts the classes.
pub fn tally<'a>(
    records: impl IntoIterator<Item = &'a AnthropometricRecord>,
    criterion: Criterion,
    spec: &FurnitureSpec,
    cfg: &FitConfig,
) -> Result<ClassTally, FitError> {
    let seat = Some(effective_seat_height(spec));
    let value = spec.get(criterion.dimension());
    let sided = criterion.sided();
    let mut t = ClassTally::default();
    for r in records {
        let iv = interval_with_seat(criterion, r, seat, cfg)?;
        t.add(classify_value(sided, &iv, value));
    }
    Ok(t)
}

/// One report row: a criterion evaluated over one gender.
///
/// Percentages are `None` when the gender has no records; `low_pct` and
/// `high_pct` are `None` for one-sided criteria.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MismatchRow {
    pub criterion: Criterion,
    pub gender: Gender,
    pub n: usize,
    pub match_pct: Option<f64>,
    pub low_pct: Option<f64>,
    pub high_pct: Option<f64>,
    pub total_pct: Option<f64>,
}

impl MismatchRow {
    pub fn from_tally(criterion: Criterion, gender: Gender, t: &ClassTally) -> Self {
        if t.n == 0 {
            return MismatchRow {
                criterion,
                gender,
                n: 0,
                match_pct: None,
                low_pct: None,
                high_pct: None,
                total_pct: None,
            };
        }
        let pct = |k: usize| 100.0 * k as f64 / t.n as f64;
        let two = criterion.is_two_sided();
        MismatchRow {
            criterion,
            gender,
            n: t.n,
            match_pct: Some(pct(t.matched)),
            low_pct: two.then(|| pct(t.low)),
            high_pct: two.then(|| pct(t.high)),
            total_pct: Some(pct(t.total_mismatch())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MismatchReport {
    pub spec_name: String,
    pub n_male: usize,
    pub n_female: usize,
    pub rows: Vec<MismatchRow>,
    #[serde(default)]
    pub notes: Vec<String>,
}

pub const REPORT_CSV_HEADER: &str = "criterion,gender,n,match_pct,low_pct,high_pct,total_pct";

impl MismatchReport {
    pub fn row(&self, c: Criterion, g: Gender) -> Option<&MismatchRow> {
        self.rows.iter().find(|r| r.criterion == c && r.gender == g)
    }

    pub fn criteria(&self) -> BTreeSet<Criterion> {
        self.rows.iter().map(|r| r.criterion).collect()
    }

    pub fn n(&self, g: Gender) -> usize {
        match g {
            Gender::Male => self.n_male,
            Gender::Female => self.n_female,
        }
    }

    /// Machine-readable table at full precision; empty cells for
    /// not-applicable or empty-group values.
    pub fn to_csv(&self) -> String {
        let cell = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let mut out = String::new();
        out.push_str(REPORT_CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.criterion.id(),
                r.gender,
                r.n,
                cell(r.match_pct),
                cell(r.low_pct),
                cell(r.high_pct),
                cell(r.total_pct)
            );
        }
        out
    }
}

/// Mismatch percentages for every criterion and gender.
pub fn population_mismatch(
    d: &PopulationDataset,
    spec: &FurnitureSpec,
    cfg: &FitConfig,
) -> Result<MismatchReport, FitError> {
    population_mismatch_for(d, spec, cfg, &Criterion::ALL)
}

/// As [`population_mismatch`], restricted to the listed criteria.
pub fn population_mismatch_for(
    d: &PopulationDataset,
    spec: &FurnitureSpec,
    cfg: &FitConfig,
    criteria: &[Criterion],
) -> Result<MismatchReport, FitError> {
    cfg.validate()?;
    let mut rows = Vec::with_capacity(criteria.len() * 2);
    for &c in criteria {
        for g in Gender::ALL {
            let t = tally(d.records().iter().filter(|r| r.gender == g), c, spec, cfg)?;
            rows.push(MismatchRow::from_tally(c, g, &t));
        }
    }
    let mut notes = Vec::new();
    if let crate::model::DimensionValue::Adjustable { lo, .. } = spec.get(Dimension::SH) {
        if criteria.contains(&Criterion::UnderneathTableHeight) {
            notes.push(format!(
                "UTH evaluated at SH = {lo} (lowest setting of the adjustable seat)"
            ));
        }
    }
    for g in Gender::ALL {
        if d.count(g) == 0 {
            notes.push(format!("no {g} records (n=0); rows left empty"));
        }
    }
    Ok(MismatchReport {
        spec_name: spec.name.clone(),
        n_male: d.count(Gender::Male),
        n_female: d.count(Gender::Female),
        rows,
        notes,
    })
}

/// Signed change in total mismatch from `before` to `after`, in percentage points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaRow {
    pub criterion: Criterion,
    pub gender: Gender,
    pub before_pct: Option<f64>,
    pub after_pct: Option<f64>,
    pub delta_pct: Option<f64>,
}

pub fn compare_reports(before: &MismatchReport, after: &MismatchReport) -> Result<Vec<DeltaRow>, FitError> {
    if before.criteria() != after.criteria() {
        return Err(FitError::ReportMismatch(format!(
            "criteria differ: {:?} vs {:?}",
            before.criteria().iter().map(|c| c.id()).collect::<Vec<_>>(),
            after.criteria().iter().map(|c| c.id()).collect::<Vec<_>>()
        )));
    }
    let mut out = Vec::with_capacity(before.rows.len());
    for a in &before.rows {
        let b = after.row(a.criterion, a.gender).ok_or_else(|| {
            FitError::ReportMismatch(format!("{} / {} missing from second report", a.criterion, a.gender))
        })?;
        let delta = match (a.total_pct, b.total_pct) {
            (Some(x), Some(y)) => Some(y - x),
            _ => None,
        };
        out.push(DeltaRow {
            criterion: a.criterion,
            gender: a.gender,
            before_pct: a.total_pct,
            after_pct: b.total_pct,
            delta_pct: delta,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DimensionValue, Measure};
    use crate::reference;

    fn rec(id: &str, g: Gender, ph: f64) -> AnthropometricRecord {
        let mut r = AnthropometricRecord::new(
            id,
            g,
            [444.0, 235.0, 454.0, 521.0, 350.0, 512.0, 447.0, 156.0, 364.0, 450.0, 511.0],
        );
        r.set(Measure::PH, ph);
        r
    }

    #[test]
    fn one_match_one_low_is_fifty_fifty() {
        let d = PopulationDataset::new(
            vec![rec("a", Gender::Male, 480.0), rec("b", Gender::Male, 414.6)],
            "t",
        )
        .unwrap();
        // SH = 457.2 fits PH 480 ([441.7, 508.1]) but is above PH 414.6's upper bound.
        let rep = population_mismatch(&d, &reference::existing_type1(), &FitConfig::default()).unwrap();
        let row = rep.row(Criterion::SeatHeight, Gender::Male).unwrap();
        assert_eq!(row.match_pct, Some(50.0));
        assert_eq!(row.low_pct, Some(50.0));
        assert_eq!(row.high_pct, Some(0.0));
        assert_eq!(row.total_pct, Some(50.0));
    }

    #[test]
    fn fully_fitting_record_is_all_match() {
        // A spec tailored to the single record's admissible intervals.
        let r = rec("a", Gender::Male, 444.0);
        let d = PopulationDataset::new(vec![r.clone()], "t").unwrap();
        let spec = reference::existing_type1();
        let cfg = FitConfig::default();
        let mut tailored = spec.clone();
        for c in Criterion::ALL {
            let iv = super::super::admissible_interval(c, &r, &tailored, &cfg).unwrap();
            let v = if iv.lo.is_finite() && iv.hi.is_finite() {
                (iv.lo + iv.hi) / 2.0
            } else if iv.lo.is_finite() {
                iv.lo + 10.0
            } else {
                iv.hi - 10.0
            };
            tailored = tailored.with(c.dimension(), DimensionValue::Fixed(v)).unwrap();
        }
        let rep = population_mismatch(&d, &tailored, &cfg).unwrap();
        for row in rep.rows.iter().filter(|r| r.gender == Gender::Male) {
            assert_eq!(row.match_pct, Some(100.0), "{}", row.criterion);
        }
        // No female records: rows present with an explicit n = 0 marker.
        let f = rep.row(Criterion::SeatHeight, Gender::Female).unwrap();
        assert_eq!((f.n, f.match_pct), (0, None));
        assert!(rep.notes.iter().any(|n| n.contains("n=0")));
    }

    #[test]
    fn compare_identical_reports_is_zero() {
        let d = PopulationDataset::new(vec![rec("a", Gender::Female, 420.0)], "t").unwrap();
        let rep = population_mismatch(&d, &reference::existing_type2(), &FitConfig::default()).unwrap();
        let deltas = compare_reports(&rep, &rep).unwrap();
        assert_eq!(deltas.len(), 22);
        assert!(deltas
            .iter()
            .filter(|r| r.gender == Gender::Female)
            .all(|r| r.delta_pct == Some(0.0)));
    }

    #[test]
    fn compare_detects_full_improvement_and_mismatched_criteria() {
        let d = PopulationDataset::new(vec![rec("a", Gender::Male, 414.6)], "t").unwrap();
        let cfg = FitConfig::default();
        let before = population_mismatch(&d, &reference::existing_type1(), &cfg).unwrap();
        let fixed = reference::existing_type1()
            .with(Dimension::SH, DimensionValue::Fixed(420.0))
            .unwrap();
        let after = population_mismatch(&d, &fixed, &cfg).unwrap();
        let deltas = compare_reports(&before, &after).unwrap();
        let sh = deltas
            .iter()
            .find(|r| r.criterion == Criterion::SeatHeight && r.gender == Gender::Male)
            .unwrap();
        assert_eq!(sh.delta_pct, Some(-100.0));

        let partial = population_mismatch_for(&d, &fixed, &cfg, &[Criterion::SeatHeight]).unwrap();
        assert!(compare_reports(&before, &partial).is_err());
    }

    #[test]
    fn csv_layout() {
        let d = PopulationDataset::new(vec![rec("a", Gender::Male, 444.0)], "t").unwrap();
        let rep = population_mismatch(&d, &reference::existing_type1(), &FitConfig::default()).unwrap();
        let csv = rep.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(REPORT_CSV_HEADER));
        assert_eq!(lines.next(), Some("SH_PH,Male,1,100,0,0,0"));
        assert_eq!(lines.next(), Some("SH_PH,Female,0,,,,"));
        assert!(csv.contains("BW_HB,Male,1,100,,,0"));
        assert_eq!(csv.lines().count(), 23);
    }
}
