//! Domain types: anthropometric records, populations, furniture specifications
//! and the fit configuration shared by every analysis.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{FitError, SpecError, StatsError};

/// Upper plausibility ceiling for any body measurement, in mm.
pub const MEASURE_CEILING_MM: f64 = 3000.0;
pub const AGE_RANGE: (i32, i32) = (10, 80);
pub const STUDY_YEAR_RANGE: (i32, i32) = (1, 4);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gender {
    #[serde(alias = "M", alias = "male")]
    Male,
    #[serde(alias = "F", alias = "female")]
    Female,
}

impl Gender {
    pub const ALL: [Gender; 2] = [Gender::Male, Gender::Female];

    /// Single-letter code used in dataset files.
    pub fn code(self) -> &'static str {
        match self {
            Gender::Male => "M",
            Gender::Female => "F",
        }
    }

    pub fn from_code(code: &str) -> Option<Gender> {
        match code.trim() {
            "M" | "m" => Some(Gender::Male),
            "F" | "f" => Some(Gender::Female),
            _ => None,
        }
    }
}

impl fmt::Display for Gender {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gender::Male => "Male",
            Gender::Female => "Female",
        })
    }
}

impl FromStr for Gender {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(g) = Gender::from_code(s) {
            return Ok(g);
        }
        match s.trim().to_ascii_lowercase().as_str() {
            "male" => Ok(Gender::Male),
            "female" => Ok(Gender::Female),
            other => Err(format!("unknown gender {other:?} (expected M or F)")),
        }
    }
}

/// The eleven body measurements, in dataset column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Measure {
    PH,
    SEH,
    BPL,
    BKL,
    HB,
    SSH,
    SEB,
    TT,
    AL,
    EFL,
    SCH,
}

impl Measure {
    pub const ALL: [Measure; 11] = [
        Measure::PH,
        Measure::SEH,
        Measure::BPL,
        Measure::BKL,
        Measure::HB,
        Measure::SSH,
        Measure::SEB,
        Measure::TT,
        Measure::AL,
        Measure::EFL,
        Measure::SCH,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn acronym(self) -> &'static str {
        match self {
            Measure::PH => "PH",
            Measure::SEH => "SEH",
            Measure::BPL => "BPL",
            Measure::BKL => "BKL",
            Measure::HB => "HB",
            Measure::SSH => "SSH",
            Measure::SEB => "SEB",
            Measure::TT => "TT",
            Measure::AL => "AL",
            Measure::EFL => "EFL",
            Measure::SCH => "SCH",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Measure::PH => "Popliteal height",
            Measure::SEH => "Sitting elbow height",
            Measure::BPL => "Buttock-popliteal length",
            Measure::BKL => "Buttock-knee length",
            Measure::HB => "Hip breadth",
            Measure::SSH => "Sitting shoulder height",
            // Breadth across the lateral surfaces of the elbows.
            Measure::SEB => "Elbow-to-elbow breadth",
            Measure::TT => "Thigh thickness",
            Measure::AL => "Arm length",
            Measure::EFL => "Elbow-fingertip length",
            Measure::SCH => "Subscapular height",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.acronym())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Measure::ALL
            .into_iter()
            .find(|m| m.acronym().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown measure {s:?}"))
    }
}

/// One participant: eleven body measures in mm plus demographics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnthropometricRecord {
    pub id: String,
    pub gender: Gender,
    pub age: Option<i32>,
    pub study_year: Option<i32>,
    measures: [f64; 11],
}

impl AnthropometricRecord {
    pub fn new(id: impl Into<String>, gender: Gender, measures: [f64; 11]) -> Self {
        AnthropometricRecord {
            id: id.into(),
            gender,
            age: None,
            study_year: None,
            measures,
        }
    }

    pub fn with_age(mut self, age: i32) -> Self {
        self.age = Some(age);
        self
    }

    pub fn with_study_year(mut self, year: i32) -> Self {
        self.study_year = Some(year);
        self
    }

    #[inline]
    pub fn get(&self, m: Measure) -> f64 {
        self.measures[m.index()]
    }

    pub fn set(&mut self, m: Measure, value: f64) {
        self.measures[m.index()] = value;
    }

    pub fn measures(&self) -> &[f64; 11] {
        &self.measures
    }
}

/// Lists every invariant the record violates; empty when the record is valid.
pub fn validate_record(r: &AnthropometricRecord) -> Vec<String> {
    let mut out = Vec::new();
    if r.id.trim().is_empty() {
        out.push("id must be non-empty".to_string());
    }
    for m in Measure::ALL {
        let v = r.get(m);
        // NaN fails the first comparison.
        if !(v > 0.0) {
            out.push(format!("{m} must be > 0"));
        } else if v >= MEASURE_CEILING_MM {
            out.push(format!("{m} must be < {MEASURE_CEILING_MM}"));
        }
    }
    if let Some(age) = r.age {
        if age < AGE_RANGE.0 || age > AGE_RANGE.1 {
            out.push(format!("age outside {}-{}", AGE_RANGE.0, AGE_RANGE.1));
        }
    }
    if let Some(y) = r.study_year {
        if y < STUDY_YEAR_RANGE.0 || y > STUDY_YEAR_RANGE.1 {
            out.push(format!(
                "study_year outside {}-{}",
                STUDY_YEAR_RANGE.0, STUDY_YEAR_RANGE.1
            ));
        }
    }
    out
}

/// An ordered set of participants with unique ids.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct PopulationDataset {
    records: Vec<AnthropometricRecord>,
    pub source: String,
}

impl PopulationDataset {
    /// Builds a dataset, rejecting duplicate ids and invalid records.
    pub fn new(
        records: Vec<AnthropometricRecord>,
        source: impl Into<String>,
    ) -> Result<Self, Vec<String>> {
        let mut seen = HashSet::new();
        let mut problems = Vec::new();
        for r in &records {
            if !seen.insert(r.id.as_str()) {
                problems.push(format!("duplicate id {:?}", r.id));
            }
            for v in validate_record(r) {
                problems.push(format!("record {:?}: {v}", r.id));
            }
        }
        if problems.is_empty() {
            Ok(PopulationDataset {
                records,
                source: source.into(),
            })
        } else {
            Err(problems)
        }
    }

    pub fn records(&self) -> &[AnthropometricRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn count(&self, g: Gender) -> usize {
        self.records.iter().filter(|r| r.gender == g).count()
    }

    /// Values of one measure in record order.
    pub fn values(&self, m: Measure) -> Vec<f64> {
        self.records.iter().map(|r| r.get(m)).collect()
    }

    pub fn filter_by_gender(&self, g: Gender) -> PopulationDataset {
        filter_by_gender(self, g)
    }
}

pub fn filter_by_gender(d: &PopulationDataset, g: Gender) -> PopulationDataset {
    PopulationDataset {
        records: d.records.iter().filter(|r| r.gender == g).cloned().collect(),
        source: format!("{} [{}]", d.source, g),
    }
}

/// Slovin sample size `N / (1 + N e^2)`, rounded up.
pub fn required_sample_size(population: u64, precision: f64) -> Result<u64, StatsError> {
    if population < 1 {
        return Err(StatsError::domain("population must be at least 1"));
    }
    if !(0.0..1.0).contains(&precision) {
        return Err(StatsError::domain(format!(
            "precision {precision} outside [0, 1)"
        )));
    }
    let big_n = population as f64;
    let n = big_n / (1.0 + big_n * precision * precision);
    // Snap values within rounding noise of an integer before taking the ceiling.
    let nearest = n.round();
    let n = if (n - nearest).abs() <= 1e-9 * nearest.max(1.0) {
        nearest
    } else {
        n.ceil()
    };
    Ok((n as u64).min(population))
}

/// The eleven furniture dimensions, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dimension {
    SH,
    SW,
    SD,
    BH,
    BW,
    UEB,
    STH,
    STC,
    UTH,
    TL,
    TD,
}

impl Dimension {
    pub const ALL: [Dimension; 11] = [
        Dimension::SH,
        Dimension::SW,
        Dimension::SD,
        Dimension::BH,
        Dimension::BW,
        Dimension::UEB,
        Dimension::STH,
        Dimension::STC,
        Dimension::UTH,
        Dimension::TL,
        Dimension::TD,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn acronym(self) -> &'static str {
        match self {
            Dimension::SH => "SH",
            Dimension::SW => "SW",
            Dimension::SD => "SD",
            Dimension::BH => "BH",
            Dimension::BW => "BW",
            Dimension::UEB => "UEB",
            Dimension::STH => "STH",
            Dimension::STC => "STC",
            Dimension::UTH => "UTH",
            Dimension::TL => "TL",
            Dimension::TD => "TD",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Dimension::SH => "Seat height",
            Dimension::SW => "Seat width",
            Dimension::SD => "Seat depth",
            Dimension::BH => "Backrest height",
            Dimension::BW => "Backrest width",
            Dimension::UEB => "Upper edge of backrest",
            Dimension::STH => "Seat to table height",
            Dimension::STC => "Seat to table clearance",
            Dimension::UTH => "Underneath table height",
            Dimension::TL => "Table length",
            Dimension::TD => "Table depth",
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.acronym())
    }
}

impl FromStr for Dimension {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Dimension::ALL
            .into_iter()
            .find(|d| d.acronym().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown dimension {s:?}"))
    }
}

/// A furniture dimension: a single value or a closed adjustable range (mm).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DimensionValue {
    Fixed(f64),
    Adjustable { lo: f64, hi: f64 },
}

impl DimensionValue {
    pub fn lo(self) -> f64 {
        match self {
            DimensionValue::Fixed(v) => v,
            DimensionValue::Adjustable { lo, .. } => lo,
        }
    }

    pub fn hi(self) -> f64 {
        match self {
            DimensionValue::Fixed(v) => v,
            DimensionValue::Adjustable { hi, .. } => hi,
        }
    }

    pub fn is_adjustable(self) -> bool {
        matches!(self, DimensionValue::Adjustable { .. })
    }

    pub fn check(self, dim: Dimension) -> Result<(), SpecError> {
        match self {
            DimensionValue::Fixed(v) => {
                if !(v > 0.0) || !v.is_finite() {
                    return Err(SpecError::InvalidValue(format!("{dim} must be > 0")));
                }
            }
            DimensionValue::Adjustable { lo, hi } => {
                if !(lo > 0.0) || !lo.is_finite() || !hi.is_finite() {
                    return Err(SpecError::InvalidValue(format!("{dim} must be > 0")));
                }
                if !(lo < hi) {
                    return Err(SpecError::InvalidValue(format!(
                        "{dim} range requires lo < hi (got {lo} - {hi})"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for DimensionValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimensionValue::Fixed(v) => write!(f, "{v}"),
            DimensionValue::Adjustable { lo, hi } => write!(f, "{lo} - {hi}"),
        }
    }
}

/// Eleven furniture dimensions describing one chair-and-table set.
///
/// Serialized as a JSON object keyed by dimension acronym with an optional
/// `name`; adjustable values are `{"lo": x, "hi": y}`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct FurnitureSpec {
    pub name: String,
    dims: [DimensionValue; 11],
}

impl FurnitureSpec {
    pub fn new(name: impl Into<String>, dims: [DimensionValue; 11]) -> Result<Self, SpecError> {
        for d in Dimension::ALL {
            dims[d.index()].check(d)?;
        }
        Ok(FurnitureSpec {
            name: name.into(),
            dims,
        })
    }

    /// Builds a spec from a partial map; every dimension must be present.
    pub fn from_map(
        name: impl Into<String>,
        map: &BTreeMap<Dimension, DimensionValue>,
    ) -> Result<Self, SpecError> {
        let mut dims = [DimensionValue::Fixed(0.0); 11];
        for d in Dimension::ALL {
            dims[d.index()] = *map.get(&d).ok_or(SpecError::MissingDimension(d))?;
        }
        FurnitureSpec::new(name, dims)
    }

    #[inline]
    pub fn get(&self, d: Dimension) -> DimensionValue {
        self.dims[d.index()]
    }

    /// Returns a copy with one dimension replaced.
    pub fn with(&self, d: Dimension, v: DimensionValue) -> Result<Self, SpecError> {
        v.check(d)?;
        let mut next = self.clone();
        next.dims[d.index()] = v;
        Ok(next)
    }

    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        let raw: RawSpec =
            serde_json::from_str(text).map_err(|e| SpecError::Malformed(e.to_string()))?;
        FurnitureSpec::try_from(raw)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self, SpecError> {
        let raw: RawSpec =
            serde_json::from_value(value).map_err(|e| SpecError::Malformed(e.to_string()))?;
        FurnitureSpec::try_from(raw)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }
}

impl Serialize for FurnitureSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(12))?;
        map.serialize_entry("name", &self.name)?;
        for d in Dimension::ALL {
            map.serialize_entry(d.acronym(), &self.dims[d.index()])?;
        }
        map.end()
    }
}

#[derive(Deserialize)]
struct RawSpec {
    #[serde(default)]
    name: Option<String>,
    #[serde(flatten)]
    dims: BTreeMap<String, serde_json::Value>,
}

fn parse_dimension_value(d: Dimension, v: &serde_json::Value) -> Result<DimensionValue, SpecError> {
    let shape_err = || SpecError::InvalidValue(format!("{d} must be a number or an {{\"lo\", \"hi\"}} range"));
    match v {
        serde_json::Value::Number(n) => Ok(DimensionValue::Fixed(n.as_f64().ok_or_else(shape_err)?)),
        serde_json::Value::Object(obj) => {
            let lo = obj.get("lo").and_then(|x| x.as_f64()).ok_or_else(shape_err)?;
            let hi = obj.get("hi").and_then(|x| x.as_f64()).ok_or_else(shape_err)?;
            if obj.len() != 2 {
                return Err(shape_err());
            }
            Ok(DimensionValue::Adjustable { lo, hi })
        }
        _ => Err(shape_err()),
    }
}

impl TryFrom<RawSpec> for FurnitureSpec {
    type Error = SpecError;

    fn try_from(raw: RawSpec) -> Result<Self, Self::Error> {
        let mut map = BTreeMap::new();
        for (key, value) in &raw.dims {
            let d: Dimension = key
                .parse()
                .map_err(|_| SpecError::UnknownDimension(key.clone()))?;
            let v = parse_dimension_value(d, value)?;
            v.check(d)?;
            map.insert(d, v);
        }
        FurnitureSpec::from_map(raw.name.unwrap_or_else(|| "unnamed".to_string()), &map)
    }
}

/// Tunable constants used by the fit criteria and the analyses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FitConfig {
    /// Added to popliteal height for footwear (mm).
    pub shoe_allowance: f64,
    pub table_thickness: f64,
    /// Clearance above the thigh and elbow margin on table depth (mm).
    pub clearance_margin: f64,
    pub alpha_level: f64,
    pub percentile_triple: [f64; 3],
    pub rounding_step: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            shoe_allowance: 30.0,
            table_thickness: 30.0,
            clearance_margin: 20.0,
            alpha_level: 0.05,
            percentile_triple: [0.05, 0.50, 0.95],
            rounding_step: 5.0,
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<(), FitError> {
        let positive = [
            ("shoe_allowance", self.shoe_allowance),
            ("table_thickness", self.table_thickness),
            ("clearance_margin", self.clearance_margin),
            ("alpha_level", self.alpha_level),
            ("rounding_step", self.rounding_step),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(FitError::Configuration(format!("{name} must be > 0")));
            }
        }
        if self.alpha_level >= 1.0 {
            return Err(FitError::Configuration("alpha_level must be < 1".into()));
        }
        let [a, b, c] = self.percentile_triple;
        if !(0.0 < a && a < b && b < c && c < 1.0) {
            return Err(FitError::Configuration(
                "percentile_triple must be strictly increasing within (0, 1)".into(),
            ));
        }
        Ok(())
    }
}
