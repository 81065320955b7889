//! Analyses composed from the core library, shared by CLI and service.

use std::path::Path;

use ergofit::stats::{describe_with, histogram, one_way_anova, AnovaResult};
use ergofit::{FitConfig, FurnitureSpec, Gender, Measure, PopulationDataset, StatsError};
use serde::Serialize;

use crate::error::CliError;

/// Descriptive statistics of one measure within one gender. `sd` is absent
/// when the group holds a single record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescribeRow {
    pub measure: Measure,
    pub gender: Gender,
    pub n: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub sd: Option<f64>,
    pub p5: f64,
    pub p50: f64,
    pub p95: f64,
}

/// One row per (measure, gender) for every gender present in the dataset.
pub fn describe_dataset(d: &PopulationDataset, cfg: &FitConfig) -> Result<Vec<DescribeRow>, StatsError> {
    let mut rows = Vec::new();
    for m in Measure::ALL {
        for g in Gender::ALL {
            let values: Vec<f64> = d.records().iter().filter(|r| r.gender == g).map(|r| r.get(m)).collect();
            match values.len() {
                0 => {}
                1 => {
                    let v = values[0];
                    rows.push(DescribeRow { measure: m, gender: g, n: 1, min: v, max: v, mean: v, sd: None, p5: v, p50: v, p95: v });
                }
                _ => {
                    let s = describe_with(&values, cfg.percentile_triple)?;
                    rows.push(DescribeRow {
                        measure: m,
                        gender: g,
                        n: s.n,
                        min: s.min,
                        max: s.max,
                        mean: s.mean,
                        sd: Some(s.sd),
                        p5: s.p5,
                        p50: s.p50,
                        p95: s.p95,
                    });
                }
            }
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramRow {
    pub measure: Measure,
    pub gender: Gender,
    pub bin: usize,
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
}

/// Equal-width bin tables per measure and gender, for plotting elsewhere.
pub fn histograms(
    d: &PopulationDataset,
    bins: usize,
    measures: &[Measure],
    genders: &[Gender],
) -> Result<Vec<HistogramRow>, StatsError> {
    let mut rows = Vec::new();
    for &m in measures {
        for &g in genders {
            let values: Vec<f64> = d.records().iter().filter(|r| r.gender == g).map(|r| r.get(m)).collect();
            if values.is_empty() {
                continue;
            }
            for (i, b) in histogram(&values, bins)?.into_iter().enumerate() {
                rows.push(HistogramRow { measure: m, gender: g, bin: i + 1, lower: b.lower, upper: b.upper, count: b.count });
            }
        }
    }
    Ok(rows)
}

/// A labelled set of groups compared by one-way ANOVA.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupLine {
    pub label: String,
    pub groups: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnovaRow {
    pub label: String,
    #[serde(flatten)]
    pub result: AnovaResult,
}

/// Parses `label | g1 values | g2 values ...` lines; `#` starts a comment.
pub fn parse_groups(text: &str) -> Result<Vec<GroupLine>, CliError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| CliError::Input(format!("groups line {}: {msg}", i + 1));
        let mut parts = line.split('|');
        let label = parts.next().unwrap_or("").trim().to_string();
        let groups = parts
            .map(|p| {
                p.split_whitespace()
                    .map(|v| v.parse::<f64>().map_err(|_| bad(format!("not a number: {v:?}"))))
                    .collect::<Result<Vec<f64>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if groups.len() < 2 {
            return Err(bad(format!("expected at least 2 groups, found {}", groups.len())));
        }
        if groups.iter().any(|g| g.is_empty()) {
            return Err(bad("empty group".into()));
        }
        out.push(GroupLine { label, groups });
    }
    if out.is_empty() {
        return Err(CliError::Input("groups file has no data lines".into()));
    }
    Ok(out)
}

pub fn anova_rows(lines: &[GroupLine], alpha: f64) -> Result<Vec<AnovaRow>, CliError> {
    lines
        .iter()
        .map(|l| {
            let result =
                one_way_anova(&l.groups, alpha).map_err(|e| CliError::Analysis(format!("{}: {e}", l.label)))?;
            Ok(AnovaRow { label: l.label.clone(), result })
        })
        .collect()
}

/// Reads a JSON spec; one without a `name` takes the file stem.
pub fn load_spec(path: &Path) -> Result<FurnitureSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("spec not found: {} ({e})", path.display())))?;
    let mut value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: malformed specification: {e}", path.display())))?;
    if let (Some(obj), Some(stem)) = (value.as_object_mut(), path.file_stem()) {
        obj.entry("name").or_insert_with(|| stem.to_string_lossy().into());
    }
    FurnitureSpec::from_value(value).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
