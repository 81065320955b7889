use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::DesignError;
use crate::model::{Dimension, DimensionValue, FitConfig, FurnitureSpec, Gender, Measure, PopulationDataset};
use crate::stats::percentile_inc;

/// Source value of a rule before its transform is applied.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Anchor {
    Constant { constant: f64 },
    Percentile {
        measure: Measure,
        gender: Gender,
        percentile: f64,
        /// Added to the percentile before the rule's transform (mm).
        #[serde(default, skip_serializing_if = "is_zero")]
        offset: f64,
    },
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

impl Anchor {
    pub fn constant(mm: f64) -> Self {
        Anchor::Constant { constant: mm }
    }

    pub fn percentile(measure: Measure, gender: Gender, percentile: f64) -> Self {
        Anchor::Percentile { measure, gender, percentile, offset: 0.0 }
    }

    pub fn plus(self, mm: f64) -> Self {
        match self {
            Anchor::Constant { constant } => Anchor::Constant { constant: constant + mm },
            Anchor::Percentile { measure, gender, percentile, offset } => {
                Anchor::Percentile { measure, gender, percentile, offset: offset + mm }
            }
        }
    }

    fn is_derived(&self) -> bool {
        matches!(self, Anchor::Percentile { .. })
    }
}

impl fmt::Display for Anchor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anchor::Constant { constant } => write!(f, "{constant} mm"),
            Anchor::Percentile { measure, gender, percentile, offset } => {
                write!(f, "p{} {gender} {measure:?}", percentile * 100.0)?;
                if *offset != 0.0 {
                    write!(f, " {offset:+}")?;
                }
                Ok(())
            }
        }
    }
}

/// How a rule produces its dimension: one anchor, or two anchors spanning
/// an adjustable range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RuleSource {
    Anchor(Anchor),
    Range([Anchor; 2]),
}

fn one() -> f64 {
    1.0
}

/// One dimension of a proposal: `scale * anchor + offset`, rounded to the
/// configured step when the anchor is data-derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRule")]
pub struct ProposalRule {
    pub dimension: Dimension,
    #[serde(flatten)]
    pub source: RuleSource,
    #[serde(default = "one")]
    pub scale: f64,
    #[serde(default)]
    pub offset: f64,
}

impl ProposalRule {
    pub fn constant(dimension: Dimension, mm: f64) -> Self {
        ProposalRule { dimension, source: RuleSource::Anchor(Anchor::constant(mm)), scale: 1.0, offset: 0.0 }
    }

    pub fn range(dimension: Dimension, lo: Anchor, hi: Anchor) -> Self {
        ProposalRule { dimension, source: RuleSource::Range([lo, hi]), scale: 1.0, offset: 0.0 }
    }

    pub fn anchored(dimension: Dimension, anchor: Anchor) -> Self {
        ProposalRule { dimension, source: RuleSource::Anchor(anchor), scale: 1.0, offset: 0.0 }
    }

    pub fn with_transform(mut self, scale: f64, offset: f64) -> Self {
        self.scale = scale;
        self.offset = offset;
        self
    }

    fn anchors(&self) -> &[Anchor] {
        match &self.source {
            RuleSource::Anchor(a) => std::slice::from_ref(a),
            RuleSource::Range(r) => r,
        }
    }

    fn error(&self, message: impl Into<String>) -> DesignError {
        DesignError::Rule { rule: self.to_string(), message: message.into() }
    }

    pub fn validate(&self) -> Result<(), DesignError> {
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return Err(self.error("scale must be > 0"));
        }
        if !self.offset.is_finite() {
            return Err(self.error("offset must be finite"));
        }
        for a in self.anchors() {
            match *a {
                Anchor::Percentile { percentile, .. } if !(percentile > 0.0 && percentile < 1.0) => {
                    return Err(self.error("percentile must lie in (0, 1)"));
                }
                Anchor::Constant { constant } if !constant.is_finite() => {
                    return Err(self.error("constant must be finite"));
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn evaluate_anchor(&self, a: &Anchor, d: &PopulationDataset, cfg: &FitConfig) -> Result<f64, DesignError> {
        let raw = match *a {
            Anchor::Constant { constant } => constant,
            Anchor::Percentile { measure, gender, percentile, offset } => {
                let values: Vec<f64> =
                    d.records().iter().filter(|r| r.gender == gender).map(|r| r.get(measure)).collect();
                if values.is_empty() {
                    return Err(self.error(format!("no {gender} records in the dataset")));
                }
                percentile_inc(&values, percentile).map_err(|e| self.error(e.to_string()))? + offset
            }
        };
        let v = self.scale * raw + self.offset;
        Ok(if a.is_derived() { round_to_step(v, cfg.rounding_step) } else { v })
    }

    /// Evaluates the rule against a dataset.
    pub fn evaluate(&self, d: &PopulationDataset, cfg: &FitConfig) -> Result<DimensionValue, DesignError> {
        self.validate()?;
        let value = match &self.source {
            RuleSource::Anchor(a) => DimensionValue::Fixed(self.evaluate_anchor(a, d, cfg)?),
            RuleSource::Range([lo, hi]) => DimensionValue::Adjustable {
                lo: self.evaluate_anchor(lo, d, cfg)?,
                hi: self.evaluate_anchor(hi, d, cfg)?,
            },
        };
        value.check(self.dimension).map_err(|e| self.error(e.to_string()))?;
        Ok(value)
    }
}

impl fmt::Display for ProposalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} <- ", self.dimension)?;
        match &self.source {
            RuleSource::Anchor(a) => write!(f, "{a}")?,
            RuleSource::Range([lo, hi]) => write!(f, "[{lo}, {hi}]")?,
        }
        if self.scale != 1.0 {
            write!(f, " x{}", self.scale)?;
        }
        if self.offset != 0.0 {
            write!(f, " {:+}", self.offset)?;
        }
        Ok(())
    }
}

/// Rounds to the nearest multiple of `step`; halves round away from zero.
pub fn round_to_step(v: f64, step: f64) -> f64 {
    if step > 0.0 {
        (v / step).round() * step
    } else {
        v
    }
}

/// Computes a spec from one rule per dimension.
pub fn propose_dimensions(
    d: &PopulationDataset,
    rules: &[ProposalRule],
    cfg: &FitConfig,
) -> Result<FurnitureSpec, DesignError> {
    propose_named(d, rules, cfg, "proposed")
}

fn propose_named(
    d: &PopulationDataset,
    rules: &[ProposalRule],
    cfg: &FitConfig,
    name: &str,
) -> Result<FurnitureSpec, DesignError> {
    cfg.validate()?;
    let mut dims: [Option<DimensionValue>; 11] = [None; 11];
    for rule in rules {
        let slot = &mut dims[rule.dimension.index()];
        if slot.is_some() {
            return Err(rule.error(format!("duplicate rule for dimension {:?}", rule.dimension)));
        }
        *slot = Some(rule.evaluate(d, cfg)?);
    }
    let mut out = [DimensionValue::Fixed(0.0); 11];
    for (dim, (slot, v)) in Dimension::ALL.iter().zip(out.iter_mut().zip(dims)) {
        *slot = v.ok_or_else(|| DesignError::Config(format!("missing rule for dimension {dim:?}")))?;
    }
    Ok(FurnitureSpec::new(name, out)?)
}

/// A named list of rules, as read from a TOML or JSON ruleset file.
///
/// ```toml
/// name = "example"
///
/// [[rules]]
/// dimension = "SH"
/// constant = 430.0
///
/// [[rules]]
/// dimension = "SW"
/// anchor = { measure = "HB", gender = "F", percentile = 0.95 }
/// scale = 1.12
///
/// [[rules]]
/// dimension = "STH"
/// range = [{ constant = 235.0 }, { constant = 310.0 }]
/// ```
///
/// A bare `constant = x` is shorthand for `anchor = { constant = x }`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Ruleset {
    pub name: String,
    pub rules: Vec<ProposalRule>,
}

#[derive(Deserialize)]
struct RawRuleset {
    #[serde(default)]
    name: Option<String>,
    #[serde(alias = "rule", default)]
    rules: Vec<ProposalRule>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRule {
    dimension: Dimension,
    #[serde(default)]
    constant: Option<f64>,
    #[serde(default)]
    anchor: Option<Anchor>,
    #[serde(default)]
    range: Option<[Anchor; 2]>,
    #[serde(default = "one")]
    scale: f64,
    #[serde(default)]
    offset: f64,
}

impl TryFrom<RawRule> for ProposalRule {
    type Error = String;

    fn try_from(r: RawRule) -> Result<Self, String> {
        let source = match (r.constant, r.anchor, r.range) {
            (Some(c), None, None) => RuleSource::Anchor(Anchor::constant(c)),
            (None, Some(a), None) => RuleSource::Anchor(a),
            (None, None, Some(rg)) => RuleSource::Range(rg),
            _ => {
                return Err(format!(
                    "rule for {:?}: exactly one of constant, anchor or range is required",
                    r.dimension
                ))
            }
        };
        Ok(ProposalRule { dimension: r.dimension, source, scale: r.scale, offset: r.offset })
    }
}

impl Ruleset {
    fn from_raw(raw: RawRuleset) -> Result<Self, DesignError> {
        let rs = Ruleset { name: raw.name.unwrap_or_else(|| "proposed".into()), rules: raw.rules };
        for r in &rs.rules {
            r.validate()?;
        }
        Ok(rs)
    }

    pub fn from_toml(text: &str) -> Result<Self, DesignError> {
        let raw: RawRuleset = toml::from_str(text).map_err(|e| DesignError::Config(e.to_string()))?;
        Self::from_raw(raw)
    }

    pub fn from_json(text: &str) -> Result<Self, DesignError> {
        let raw: RawRuleset = serde_json::from_str(text).map_err(|e| DesignError::Config(e.to_string()))?;
        Self::from_raw(raw)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self, DesignError> {
        let raw: RawRuleset = serde_json::from_value(value).map_err(|e| DesignError::Config(e.to_string()))?;
        Self::from_raw(raw)
    }

    /// Picks the parser from the extension; anything but `.json` is TOML.
    pub fn load(path: &std::path::Path) -> Result<Self, DesignError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| DesignError::Config(format!("{}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
            Self::from_json(&text)
        } else {
            Self::from_toml(&text)
        }
    }

    pub fn propose(&self, d: &PopulationDataset, cfg: &FitConfig) -> Result<FurnitureSpec, DesignError> {
        propose_named(d, &self.rules, cfg, &self.name)
    }
}

fn constants(name: &str, spec: &FurnitureSpec) -> Ruleset {
    let rules = Dimension::ALL
        .iter()
        .map(|&dim| match spec.get(dim) {
            DimensionValue::Fixed(v) => ProposalRule::constant(dim, v),
            DimensionValue::Adjustable { lo, hi } => {
                ProposalRule::range(dim, Anchor::constant(lo), Anchor::constant(hi))
            }
        })
        .collect();
    Ruleset { name: name.to_string(), rules }
}

/// Published type-1 proposal as constant rules; TL and TD carry over from
/// the existing table.
pub fn type1_ruleset() -> Ruleset {
    let spec = crate::reference::proposed_type1();
    constants(&spec.name, &spec)
}

/// Published type-2 proposal as constant rules.
pub fn type2_ruleset() -> Ruleset {
    let spec = crate::reference::proposed_type2();
    constants(&spec.name, &spec)
}

/// The stated design anchors written as percentile rules. Several of them do
/// not land on the published numbers; the constant rulesets are the fixtures.
pub fn anchor_ruleset() -> Ruleset {
    use Gender::{Female, Male};
    use Measure as M;
    let p = Anchor::percentile;
    let c = ProposalRule::constant;
    let a = ProposalRule::anchored;
    Ruleset {
        name: "anchor rules (type-2 layout)".into(),
        rules: vec![
            // 5th percentile female PH plus shoe clearance, +/- 25 mm of travel.
            ProposalRule::range(Dimension::SH, p(M::PH, Female, 0.05).plus(5.0), p(M::PH, Female, 0.05).plus(55.0)),
            a(Dimension::SW, p(M::HB, Female, 0.95)),
            a(Dimension::SD, p(M::BPL, Female, 0.05)),
            a(Dimension::BH, p(M::SSH, Female, 0.05)).with_transform(0.75, 0.0),
            a(Dimension::BW, p(M::SEB, Male, 0.95)),
            a(Dimension::UEB, p(M::SCH, Female, 0.05)),
            c(Dimension::STH, 260.0),
            ProposalRule::range(Dimension::STC, Anchor::constant(95.25), p(M::TT, Male, 0.95).plus(20.0)),
            c(Dimension::UTH, 645.0),
            c(Dimension::TL, 457.2),
            c(Dimension::TD, 749.3),
        ],
    }
}
