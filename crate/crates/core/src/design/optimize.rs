use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::DesignError;
use crate::fit::{population_mismatch, tally, Criterion, MismatchReport};
use crate::model::{
    AnthropometricRecord, Dimension, DimensionValue, FitConfig, FurnitureSpec, Gender, PopulationDataset,
};

/// Objective differences below this are ties.
const TIE_TOLERANCE: f64 = 1e-9;
const MAX_GRID_POINTS: usize = 100_000;

/// Search axis for one dimension. With `span`, every candidate is an
/// adjustable range `[v, v + span]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridAxis {
    pub min: f64,
    pub max: f64,
    pub step: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span: Option<f64>,
}

impl GridAxis {
    pub fn fixed(min: f64, max: f64, step: f64) -> Self {
        GridAxis { min, max, step, span: None }
    }

    pub fn adjustable(min: f64, max: f64, step: f64, span: f64) -> Self {
        GridAxis { min, max, step, span: Some(span) }
    }

    fn validate(&self, dim: Dimension) -> Result<(), DesignError> {
        let bad = |m: &str| Err(DesignError::Domain(format!("grid for {dim:?}: {m}")));
        if !(self.min.is_finite() && self.max.is_finite()) {
            return bad("bounds must be finite");
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return bad("step must be > 0");
        }
        if self.min > self.max {
            return bad("empty grid (min > max)");
        }
        if let Some(s) = self.span {
            if !(s > 0.0 && s.is_finite()) {
                return bad("span must be > 0");
            }
        }
        if (self.max - self.min) / self.step >= MAX_GRID_POINTS as f64 {
            return bad("too many grid points");
        }
        Ok(())
    }

    /// Candidate values in ascending order.
    pub fn points(&self) -> Vec<DimensionValue> {
        let n = ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1;
        (0..n)
            .map(|i| {
                let v = self.min + i as f64 * self.step;
                match self.span {
                    Some(s) => DimensionValue::Adjustable { lo: v, hi: v + s },
                    None => DimensionValue::Fixed(v),
                }
            })
            .collect()
    }
}

/// Weight of every (criterion, gender) term in the objective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Weights([[f64; 2]; 11]);

impl Default for Weights {
    fn default() -> Self {
        Weights([[1.0; 2]; 11])
    }
}

impl Weights {
    pub fn uniform(w: f64) -> Self {
        Weights([[w; 2]; 11])
    }

    pub fn get(&self, c: Criterion, g: Gender) -> f64 {
        self.0[c.dimension().index()][gender_slot(g)]
    }

    pub fn set(&mut self, c: Criterion, g: Gender, w: f64) {
        self.0[c.dimension().index()][gender_slot(g)] = w;
    }

    pub fn with(mut self, c: Criterion, g: Gender, w: f64) -> Self {
        self.set(c, g, w);
        self
    }

    fn validate(&self) -> Result<(), DesignError> {
        let flat = self.0.iter().flatten();
        if flat.clone().any(|w| !(*w >= 0.0 && w.is_finite())) {
            return Err(DesignError::Config("weights must be finite and non-negative".into()));
        }
        if !flat.clone().any(|w| *w > 0.0) {
            return Err(DesignError::Config("at least one weight must be positive".into()));
        }
        Ok(())
    }

    /// Weighted sum of total mismatch percentages; empty groups add nothing.
    pub fn objective(&self, report: &MismatchReport) -> f64 {
        report
            .rows
            .iter()
            .map(|r| self.get(r.criterion, r.gender) * r.total_pct.unwrap_or(0.0))
            .sum()
    }
}

fn gender_slot(g: Gender) -> usize {
    match g {
        Gender::Male => 0,
        Gender::Female => 1,
    }
}

/// Search problem: per-dimension grids over a base spec, plus objective weights.
///
/// TOML layout:
///
/// ```toml
/// [base]            # any FurnitureSpec; supplies dimensions without a grid
/// SH = 430.0
/// # ...
///
/// [grid.SH]
/// min = 380.0
/// max = 480.0
/// step = 5.0
/// span = 50.0       # optional: search adjustable ranges of this width
///
/// [weights]         # optional; unlisted terms weigh 1
/// "SH_PH" = 2.0            # both genders
/// "SW_HB.Female" = 0.5     # one gender
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationSpec {
    pub base: Option<FurnitureSpec>,
    pub grid: BTreeMap<Dimension, GridAxis>,
    pub weights: Weights,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptimization {
    #[serde(default)]
    base: Option<serde_json::Value>,
    #[serde(default)]
    grid: BTreeMap<Dimension, GridAxis>,
    #[serde(default)]
    weights: BTreeMap<String, f64>,
}

fn parse_weight_key(key: &str) -> Result<(Criterion, Option<Gender>), DesignError> {
    let (c, g) = match key.split_once('.') {
        Some((c, g)) => (c, Some(g)),
        None => (key, None),
    };
    let criterion: Criterion =
        c.parse().map_err(|_| DesignError::Config(format!("unknown criterion in weight key {key:?}")))?;
    let gender = g
        .map(|g| g.parse::<Gender>().map_err(|_| DesignError::Config(format!("unknown gender in weight key {key:?}"))))
        .transpose()?;
    Ok((criterion, gender))
}

impl OptimizationSpec {
    pub fn new(base: Option<FurnitureSpec>, grid: BTreeMap<Dimension, GridAxis>, weights: Weights) -> Self {
        OptimizationSpec { base, grid, weights }
    }

    pub fn from_toml(text: &str) -> Result<Self, DesignError> {
        let raw: RawOptimization = toml::from_str(text).map_err(|e| DesignError::Config(e.to_string()))?;
        let base = raw.base.map(FurnitureSpec::from_value).transpose()?;
        let mut weights = Weights::default();
        for (key, w) in &raw.weights {
            match parse_weight_key(key)? {
                (c, Some(g)) => weights.set(c, g, *w),
                (c, None) => {
                    for g in Gender::ALL {
                        weights.set(c, g, *w);
                    }
                }
            }
        }
        let spec = OptimizationSpec { base, grid: raw.grid, weights };
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, DesignError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| DesignError::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<(), DesignError> {
        for (d, axis) in &self.grid {
            axis.validate(*d)?;
        }
        for d in Dimension::ALL {
            if !self.grid.contains_key(&d) && self.base.is_none() {
                return Err(DesignError::Config(format!("dimension {d:?} has neither a grid nor a base value")));
            }
        }
        self.weights.validate()
    }

    /// Candidate values of one dimension: its grid, or the base value alone.
    pub fn candidates(&self, d: Dimension) -> Vec<DimensionValue> {
        match (self.grid.get(&d), &self.base) {
            (Some(axis), _) => axis.points(),
            (None, Some(base)) => vec![base.get(d)],
            (None, None) => Vec::new(),
        }
    }

    /// Starting spec: base values, or each grid's first point.
    fn seed_spec(&self) -> Result<FurnitureSpec, DesignError> {
        let mut dims = [DimensionValue::Fixed(0.0); 11];
        for d in Dimension::ALL {
            dims[d.index()] = *self
                .candidates(d)
                .first()
                .ok_or_else(|| DesignError::Domain(format!("empty grid for {d:?}")))?;
        }
        let name = self.base.as_ref().map_or("optimized".to_string(), |b| format!("{} (optimized)", b.name));
        Ok(FurnitureSpec::new(name, dims)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizationResult {
    pub spec: FurnitureSpec,
    pub objective: f64,
    pub report: MismatchReport,
}

/// Weighted mismatch of one criterion for a spec.
struct CriterionCost<'a> {
    groups: [(Gender, Vec<&'a AnthropometricRecord>); 2],
    weights: &'a Weights,
    cfg: &'a FitConfig,
}

impl CriterionCost<'_> {
    fn cost(&self, c: Criterion, spec: &FurnitureSpec) -> Result<f64, DesignError> {
        let mut total = 0.0;
        for (g, records) in &self.groups {
            let w = self.weights.get(c, *g);
            if w == 0.0 || records.is_empty() {
                continue;
            }
            let t = tally(records.iter().copied(), c, spec, self.cfg)?;
            total += w * t.total_mismatch_pct();
        }
        Ok(total)
    }
}

/// Index of the first minimum, treating near-equal values as ties.
fn argmin(costs: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &c) in costs.iter().enumerate() {
        match best {
            Some((_, b)) if c >= b - TIE_TOLERANCE => {}
            _ => best = Some((i, c)),
        }
    }
    best.map(|(i, _)| i)
}

/// Grid search minimizing the weighted sum of total mismatch percentages.
///
/// Every criterion reads exactly one furniture dimension, and only the UTH
/// criterion also reads SH. Dimensions other than SH and UTH are therefore
/// minimized one at a time, and SH is chosen jointly with the best UTH for
/// each SH candidate. The result is the exact grid minimum; among tied
/// points the smallest value wins (SH before UTH).
pub fn optimize_dimensions(
    d: &PopulationDataset,
    opt: &OptimizationSpec,
    cfg: &FitConfig,
) -> Result<OptimizationResult, DesignError> {
    cfg.validate()?;
    opt.validate()?;
    if d.is_empty() {
        return Err(DesignError::Domain("dataset is empty".into()));
    }
    let groups = Gender::ALL.map(|g| (g, d.records().iter().filter(|r| r.gender == g).collect::<Vec<_>>()));
    let cost = CriterionCost { groups, weights: &opt.weights, cfg };
    let mut spec = opt.seed_spec()?;

    for dim in Dimension::ALL {
        if matches!(dim, Dimension::SH | Dimension::UTH) {
            continue;
        }
        let c = Criterion::for_dimension(dim);
        let cands = opt.candidates(dim);
        let costs = cands
            .iter()
            .map(|v| cost.cost(c, &spec.with(dim, *v)?))
            .collect::<Result<Vec<_>, DesignError>>()?;
        let i = argmin(&costs).expect("candidates are non-empty");
        spec = spec.with(dim, cands[i])?;
    }

    let sh_cands = opt.candidates(Dimension::SH);
    let uth_cands = opt.candidates(Dimension::UTH);
    let mut joint = Vec::with_capacity(sh_cands.len());
    for sh in &sh_cands {
        let at_sh = spec.with(Dimension::SH, *sh)?;
        let uth_costs = uth_cands
            .iter()
            .map(|u| cost.cost(Criterion::UnderneathTableHeight, &at_sh.with(Dimension::UTH, *u)?))
            .collect::<Result<Vec<_>, DesignError>>()?;
        let j = argmin(&uth_costs).expect("candidates are non-empty");
        joint.push((j, cost.cost(Criterion::SeatHeight, &at_sh)? + uth_costs[j]));
    }
    let i = argmin(&joint.iter().map(|(_, c)| *c).collect::<Vec<_>>()).expect("candidates are non-empty");
    spec = spec.with(Dimension::SH, sh_cands[i])?.with(Dimension::UTH, uth_cands[joint[i].0])?;

    let report = population_mismatch(d, &spec, cfg)?;
    let objective = opt.weights.objective(&report);
    Ok(OptimizationResult { spec, objective, report })
}

/// Mismatch report of a proposed spec.
pub fn evaluate_proposal(
    d: &PopulationDataset,
    spec: &FurnitureSpec,
    cfg: &FitConfig,
) -> Result<MismatchReport, DesignError> {
    Ok(population_mismatch(d, spec, cfg)?)
}
