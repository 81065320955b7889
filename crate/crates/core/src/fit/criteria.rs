//! The eleven furniture/anthropometry fit relations.
//!
//! Each relation is inverted into an admissible interval for the furniture
//! dimension as a function of one participant's body measures. A furniture
//! value below the interval is a high mismatch (the body measure exceeds what
//! the furniture serves); above it is a low mismatch.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::FitError;
use crate::model::{AnthropometricRecord, Dimension, DimensionValue, FitConfig, FurnitureSpec, Measure};

const COS_30: f64 = 0.866_025_403_784_438_6;
const COS_5: f64 = 0.996_194_698_091_745_5;

/// Fixed clearance (mm) added to seat height plus thigh thickness for the
/// lowest admissible underneath-table height.
pub const UTH_LEG_CLEARANCE: f64 = 30.0;
/// Forearm reach coefficient applied to arm length in the upper UTH bound.
pub const UTH_ARM_COEFFICIENT: f64 = 0.1483;
/// Elbow abduction (20°) coefficient applied to arm length in the TD bound.
pub const TD_ARM_COEFFICIENT: f64 = 0.342;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Criterion {
    #[serde(rename = "SH_PH")]
    SeatHeight,
    #[serde(rename = "SW_HB")]
    SeatWidth,
    #[serde(rename = "SD_BPL")]
    SeatDepth,
    #[serde(rename = "BH_SSH")]
    BackrestHeight,
    #[serde(rename = "BW_HB")]
    BackrestWidth,
    #[serde(rename = "UEB_SCH")]
    BackrestUpperEdge,
    #[serde(rename = "STH_SEH")]
    SeatToTableHeight,
    #[serde(rename = "STC_TT")]
    SeatToTableClearance,
    #[serde(rename = "UTH_combined")]
    UnderneathTableHeight,
    #[serde(rename = "TL_BKL")]
    TableLength,
    #[serde(rename = "TD_combined")]
    TableDepth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sided {
    TwoSided,
    OneSidedMin,
    OneSidedMax,
}

impl Criterion {
    pub const ALL: [Criterion; 11] = [
        Criterion::SeatHeight,
        Criterion::SeatWidth,
        Criterion::SeatDepth,
        Criterion::BackrestHeight,
        Criterion::BackrestWidth,
        Criterion::BackrestUpperEdge,
        Criterion::SeatToTableHeight,
        Criterion::SeatToTableClearance,
        Criterion::UnderneathTableHeight,
        Criterion::TableLength,
        Criterion::TableDepth,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Criterion::SeatHeight => "SH_PH",
            Criterion::SeatWidth => "SW_HB",
            Criterion::SeatDepth => "SD_BPL",
            Criterion::BackrestHeight => "BH_SSH",
            Criterion::BackrestWidth => "BW_HB",
            Criterion::BackrestUpperEdge => "UEB_SCH",
            Criterion::SeatToTableHeight => "STH_SEH",
            Criterion::SeatToTableClearance => "STC_TT",
            Criterion::UnderneathTableHeight => "UTH_combined",
            Criterion::TableLength => "TL_BKL",
            Criterion::TableDepth => "TD_combined",
        }
    }

    /// Row label in report tables.
    pub fn label(self) -> &'static str {
        match self {
            Criterion::SeatHeight => "SH against PH",
            Criterion::SeatWidth => "SW against HB",
            Criterion::SeatDepth => "SD against BPL",
            Criterion::BackrestHeight => "BH against SSH",
            Criterion::BackrestWidth => "BW against HB",
            Criterion::BackrestUpperEdge => "UEB against SCH",
            Criterion::SeatToTableHeight => "STH against SEH",
            Criterion::SeatToTableClearance => "STC against TT",
            Criterion::UnderneathTableHeight => "UTH against TT, SEH, PH and AL",
            Criterion::TableLength => "TL against BKL",
            Criterion::TableDepth => "TD against SEB, AL and EFL",
        }
    }

    pub fn dimension(self) -> Dimension {
        match self {
            Criterion::SeatHeight => Dimension::SH,
            Criterion::SeatWidth => Dimension::SW,
            Criterion::SeatDepth => Dimension::SD,
            Criterion::BackrestHeight => Dimension::BH,
            Criterion::BackrestWidth => Dimension::BW,
            Criterion::BackrestUpperEdge => Dimension::UEB,
            Criterion::SeatToTableHeight => Dimension::STH,
            Criterion::SeatToTableClearance => Dimension::STC,
            Criterion::UnderneathTableHeight => Dimension::UTH,
            Criterion::TableLength => Dimension::TL,
            Criterion::TableDepth => Dimension::TD,
        }
    }

    /// The criterion that evaluates a given furniture dimension.
    pub fn for_dimension(d: Dimension) -> Criterion {
        Criterion::ALL[d.index()]
    }

    pub fn sided(self) -> Sided {
        match self {
            Criterion::BackrestWidth | Criterion::SeatToTableClearance | Criterion::TableLength => {
                Sided::OneSidedMin
            }
            Criterion::BackrestUpperEdge => Sided::OneSidedMax,
            _ => Sided::TwoSided,
        }
    }

    pub fn is_two_sided(self) -> bool {
        self.sided() == Sided::TwoSided
    }

    /// Body measures the admissible interval depends on.
    pub fn measures(self) -> &'static [Measure] {
        match self {
            Criterion::SeatHeight => &[Measure::PH],
            Criterion::SeatWidth | Criterion::BackrestWidth => &[Measure::HB],
            Criterion::SeatDepth => &[Measure::BPL],
            Criterion::BackrestHeight => &[Measure::SSH],
            Criterion::BackrestUpperEdge => &[Measure::SCH],
            Criterion::SeatToTableHeight => &[Measure::SEH],
            Criterion::SeatToTableClearance => &[Measure::TT],
            Criterion::UnderneathTableHeight => &[Measure::TT, Measure::SEH, Measure::PH, Measure::AL],
            Criterion::TableLength => &[Measure::BKL],
            Criterion::TableDepth => &[Measure::SEB, Measure::AL, Measure::EFL],
        }
    }

    /// Whether the interval also depends on the furniture's seat height.
    pub fn needs_seat_height(self) -> bool {
        self == Criterion::UnderneathTableHeight
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl std::str::FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        Criterion::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s) || c.dimension().acronym().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown criterion {s:?}"))
    }
}

/// Admissible furniture interval; infinite ends mean unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    /// The lower bound itself is excluded (strict inequality).
    pub lo_strict: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Interval { lo, hi, lo_strict: false }
    }

    pub fn above(lo: f64) -> Self {
        Interval::closed(lo, f64::INFINITY)
    }

    pub fn strictly_above(lo: f64) -> Self {
        Interval { lo, hi: f64::INFINITY, lo_strict: true }
    }

    pub fn below(hi: f64) -> Self {
        Interval::closed(f64::NEG_INFINITY, hi)
    }

    /// True when `v` is under the lower bound.
    pub fn is_below(&self, v: f64) -> bool {
        if self.lo_strict {
            v <= self.lo
        } else {
            v < self.lo
        }
    }

    pub fn is_above(&self, v: f64) -> bool {
        v > self.hi
    }

    pub fn contains(&self, v: f64) -> bool {
        !self.is_below(v) && !self.is_above(v)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo_strict && self.lo >= self.hi)
    }

    /// Whether the closed range `[a, b]` shares a point with this interval.
    pub fn intersects(&self, a: f64, b: f64) -> bool {
        !self.is_empty() && !self.is_below(b) && !self.is_above(a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FitClass {
    Match,
    LowMismatch,
    HighMismatch,
    /// One-sided criteria only.
    Mismatch,
}

impl FitClass {
    pub fn is_match(self) -> bool {
        self == FitClass::Match
    }
}

impl fmt::Display for FitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitClass::Match => "match",
            FitClass::LowMismatch => "low mismatch",
            FitClass::HighMismatch => "high mismatch",
            FitClass::Mismatch => "mismatch",
        })
    }
}

/// Seat height used when testing the underneath-table relation: a fixed
/// seat as-is, an adjustable seat at its lowest (most permissive) setting.
pub fn effective_seat_height(spec: &FurnitureSpec) -> f64 {
    match spec.get(Dimension::SH) {
        DimensionValue::Fixed(v) => v,
        DimensionValue::Adjustable { lo, .. } => lo,
    }
}

/// Admissible interval given an explicit seat height (needed only by the
/// underneath-table relation).
pub fn interval_with_seat(
    c: Criterion,
    r: &AnthropometricRecord,
    seat_height: Option<f64>,
    cfg: &FitConfig,
) -> Result<Interval, FitError> {
    let m = |x: Measure| r.get(x);
    let knee = m(Measure::PH) + cfg.shoe_allowance;
    Ok(match c {
        Criterion::SeatHeight => Interval::closed(knee * COS_30, knee * COS_5),
        Criterion::SeatWidth => Interval::closed(1.10 * m(Measure::HB), 1.30 * m(Measure::HB)),
        Criterion::SeatDepth => Interval::closed(0.80 * m(Measure::BPL), 0.95 * m(Measure::BPL)),
        Criterion::BackrestHeight => Interval::closed(0.60 * m(Measure::SSH), 0.80 * m(Measure::SSH)),
        Criterion::BackrestWidth => Interval::above(m(Measure::HB)),
        Criterion::BackrestUpperEdge => Interval::below(m(Measure::SCH)),
        Criterion::SeatToTableHeight => Interval::closed(m(Measure::SEH), m(Measure::SEH) + 50.0),
        Criterion::SeatToTableClearance => Interval::strictly_above(m(Measure::TT) + cfg.clearance_margin),
        Criterion::UnderneathTableHeight => {
            let sh = seat_height
                .filter(|v| v.is_finite() && *v > 0.0)
                .ok_or_else(|| {
                    FitError::Configuration("UTH criterion requires a resolvable seat height".into())
                })?;
            Interval::closed(
                sh + m(Measure::TT) + UTH_LEG_CLEARANCE,
                m(Measure::SEH) + knee * COS_5 + UTH_ARM_COEFFICIENT * m(Measure::AL) - cfg.table_thickness,
            )
        }
        Criterion::TableLength => Interval::above(m(Measure::BKL)),
        Criterion::TableDepth => Interval::closed(
            0.5 * m(Measure::SEB) + TD_ARM_COEFFICIENT * m(Measure::AL) + cfg.clearance_margin,
            m(Measure::EFL),
        ),
    })
}

pub fn admissible_interval(
    c: Criterion,
    r: &AnthropometricRecord,
    spec: &FurnitureSpec,
    cfg: &FitConfig,
) -> Result<Interval, FitError> {
    interval_with_seat(c, r, Some(effective_seat_height(spec)), cfg)
}

/// Classifies a furniture value against an admissible interval.
pub fn classify_value(sided: Sided, interval: &Interval, value: DimensionValue) -> FitClass {
    let (a, b) = (value.lo(), value.hi());
    let class = if interval.intersects(a, b) {
        FitClass::Match
    } else if interval.is_below(b) || !interval.is_above(a) {
        // The second arm is reachable only for an empty interval that the
        // range spans on both sides; it is reported as high.
        FitClass::HighMismatch
    } else {
        FitClass::LowMismatch
    };
    match (sided, class) {
        (Sided::TwoSided, c) | (_, c @ FitClass::Match) => c,
        _ => FitClass::Mismatch,
    }
}

pub fn classify(
    c: Criterion,
    r: &AnthropometricRecord,
    spec: &FurnitureSpec,
    cfg: &FitConfig,
) -> Result<FitClass, FitError> {
    let interval = admissible_interval(c, r, spec, cfg)?;
    Ok(classify_value(c.sided(), &interval, spec.get(c.dimension())))
}
