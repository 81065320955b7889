//! Fit criteria, per-record classification and population mismatch reports.

mod criteria;
mod report;

pub use criteria::{
    admissible_interval, classify, classify_value, effective_seat_height, interval_with_seat, Criterion,
    FitClass, Interval, Sided, TD_ARM_COEFFICIENT, UTH_ARM_COEFFICIENT, UTH_LEG_CLEARANCE,
};
pub use report::{
    compare_reports, population_mismatch, population_mismatch_for, tally, ClassTally, DeltaRow, MismatchReport,
    MismatchRow, REPORT_CSV_HEADER,
};
