//! Percentile-anchored proposals, grid-search optimization and workstation
//! placement guidelines.

mod guidelines;
mod optimize;
mod proposal;

pub use guidelines::{workstation_guidelines, WorkstationGuidelines, GUIDELINES};
pub use optimize::{
    evaluate_proposal, optimize_dimensions, GridAxis, OptimizationResult, OptimizationSpec, Weights,
};
pub use proposal::{
    anchor_ruleset, propose_dimensions, round_to_step, type1_ruleset, type2_ruleset, Anchor, ProposalRule,
    RuleSource, Ruleset,
};
