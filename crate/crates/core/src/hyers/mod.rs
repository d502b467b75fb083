//! The direct method: vanishing conditions, approximants built from scaled
//! iterates, exact stability bounds, and audits of the closed-form bounds.

mod audit;
mod condition;
mod control;
mod engine;

pub use audit::{
    audit_suite, corollary_audit, standard_controls, AuditEntry, AuditVerdict, ExponentCase,
    FormulaReading,
};
pub use condition::{check_vanishing, ConditionReport, Direction};
pub use control::{ControlFamily, ControlFunction};
pub use engine::{
    ApproximantEstimate, PairVerdict, StabilityProblem, UniquenessCheck, DEFAULT_HORIZON,
};
