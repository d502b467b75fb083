//! Exact verification toolkit for the reciprocal-nonic and reciprocal-decic
//! functional equations.
//!
//! * [`valued_field`]: exact rationals with archimedean and p-adic norms.
//! * [`funceq`]: the difference operators, evaluated through base functions.
//! * [`hyers`]: the direct method over non-archimedean fields.
//! * [`counterexample`]: non-stability constructions at the critical exponent.

pub mod counterexample;
pub mod error;
pub mod funceq;
pub mod hyers;
pub mod sampling;
pub mod valued_field;

pub use error::{Error, Result};
pub use funceq::{CoefficientPolicy, EquationKind, FinitePerturbation, RootMapping};
pub use hyers::{ControlFunction, Direction, StabilityProblem};
pub use valued_field::{norm, ExactRational, NormValue, ValuationSpec};
