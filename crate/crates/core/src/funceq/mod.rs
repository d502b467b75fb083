//! The reciprocal-nonic and reciprocal-decic difference operators.
//!
//! Mappings are carried through a base function `b` with `n(x) = b(x)^(-e)`,
//! which keeps every fractional power `n^(j/9)` and `d^(j/5)` rational.

mod delta;
mod kind;
mod mapping;

pub use delta::{
    collapse_diagonal, delta, delta_from_values, denominator_base, rhs, singularity, DeltaArith,
    PointValues, SingularityCause, SingularityReport,
};
pub use kind::{CoefficientPolicy, EquationKind};
pub use mapping::{FinitePerturbation, RootMapping};
