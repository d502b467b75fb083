//! Exact rationals with archimedean and p-adic absolute values.

mod norm;
mod prime;
pub mod rational;

pub use norm::{norm, padic_valuation, tail_max_bound, NormValue, Prime, ValuationSpec};
pub use prime::is_prime;
pub use rational::{parse_exact, pow_rational, powi, to_exact_string, ExactRational};
