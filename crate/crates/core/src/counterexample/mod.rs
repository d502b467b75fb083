//! Non-stability at the critical exponent: a bounded sawtooth summed over
//! geometric rescalings, certified inequality checks, and explicit witnesses.

mod interval;
mod series;
mod verify;
mod witness;

pub use interval::{Interval, EXACT};
pub use series::{active_terms, phi, series_eval, GajdaParams, SeriesValue};
pub use verify::{
    delta_series, enclose_delta, verify_bound_grid, CertifiedInterval, DeltaEnclosure, Verdict,
    VerdictRow, VERDICT_THRESHOLD_BITS,
};
pub use witness::{nonstability_witness, Witness};
