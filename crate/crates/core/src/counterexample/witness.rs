use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::series::{series_eval, GajdaParams};
use crate::error::{Error, Result};
use crate::valued_field::{powi, rational::floor, to_exact_string, ExactRational};

/// A point where the series beats `(α + 1) |x|^-e`, so no exact solution can
/// stay within `α |x|^-e` of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub alpha: ExactRational,
    pub m: u32,
    pub x: ExactRational,
    pub g_of_x: ExactRational,
    /// `m k / x^e`
    pub lower_envelope: ExactRational,
    /// `(α + 1) / x^e`
    pub threshold: ExactRational,
}

impl Witness {
    /// `m k > α + 1`
    pub fn level_exceeds(&self, params: &GajdaParams) -> bool {
        ExactRational::from_integer(self.m.into()) * &params.level
            > &self.alpha + ExactRational::from_integer(1.into())
    }

    /// `g(x) >= m k / x^e > (α + 1) / x^e`
    pub fn is_sound(&self, params: &GajdaParams) -> bool {
        self.level_exceeds(params)
            && self.g_of_x >= self.lower_envelope
            && self.lower_envelope > self.threshold
    }
}

/// `m = floor((α+1)/k) + 2` and `x = 2 * 3^(m-1)`, the midpoint of `(3^(m-1), 3^m)`,
/// where exactly `m` terms of the series are active.
pub fn nonstability_witness(params: &GajdaParams, alpha: &ExactRational) -> Result<Witness> {
    if !alpha.is_positive() {
        return Err(Error::domain(format!(
            "candidate bound must be positive, got {}",
            to_exact_string(alpha)
        )));
    }
    let one = ExactRational::from_integer(1.into());
    let m_big: BigInt = floor(&((alpha + &one) / &params.level)) + 2;
    let m = m_big
        .to_u32()
        .filter(|&m| m <= 100_000)
        .ok_or_else(|| Error::domain("candidate bound too large for an explicit witness"))?;
    let three = ExactRational::from_integer(3.into());
    let x = ExactRational::from_integer(2.into()) * powi(&three, m as i64 - 1);
    let series = series_eval(params, &x)?;
    debug_assert_eq!(series.active_terms, m);
    let inv_power = powi(&x, -(params.degree() as i64));
    let witness = Witness {
        alpha: alpha.clone(),
        m,
        lower_envelope: ExactRational::from_integer(m.into()) * &params.level * &inv_power,
        threshold: (alpha + &one) * &inv_power,
        g_of_x: series.value,
        x,
    };
    Ok(witness)
}
