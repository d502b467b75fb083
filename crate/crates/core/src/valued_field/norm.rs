use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::prime::is_prime;
use super::rational::{log_exact, powi, to_exact_string, ExactRational};
use crate::error::{Error, Result};

/// A prime below 2^64, checked at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p.to_string()))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

/// Which absolute value is in force on the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ValuationSpec {
    Archimedean,
    PAdic(Prime),
}

impl ValuationSpec {
    pub fn padic(p: u64) -> Result<Self> {
        Prime::new(p).map(ValuationSpec::PAdic)
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            ValuationSpec::Archimedean => None,
            ValuationSpec::PAdic(p) => Some(p.get()),
        }
    }

    pub fn is_non_archimedean(&self) -> bool {
        matches!(self, ValuationSpec::PAdic(_))
    }

    /// Short name: `real` or `p<prime>`.
    pub fn name(&self) -> String {
        match self {
            ValuationSpec::Archimedean => "real".to_string(),
            ValuationSpec::PAdic(p) => format!("p{}", p.get()),
        }
    }

    /// Parse `real`, `archimedean`, `p3`, `q3`, or `3`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "real" || t == "archimedean" || t == "r" {
            return Ok(ValuationSpec::Archimedean);
        }
        let digits = t.trim_start_matches(['p', 'q']);
        let p: u64 = digits.parse().map_err(|_| Error::Parse {
            what: "valuation",
            input: s.to_string(),
        })?;
        ValuationSpec::padic(p)
    }

    pub fn norm(&self, x: &ExactRational) -> NormValue {
        norm(x, *self)
    }
}

impl fmt::Display for ValuationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// A nonnegative exact real, produced by an absolute value or by arithmetic on
/// such values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormValue(ExactRational);

impl NormValue {
    pub fn new(value: ExactRational) -> Result<Self> {
        if value.is_negative() {
            Err(Error::domain(format!(
                "norm values are nonnegative, got {}",
                to_exact_string(&value)
            )))
        } else {
            Ok(NormValue(value))
        }
    }

    pub fn zero() -> Self {
        NormValue(ExactRational::zero())
    }

    pub fn one() -> Self {
        NormValue(ExactRational::one())
    }

    pub fn value(&self) -> &ExactRational {
        &self.0
    }

    pub fn into_value(self) -> ExactRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `p^e` when the value is an exact power of `p`.
    pub fn power_of(&self, p: u64) -> Option<i64> {
        log_exact(&self.0, p)
    }

    pub fn mul(&self, other: &NormValue) -> NormValue {
        NormValue(&self.0 * &other.0)
    }

    pub fn powi(&self, e: i64) -> Result<NormValue> {
        if self.is_zero() && e < 0 {
            return Err(Error::domain("negative power of a zero norm"));
        }
        Ok(NormValue(powi(&self.0, e)))
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_exact_string(&self.0))
    }
}

fn strip_factor(n: &mut BigInt, p: &BigInt) -> i64 {
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        *n = q;
        k += 1;
    }
}

/// The exponent `r` in `x = p^r * m/n` with `p` dividing neither `m` nor `n`.
pub fn padic_valuation(x: &ExactRational, p: Prime) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::domain("valuation of 0 is +infinity"));
    }
    let prime = BigInt::from(p.get());
    let mut num = x.numer().abs();
    let mut den = x.denom().clone();
    // Lowest terms: at most one of these is nonzero.
    Ok(strip_factor(&mut num, &prime) - strip_factor(&mut den, &prime))
}

pub fn norm(x: &ExactRational, v: ValuationSpec) -> NormValue {
    if x.is_zero() {
        return NormValue::zero();
    }
    match v {
        ValuationSpec::Archimedean => NormValue(x.abs()),
        ValuationSpec::PAdic(p) => {
            let r = padic_valuation(x, p).expect("nonzero");
            NormValue(powi(&ExactRational::from_integer(BigInt::from(p.get())), -r))
        }
    }
}

/// Largest consecutive-difference norm. In an ultrametric this dominates the
/// distance between the first and last element of the underlying sequence.
pub fn tail_max_bound(diff_norms: &[NormValue]) -> Result<NormValue> {
    diff_norms
        .iter()
        .max()
        .cloned()
        .ok_or_else(|| Error::domain("tail bound of an empty sequence"))
}
