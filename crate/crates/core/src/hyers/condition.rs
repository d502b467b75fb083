use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use super::control::ControlFunction;
use crate::funceq::EquationKind;
use crate::valued_field::{powi, to_exact_string, ExactRational, ValuationSpec};

/// Direction of the iteration: contract arguments toward 0 (`p = 1`) or
/// expand them (`p = -1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Contract,
    Expand,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Contract, Direction::Expand];

    pub fn sign(self) -> i64 {
        match self {
            Direction::Contract => 1,
            Direction::Expand => -1,
        }
    }

    /// `pl + (p+1)/2`: the orbit point at step `l` is `x / 3^argument_shift(l)`.
    pub fn argument_shift(self, l: u32) -> i64 {
        let p = self.sign();
        p * l as i64 + (p + 1) / 2
    }

    /// `pl + (p-1)/2`: exponent of `‖1/S‖` multiplying the control at step `l`.
    pub fn weight_exponent(self, l: u32) -> i64 {
        let p = self.sign();
        p * l as i64 + (p - 1) / 2
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "+1" | "1" | "contract" => Some(Direction::Contract),
            "-1" | "expand" => Some(Direction::Expand),
            _ => None,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Contract => "+1",
            Direction::Expand => "-1",
        })
    }
}

/// Outcome of the vanishing test `‖1/S‖^(pk) ζ(x/3^(pk+(p+1)/2), ·) → 0`.
///
/// For homogeneous controls consecutive terms differ by the constant factor
/// `rate = 3^rate_exponent`, so the limit vanishes exactly when that factor is
/// below one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub kind: EquationKind,
    pub valuation: ValuationSpec,
    pub direction: Direction,
    pub holds: bool,
    pub rate_exponent: ExactRational,
    /// `None` when `3^rate_exponent` is irrational.
    pub rate: Option<ExactRational>,
    pub diagnosis: String,
}

/// Exponent `s` with `‖3‖ = 3^s`.
fn three_norm_exponent(v: ValuationSpec) -> i64 {
    match v {
        ValuationSpec::Archimedean => 1,
        ValuationSpec::PAdic(p) if p.get() == 3 => -1,
        ValuationSpec::PAdic(_) => 0,
    }
}

pub fn check_vanishing(
    control: &ControlFunction,
    v: ValuationSpec,
    direction: Direction,
    kind: EquationKind,
) -> ConditionReport {
    let e = ExactRational::from_integer(kind.degree().into());
    let p = ExactRational::from_integer(direction.sign().into());
    let s = ExactRational::from_integer(three_norm_exponent(v).into());
    // ρ = ‖1/S‖^p ‖3‖^(-p δ) = ‖3‖^(-p (e + δ))
    let rate_exponent = -(s * p * (e + control.degree()));
    let rate = rate_exponent
        .to_integer()
        .to_i64()
        .filter(|_| rate_exponent.is_integer())
        .map(|r| powi(&ExactRational::from_integer(3.into()), r));
    let holds = rate_exponent.is_negative();

    let mut diagnosis = if holds {
        format!(
            "terms decay by 3^({}) per step",
            to_exact_string(&rate_exponent)
        )
    } else if rate_exponent.is_zero() {
        "terms are constant (rate 1); the limit does not vanish".to_string()
    } else {
        format!(
            "terms grow by 3^({}) per step",
            to_exact_string(&rate_exponent)
        )
    };
    match v {
        ValuationSpec::PAdic(prime) if prime.get() != 3 => {
            diagnosis.push_str(&format!(
                "; ‖3‖ = 1 in {v}, so ‖1/{}‖ = 1 and power controls are invariant under x -> x/3",
                kind.scale()
            ));
            if prime.get() == 2 {
                diagnosis.push_str("; ‖2‖ < 1 forces ‖3‖ = ‖1 + 2‖ = 1");
            }
        }
        ValuationSpec::Archimedean => {
            diagnosis.push_str("; archimedean field: the ultrametric bound does not apply");
        }
        _ => {}
    }
    ConditionReport {
        kind,
        valuation: v,
        direction,
        holds,
        rate_exponent,
        rate,
        diagnosis,
    }
}
