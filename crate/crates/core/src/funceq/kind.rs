use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which functional equation is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquationKind {
    /// `n(2x+y) + n(2x-y) = 4 n(x) n(y) / (4 n(y)^(2/9) - n(x)^(2/9))^9 * [...]`
    Nonic,
    /// `d(2x+y) + d(2x-y) = 2 d(x) d(y) / (4 d(y)^(1/5) - d(x)^(1/5))^10 * [...]`
    Decic,
}

/// Which final bracket coefficient the nonic equation uses.
///
/// The typeset nonic equation ends its bracket with `+ n(x)^(8/9) n(y)^(1/9)`.
/// Expanding `(2x+y)^9 + (2x-y)^9` shows the coefficient has to be 9 for
/// `1/x^9` to be a solution. `Printed` keeps the typeset value for auditing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientPolicy {
    #[default]
    Corrected,
    Printed,
}

const NONIC_CORRECTED: [i64; 5] = [256, 2304, 2016, 336, 9];
const NONIC_PRINTED: [i64; 5] = [256, 2304, 2016, 336, 1];
const DECIC: [i64; 6] = [1024, 11520, 13440, 3360, 180, 1];

impl EquationKind {
    pub const ALL: [EquationKind; 2] = [EquationKind::Nonic, EquationKind::Decic];

    /// `e` in `n(x) = 1/x^e`.
    pub fn degree(self) -> u32 {
        match self {
            EquationKind::Nonic => 9,
            EquationKind::Decic => 10,
        }
    }

    /// Denominator of the fractional powers: `n^(j/9)` or `d^(j/5)`.
    pub fn root_index(self) -> u32 {
        match self {
            EquationKind::Nonic => 9,
            EquationKind::Decic => 5,
        }
    }

    /// `3^e`, the factor relating `n(3x)` and `n(x)` for the exact solution.
    pub fn scale(self) -> i64 {
        3i64.pow(self.degree())
    }

    pub fn front_factor(self) -> i64 {
        match self {
            EquationKind::Nonic => 4,
            EquationKind::Decic => 2,
        }
    }

    /// Bracket coefficients, ordered by increasing power of `n(x)`.
    pub fn coefficients(self, policy: CoefficientPolicy) -> &'static [i64] {
        match (self, policy) {
            (EquationKind::Nonic, CoefficientPolicy::Corrected) => &NONIC_CORRECTED,
            (EquationKind::Nonic, CoefficientPolicy::Printed) => &NONIC_PRINTED,
            (EquationKind::Decic, _) => &DECIC,
        }
    }

    pub fn coefficient_sum(self, policy: CoefficientPolicy) -> i64 {
        self.coefficients(policy).iter().sum()
    }

    pub fn name(self) -> &'static str {
        match self {
            EquationKind::Nonic => "nonic",
            EquationKind::Decic => "decic",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "nonic" | "9" => Ok(EquationKind::Nonic),
            "decic" | "10" => Ok(EquationKind::Decic),
            _ => Err(Error::Parse {
                what: "equation kind",
                input: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl CoefficientPolicy {
    pub fn name(self) -> &'static str {
        match self {
            CoefficientPolicy::Corrected => "corrected",
            CoefficientPolicy::Printed => "printed",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "corrected" => Ok(CoefficientPolicy::Corrected),
            "printed" => Ok(CoefficientPolicy::Printed),
            _ => Err(Error::Parse {
                what: "coefficient policy",
                input: s.to_string(),
            }),
        }
    }
}
