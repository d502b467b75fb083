use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::valued_field::{norm, pow_rational, to_exact_string, ExactRational, ValuationSpec};

/// Upper-bound families for the difference operator.
///
/// Values are computed from the norms of the arguments under the caller's
/// valuation; exponents are rational and must produce rational powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ControlFunction {
    /// `ε`
    Constant { epsilon: ExactRational },
    /// `ε (‖x‖^q + ‖y‖^q)`
    SumPowers { epsilon: ExactRational, q: ExactRational },
    /// `ε ‖x‖^r ‖y‖^s`
    ProductPowers {
        epsilon: ExactRational,
        r: ExactRational,
        s: ExactRational,
    },
    /// `ε (‖x‖^(q/2) ‖y‖^(q/2) + ‖x‖^q + ‖y‖^q)`
    MixedProductSum { epsilon: ExactRational, q: ExactRational },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ControlFamily {
    Constant,
    SumPowers,
    ProductPowers,
    MixedProductSum,
}

impl ControlFamily {
    pub fn name(self) -> &'static str {
        match self {
            ControlFamily::Constant => "constant",
            ControlFamily::SumPowers => "sum-powers",
            ControlFamily::ProductPowers => "product-powers",
            ControlFamily::MixedProductSum => "mixed",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "constant" | "const" => Ok(ControlFamily::Constant),
            "sum-powers" | "sum" => Ok(ControlFamily::SumPowers),
            "product-powers" | "product" => Ok(ControlFamily::ProductPowers),
            "mixed" | "mixed-product-sum" => Ok(ControlFamily::MixedProductSum),
            _ => Err(Error::Parse {
                what: "control family",
                input: s.to_string(),
            }),
        }
    }
}

impl ControlFunction {
    pub fn constant(epsilon: ExactRational) -> Result<Self> {
        Self::Constant { epsilon }.validated()
    }

    pub fn sum_powers(epsilon: ExactRational, q: ExactRational) -> Result<Self> {
        Self::SumPowers { epsilon, q }.validated()
    }

    pub fn product_powers(epsilon: ExactRational, r: ExactRational, s: ExactRational) -> Result<Self> {
        Self::ProductPowers { epsilon, r, s }.validated()
    }

    pub fn mixed(epsilon: ExactRational, q: ExactRational) -> Result<Self> {
        Self::MixedProductSum { epsilon, q }.validated()
    }

    fn validated(self) -> Result<Self> {
        if self.epsilon().is_positive() {
            Ok(self)
        } else {
            Err(Error::domain(format!(
                "control coefficient must be positive, got {}",
                to_exact_string(self.epsilon())
            )))
        }
    }

    pub fn family(&self) -> ControlFamily {
        match self {
            ControlFunction::Constant { .. } => ControlFamily::Constant,
            ControlFunction::SumPowers { .. } => ControlFamily::SumPowers,
            ControlFunction::ProductPowers { .. } => ControlFamily::ProductPowers,
            ControlFunction::MixedProductSum { .. } => ControlFamily::MixedProductSum,
        }
    }

    pub fn epsilon(&self) -> &ExactRational {
        match self {
            ControlFunction::Constant { epsilon }
            | ControlFunction::SumPowers { epsilon, .. }
            | ControlFunction::ProductPowers { epsilon, .. }
            | ControlFunction::MixedProductSum { epsilon, .. } => epsilon,
        }
    }

    /// Same family and exponents with a different coefficient.
    pub fn with_epsilon(&self, epsilon: ExactRational) -> Result<Self> {
        let mut c = self.clone();
        match &mut c {
            ControlFunction::Constant { epsilon: e }
            | ControlFunction::SumPowers { epsilon: e, .. }
            | ControlFunction::ProductPowers { epsilon: e, .. }
            | ControlFunction::MixedProductSum { epsilon: e, .. } => *e = epsilon,
        }
        c.validated()
    }

    /// Homogeneity degree: `ζ(λx, λy) = ‖λ‖^degree ζ(x, y)`.
    pub fn degree(&self) -> ExactRational {
        match self {
            ControlFunction::Constant { .. } => ExactRational::zero(),
            ControlFunction::SumPowers { q, .. } | ControlFunction::MixedProductSum { q, .. } => {
                q.clone()
            }
            ControlFunction::ProductPowers { r, s, .. } => r + s,
        }
    }

    /// Exact `ζ(x, y)`.
    pub fn eval(&self, v: ValuationSpec, x: &ExactRational, y: &ExactRational) -> Result<ExactRational> {
        if x.is_zero() || y.is_zero() {
            return Err(Error::domain("control evaluated at a zero argument"));
        }
        let nx = norm(x, v).into_value();
        let ny = norm(y, v).into_value();
        let value = match self {
            ControlFunction::Constant { epsilon } => epsilon.clone(),
            ControlFunction::SumPowers { epsilon, q } => {
                epsilon * (pow_rational(&nx, q)? + pow_rational(&ny, q)?)
            }
            ControlFunction::ProductPowers { epsilon, r, s } => {
                epsilon * pow_rational(&nx, r)? * pow_rational(&ny, s)?
            }
            ControlFunction::MixedProductSum { epsilon, q } => {
                let half = q / ExactRational::from_integer(2.into());
                // ‖x‖^(q/2) ‖y‖^(q/2) = (‖x‖ ‖y‖)^(q/2), rational more often than each factor
                let cross = pow_rational(&(&nx * &ny), &half)?;
                epsilon * (cross + pow_rational(&nx, q)? + pow_rational(&ny, q)?)
            }
        };
        Ok(value)
    }
}

impl fmt::Display for ControlFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = to_exact_string;
        match self {
            ControlFunction::Constant { epsilon } => write!(f, "constant(eps={})", s(epsilon)),
            ControlFunction::SumPowers { epsilon, q } => {
                write!(f, "sum-powers(eps={}, q={})", s(epsilon), s(q))
            }
            ControlFunction::ProductPowers { epsilon, r, s: e } => {
                write!(f, "product-powers(eps={}, r={}, s={})", s(epsilon), s(r), s(e))
            }
            ControlFunction::MixedProductSum { epsilon, q } => {
                write!(f, "mixed(eps={}, q={})", s(epsilon), s(q))
            }
        }
    }
}
