use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::funceq::EquationKind;
use crate::valued_field::{powi, to_exact_string, ExactRational};

/// Parameters of the bounded sawtooth and its scaled series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GajdaParams {
    pub kind: EquationKind,
    /// `k` for the nonic construction, `c` for the decic one.
    pub level: ExactRational,
}

/// `g(x)` (nonic) or `h(x)` (decic) at one point, with the number of active terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesValue {
    pub x: ExactRational,
    /// `#{m >= 0 : 3^(-m) x > 1}`
    pub active_terms: u32,
    pub value: ExactRational,
}

fn int(v: i64) -> ExactRational {
    ExactRational::from_integer(v.into())
}

impl GajdaParams {
    pub fn new(kind: EquationKind, level: ExactRational) -> Result<Self> {
        if !level.is_positive() {
            return Err(Error::domain(format!(
                "level constant must be positive, got {}",
                to_exact_string(&level)
            )));
        }
        Ok(GajdaParams { kind, level })
    }

    pub fn degree(&self) -> u32 {
        self.kind.degree()
    }

    pub fn scale(&self) -> ExactRational {
        int(self.kind.scale())
    }

    /// `S k / (S - 1)`, the supremum of the series.
    pub fn series_bound(&self) -> ExactRational {
        let s = self.scale();
        &s * &self.level / (&s - int(1))
    }

    /// The constant `(3S + 1) k / (S - 1)` multiplying `|x|^-e + |y|^-e` in the
    /// target inequality: `29525k/9841` for nonic, `44287c/14762` for decic.
    pub fn inequality_constant(&self) -> ExactRational {
        let s = self.scale();
        (int(3) * &s + int(1)) * &self.level / (&s - int(1))
    }

    /// Right-hand side `C (|x|^-e + |y|^-e)` of the target inequality.
    pub fn inequality_rhs(&self, x: &ExactRational, y: &ExactRational) -> ExactRational {
        let e = -(self.degree() as i64);
        self.inequality_constant() * (powi(&x.abs(), e) + powi(&y.abs(), e))
    }
}

/// `k / x^e` on `(1, ∞)`, `k` elsewhere.
pub fn phi(params: &GajdaParams, x: &ExactRational) -> Result<ExactRational> {
    if x.is_zero() {
        return Err(Error::domain("sawtooth evaluated at 0"));
    }
    if x > &ExactRational::one() {
        Ok(&params.level * powi(x, -(params.degree() as i64)))
    } else {
        Ok(params.level.clone())
    }
}

/// Number of `m >= 0` with `x > 3^m`.
pub fn active_terms(x: &ExactRational) -> u32 {
    let mut m = 0u32;
    let mut power = ExactRational::one();
    while x > &power {
        m += 1;
        power *= int(3);
    }
    m
}

/// Closed form of `Σ_m S^(-m) φ(3^(-m) x)`.
///
/// Each active term contributes exactly `k / x^e`; the inactive tail is the
/// geometric series `Σ_{m >= M} S^(-m) k = S k / ((S - 1) S^M)`.
pub fn series_eval(params: &GajdaParams, x: &ExactRational) -> Result<SeriesValue> {
    if x.is_zero() {
        return Err(Error::domain("series evaluated at 0"));
    }
    let m = active_terms(x);
    let active = int(m as i64) * &params.level * powi(x, -(params.degree() as i64));
    let tail = params.series_bound() * powi(&params.scale(), -(m as i64));
    Ok(SeriesValue {
        x: x.clone(),
        active_terms: m,
        value: active + tail,
    })
}
