use num_traits::{Signed, Zero};

use super::interval::Interval;
use super::series::{series_eval, GajdaParams};
use crate::error::{Error, Result};
use crate::funceq::{
    delta_from_values, denominator_base, CoefficientPolicy, DeltaArith, EquationKind, PointValues,
};
use crate::valued_field::{powi, ExactRational};

/// Relative width below which an enclosure counts as conclusive.
pub const VERDICT_THRESHOLD_BITS: u32 = 40;

/// Rational bracket for a real quantity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedInterval {
    pub lower: ExactRational,
    /// `None` when no finite upper bound is available (denominator straddles 0).
    pub upper: Option<ExactRational>,
    pub conclusive: bool,
}

impl CertifiedInterval {
    pub fn contains(&self, q: &ExactRational) -> bool {
        &self.lower <= q && self.upper.as_ref().is_none_or(|u| q <= u)
    }

    /// `(upper - lower) / upper`, or `None` if unbounded.
    pub fn relative_width(&self) -> Option<ExactRational> {
        let upper = self.upper.as_ref()?;
        if upper.is_zero() {
            return Some(ExactRational::zero());
        }
        Some((upper - &self.lower) / upper)
    }
}

/// Signed enclosure of a difference operator together with its denominator.
#[derive(Debug, Clone)]
pub struct DeltaEnclosure {
    /// `None` when the denominator enclosure contains 0.
    pub signed: Option<Interval>,
    pub denominator: Interval,
}

impl DeltaEnclosure {
    /// Enclosure of `|Δ|`, flagged conclusive when its relative width is at most `2^-40`.
    pub fn magnitude(&self) -> CertifiedInterval {
        match &self.signed {
            None => CertifiedInterval {
                lower: ExactRational::zero(),
                upper: None,
                conclusive: false,
            },
            Some(iv) => {
                let abs = iv.abs();
                let mut out = CertifiedInterval {
                    lower: abs.lo().clone(),
                    upper: Some(abs.hi().clone()),
                    conclusive: false,
                };
                let threshold = powi(
                    &ExactRational::from_integer(2.into()),
                    -(VERDICT_THRESHOLD_BITS as i64),
                );
                out.conclusive = out.relative_width().is_some_and(|w| w <= threshold);
                out
            }
        }
    }
}

fn check_arguments(x: &ExactRational, y: &ExactRational) -> Result<()> {
    let two_x = x * ExactRational::from_integer(2.into());
    if x.is_zero() || y.is_zero() || (&two_x + y).is_zero() || (&two_x - y).is_zero() {
        return Err(Error::domain("arguments x, y, 2x+y, 2x-y must be nonzero"));
    }
    Ok(())
}

/// Interval evaluation of the difference operator for any rational-valued
/// mapping `f`. Fractional powers come from certified root enclosures.
pub fn enclose_delta(
    kind: EquationKind,
    policy: CoefficientPolicy,
    f: impl Fn(&ExactRational) -> Result<ExactRational>,
    x: &ExactRational,
    y: &ExactRational,
    bits: u32,
) -> Result<DeltaEnclosure> {
    check_arguments(x, y)?;
    let two_x = x * ExactRational::from_integer(2.into());
    let fx = f(x)?;
    let fy = f(y)?;
    if kind == EquationKind::Decic && (fx.is_negative() || fy.is_negative()) {
        return Err(Error::domain("fifth roots of negative decic values"));
    }
    let ri = kind.root_index();
    let values = PointValues {
        lhs: Interval::point(f(&(&two_x + y))? + f(&(&two_x - y))?),
        root_x: Interval::nth_root(&fx, ri, bits),
        root_y: Interval::nth_root(&fy, ri, bits),
        value_x: Interval::point(fx),
        value_y: Interval::point(fy),
    };
    let denominator = denominator_base(kind, &values.root_x, &values.root_y).powu(kind.degree());
    Ok(DeltaEnclosure {
        signed: delta_from_values(kind, policy, &values),
        denominator,
    })
}

/// `|Δ₁g(x, y)|` (nonic) or `|Δ₂h(x, y)|` (decic) for the scaled series.
pub fn delta_series(
    params: &GajdaParams,
    policy: CoefficientPolicy,
    x: &ExactRational,
    y: &ExactRational,
    bits: u32,
) -> Result<CertifiedInterval> {
    let g = |z: &ExactRational| series_eval(params, z).map(|s| s.value);
    Ok(enclose_delta(params.kind, policy, g, x, y, bits)?.magnitude())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictRow {
    pub index: usize,
    pub x: ExactRational,
    pub y: ExactRational,
    pub magnitude: Option<CertifiedInterval>,
    pub rhs: ExactRational,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl VerdictRow {
    pub fn conclusive(&self) -> bool {
        self.verdict != Verdict::Inconclusive
            && self.magnitude.as_ref().is_some_and(|m| m.conclusive)
    }
}

/// Compare `|Δ|` against the target right-hand side at every grid pair.
pub fn verify_bound_grid(
    params: &GajdaParams,
    policy: CoefficientPolicy,
    grid: &[(ExactRational, ExactRational)],
    bits: u32,
) -> Vec<VerdictRow> {
    grid.iter()
        .enumerate()
        .map(|(index, (x, y))| {
            let rhs = params.inequality_rhs(x, y);
            match delta_series(params, policy, x, y, bits) {
                Ok(m) => {
                    let verdict = if !m.conclusive && m.upper.is_none() {
                        Verdict::Inconclusive
                    } else if m.upper.as_ref().is_some_and(|u| u <= &rhs) {
                        Verdict::Holds
                    } else if m.lower > rhs {
                        Verdict::Violated
                    } else {
                        Verdict::Inconclusive
                    };
                    let note = m.upper.is_none().then(|| "denominator enclosure contains 0".to_string());
                    VerdictRow {
                        index,
                        x: x.clone(),
                        y: y.clone(),
                        magnitude: Some(m),
                        rhs,
                        verdict,
                        note,
                    }
                }
                Err(e) => VerdictRow {
                    index,
                    x: x.clone(),
                    y: y.clone(),
                    magnitude: None,
                    rhs,
                    verdict: Verdict::Inconclusive,
                    note: Some(e.to_string()),
                },
            }
        })
        .collect()
}
