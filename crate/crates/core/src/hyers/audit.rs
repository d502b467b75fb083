//! Compare the closed-form stability bounds stated for each control family
//! against the supremum the direct method actually yields.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::condition::Direction;
use super::control::{ControlFamily, ControlFunction};
use super::engine::StabilityProblem;
use crate::error::{Error, Result};
use crate::funceq::EquationKind;
use crate::valued_field::{norm, pow_rational, ExactRational, ValuationSpec};

/// Where the control's homogeneity degree sits relative to `-e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentCase {
    Constant,
    /// degree > -e
    Above,
    /// degree < -e
    Below,
    /// degree = -e, excluded from the stated results
    Critical,
}

impl ExponentCase {
    pub fn name(self) -> &'static str {
        match self {
            ExponentCase::Constant => "constant",
            ExponentCase::Above => "above-critical",
            ExponentCase::Below => "below-critical",
            ExponentCase::Critical => "critical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuditVerdict {
    Equal,
    StatedLarger,
    StatedSmaller,
    HypothesisVacuous,
}

impl AuditVerdict {
    pub fn name(self) -> &'static str {
        match self {
            AuditVerdict::Equal => "equal",
            AuditVerdict::StatedLarger => "stated-larger",
            AuditVerdict::StatedSmaller => "stated-smaller",
            AuditVerdict::HypothesisVacuous => "hypothesis-vacuous",
        }
    }
}

/// One way of reading a stated bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaReading {
    pub label: &'static str,
    pub formula: String,
    /// `None` when the reading refers to an undefined symbol.
    pub value: Option<ExactRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditEntry {
    /// Stable identifier, e.g. `nonic/sum-powers/above-critical`.
    pub id: String,
    /// Human description of which stated result is audited.
    pub location: String,
    pub kind: EquationKind,
    pub control: ControlFunction,
    pub valuation: ValuationSpec,
    pub x: ExactRational,
    pub case: ExponentCase,
    pub direction: Option<Direction>,
    /// The stated bound with obvious symbol typos repaired and norms taken in the field.
    pub paper_formula_value: Option<ExactRational>,
    pub readings: Vec<FormulaReading>,
    pub computed_supremum: Option<ExactRational>,
    pub verdict: AuditVerdict,
    pub tight: bool,
    /// The computed supremum matches the formula stated for the opposite case.
    pub case_swap: bool,
    pub notes: Vec<String>,
}

struct Norms {
    two: ExactRational,
    three: ExactRational,
    x: ExactRational,
}

impl Norms {
    fn pow3(&self, e: &ExactRational) -> Result<ExactRational> {
        pow_rational(&self.three, e)
    }
    fn powx(&self, e: &ExactRational) -> Result<ExactRational> {
        pow_rational(&self.x, e)
    }
}

fn int(v: i64) -> ExactRational {
    ExactRational::from_integer(v.into())
}

fn case_of(kind: EquationKind, control: &ControlFunction) -> ExponentCase {
    if control.family() == ControlFamily::Constant {
        return ExponentCase::Constant;
    }
    let critical = -int(kind.degree() as i64);
    match control.degree().cmp(&critical) {
        Ordering::Greater => ExponentCase::Above,
        Ordering::Less => ExponentCase::Below,
        Ordering::Equal => ExponentCase::Critical,
    }
}

/// Formulas as `(label, text, value)` for the stated case plus, for power
/// families, the opposite case.
struct StatedBounds {
    literal: FormulaReading,
    normalized: FormulaReading,
    real_coefficient: FormulaReading,
    opposite_real: Option<FormulaReading>,
    notes: Vec<String>,
}

fn stated_bounds(
    kind: EquationKind,
    control: &ControlFunction,
    case: ExponentCase,
    n: &Norms,
) -> Result<StatedBounds> {
    let e = int(kind.degree() as i64);
    let eps = control.epsilon().clone();
    let q = control.degree();
    let sym = match kind {
        EquationKind::Nonic => ("ε", "q"),
        EquationKind::Decic => ("θ", "α"),
    };
    let reading = |label, formula: String, value| FormulaReading {
        label,
        formula,
        value: Some(value),
    };
    let mut notes = Vec::new();

    // above: lead * eps * |3|^-q * |x|^q ; below: lead * eps * |3|^e * |x|^q
    let above = |lead: &ExactRational| -> Result<ExactRational> {
        Ok(lead * &eps * n.pow3(&-q.clone())? * n.powx(&q)?)
    };
    let below = |lead: &ExactRational| -> Result<ExactRational> {
        Ok(lead * &eps * n.pow3(&e)? * n.powx(&q)?)
    };

    let (lead_field, lead_real, lead_name, real_name) = match control.family() {
        ControlFamily::Constant => (int(1), int(1), "", ""),
        ControlFamily::SumPowers => (n.two.clone(), int(2), "|2|", "2"),
        ControlFamily::ProductPowers => (int(1), int(1), "", ""),
        ControlFamily::MixedProductSum => (n.three.clone(), int(3), "|3|", "3"),
    };
    let (eps_s, q_s) = sym;
    let above_text = |lead: &str| format!("{lead}{eps_s}/|3|^{q_s} |x|^{q_s}");
    let below_text = |lead: &str| format!("{lead}{eps_s}|3|^{} |x|^{q_s}", kind.degree());

    if case == ExponentCase::Constant {
        let r = reading("normalized", eps_s.to_string(), eps.clone());
        return Ok(StatedBounds {
            literal: FormulaReading { label: "literal", ..r.clone() },
            real_coefficient: FormulaReading { label: "real-coefficient", ..r.clone() },
            normalized: r,
            opposite_real: None,
            notes,
        });
    }

    let (normalized, real, opposite) = match case {
        ExponentCase::Above | ExponentCase::Critical => (
            reading("normalized", above_text(lead_name), above(&lead_field)?),
            reading("real-coefficient", above_text(real_name), above(&lead_real)?),
            reading("opposite-case-real-coefficient", below_text(real_name), below(&lead_real)?),
        ),
        ExponentCase::Below => (
            reading("normalized", below_text(lead_name), below(&lead_field)?),
            reading("real-coefficient", below_text(real_name), below(&lead_real)?),
            reading("opposite-case-real-coefficient", above_text(real_name), above(&lead_real)?),
        ),
        ExponentCase::Constant => unreachable!(),
    };

    // Symbol typos in the stated below-critical bounds.
    let literal = match (kind, control.family(), case) {
        (EquationKind::Decic, ControlFamily::SumPowers, ExponentCase::Below) => {
            notes.push("stated bound uses the exponent α as the leading coefficient; normalized reading uses θ".into());
            let value = &n.two * &q * n.pow3(&e)? * n.powx(&q)?;
            FormulaReading {
                label: "literal",
                formula: "|2|α|3|^10 |x|^α".into(),
                value: Some(value),
            }
        }
        (EquationKind::Decic, ControlFamily::ProductPowers, ExponentCase::Below) => {
            notes.push("stated bound uses an undefined coefficient λ; normalized reading uses θ".into());
            FormulaReading {
                label: "literal",
                formula: "λ|3|^10 |x|^α".into(),
                value: None,
            }
        }
        (EquationKind::Nonic, ControlFamily::MixedProductSum, ExponentCase::Below) => {
            notes.push("stated bound raises |x| to an undefined exponent a; normalized reading uses q".into());
            FormulaReading {
                label: "literal",
                formula: "|3|ε|3|^9 |x|^a".into(),
                value: None,
            }
        }
        _ => FormulaReading {
            label: "literal",
            ..normalized.clone()
        },
    };
    if control.family() == ControlFamily::MixedProductSum {
        notes.push("leading |3| read both as the field norm and as the real scalar 3".into());
    }
    if control.family() == ControlFamily::SumPowers {
        notes.push("leading |2| read both as the field norm and as the real scalar 2".into());
    }
    Ok(StatedBounds {
        literal,
        normalized,
        real_coefficient: real,
        opposite_real: Some(opposite),
        notes,
    })
}

fn location(kind: EquationKind, family: ControlFamily) -> String {
    let what = match family {
        ControlFamily::Constant => "constant control",
        ControlFamily::SumPowers => "sum-of-powers control",
        ControlFamily::ProductPowers => "product-of-powers control",
        ControlFamily::MixedProductSum => "mixed product-sum control",
    };
    format!("{kind} stability bound, {what}")
}

/// Evaluate the stated bound and the computed supremum at `x`.
pub fn corollary_audit(
    kind: EquationKind,
    control: &ControlFunction,
    v: ValuationSpec,
    x: &ExactRational,
    horizon: u32,
) -> Result<AuditEntry> {
    if !v.is_non_archimedean() {
        return Err(Error::Unsupported("audits run over non-archimedean fields".into()));
    }
    if x.is_zero() {
        return Err(Error::domain("audit at 0"));
    }
    let norms = Norms {
        two: norm(&int(2), v).into_value(),
        three: norm(&int(3), v).into_value(),
        x: norm(x, v).into_value(),
    };
    let case = case_of(kind, control);
    let stated = stated_bounds(kind, control, case, &norms)?;

    let (direction, computed) = match StabilityProblem::auto(kind, control.clone(), v) {
        Ok(problem) => (
            Some(problem.direction),
            Some(problem.stability_bound(x, horizon)?.into_value()),
        ),
        Err(Error::HypothesisFailed(_)) => (None, None),
        Err(e) => return Err(e),
    };

    let mut notes = stated.notes;
    let paper_formula_value = if case == ExponentCase::Critical {
        notes.push("exponent equals the excluded critical value; no bound is stated".into());
        None
    } else {
        stated.normalized.value.clone()
    };

    let verdict = match (&paper_formula_value, &computed) {
        (_, None) | (None, _) => AuditVerdict::HypothesisVacuous,
        (Some(stated), Some(sup)) => match stated.cmp(sup) {
            Ordering::Equal => AuditVerdict::Equal,
            Ordering::Greater => AuditVerdict::StatedLarger,
            Ordering::Less => AuditVerdict::StatedSmaller,
        },
    };
    let case_swap = match (&computed, &stated.opposite_real) {
        (Some(sup), Some(opp)) => {
            opp.value.as_ref() == Some(sup) && stated.normalized.value.as_ref() != Some(sup)
        }
        _ => false,
    };
    if case_swap {
        notes.push("computed supremum equals the bound stated for the opposite exponent case".into());
    }
    if let Some(d) = direction {
        if case == ExponentCase::Constant && d == Direction::Expand {
            notes.push("expanding direction as stated for the constant control".into());
        }
    }
    if norms.two < ExactRational::one() && norms.three == ExactRational::one() {
        notes.push("‖2‖ < 1 forces ‖3‖ = 1: power controls cannot satisfy the vanishing condition".into());
    }

    let mut readings = vec![stated.literal, stated.normalized, stated.real_coefficient];
    readings.extend(stated.opposite_real);
    let family = control.family();
    Ok(AuditEntry {
        id: format!("{kind}/{}/{}", family.name(), case.name()),
        location: location(kind, family),
        kind,
        control: control.clone(),
        valuation: v,
        x: x.clone(),
        case,
        direction,
        paper_formula_value,
        readings,
        computed_supremum: computed,
        tight: verdict == AuditVerdict::Equal,
        verdict,
        case_swap,
        notes,
    })
}

/// The controls audited by default for one equation: the constant control
/// and each power family on both sides of the critical exponent.
pub fn standard_controls(kind: EquationKind, epsilon: &ExactRational) -> Vec<ControlFunction> {
    let eps = epsilon.clone();
    let below = -(kind.degree() as i64) - 3;
    let half = below / 2;
    vec![
        ControlFunction::constant(eps.clone()),
        ControlFunction::sum_powers(eps.clone(), int(2)),
        ControlFunction::sum_powers(eps.clone(), int(below)),
        ControlFunction::product_powers(eps.clone(), int(1), int(1)),
        ControlFunction::product_powers(eps.clone(), int(half), int(below - half)),
        ControlFunction::mixed(eps.clone(), int(2)),
        ControlFunction::mixed(eps, int(below)),
    ]
    .into_iter()
    .map(|c| c.expect("positive coefficient"))
    .collect()
}

pub fn audit_suite(
    kinds: &[EquationKind],
    v: ValuationSpec,
    points: &[ExactRational],
    epsilon: &ExactRational,
    horizon: u32,
) -> Result<Vec<AuditEntry>> {
    let mut out = Vec::new();
    for &kind in kinds {
        for control in standard_controls(kind, epsilon) {
            for x in points {
                out.push(corollary_audit(kind, &control, v, x, horizon)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valued_field::powi;
    use crate::valued_field::rational::rat;

    fn q3() -> ValuationSpec {
        ValuationSpec::padic(3).unwrap()
    }

    #[test]
    fn constant_control_is_valid_not_tight() {
        let eps = rat(3, 2);
        for kind in EquationKind::ALL {
            let c = ControlFunction::constant(eps.clone()).unwrap();
            let a = corollary_audit(kind, &c, q3(), &int(1), 6).unwrap();
            assert_eq!(a.paper_formula_value, Some(eps.clone()));
            assert_eq!(
                a.computed_supremum,
                Some(&eps * powi(&int(3), -(kind.degree() as i64)))
            );
            assert_eq!(a.verdict, AuditVerdict::StatedLarger);
            assert!(!a.tight && !a.case_swap);
            assert_eq!(a.direction, Some(Direction::Expand));
        }
    }

    #[test]
    fn sum_powers_case_swap() {
        let eps = int(1);
        let c = ControlFunction::sum_powers(eps.clone(), int(2)).unwrap();
        let a = corollary_audit(EquationKind::Nonic, &c, q3(), &int(1), 6).unwrap();
        assert_eq!(a.paper_formula_value, Some(int(9)));
        assert_eq!(a.computed_supremum, Some(int(2) * powi(&int(3), -9)));
        assert_eq!(a.direction, Some(Direction::Expand));
        assert!(a.case_swap);
        assert_eq!(a.verdict, AuditVerdict::StatedLarger);

        let c = ControlFunction::sum_powers(eps, int(-12)).unwrap();
        let a = corollary_audit(EquationKind::Nonic, &c, q3(), &int(1), 6).unwrap();
        assert_eq!(a.direction, Some(Direction::Contract));
        assert_eq!(a.computed_supremum, Some(int(2) * powi(&int(3), -12)));
        assert_eq!(a.paper_formula_value, Some(powi(&int(3), -9)));
        assert!(a.case_swap);
    }

    #[test]
    fn critical_exponent_is_vacuous() {
        let c = ControlFunction::sum_powers(int(1), int(-10)).unwrap();
        let a = corollary_audit(EquationKind::Decic, &c, q3(), &int(1), 6).unwrap();
        assert_eq!(a.case, ExponentCase::Critical);
        assert_eq!(a.verdict, AuditVerdict::HypothesisVacuous);
        assert_eq!(a.computed_supremum, None);
    }

    #[test]
    fn two_adic_field_is_vacuous() {
        let q2 = ValuationSpec::padic(2).unwrap();
        let c = ControlFunction::sum_powers(int(1), int(2)).unwrap();
        let a = corollary_audit(EquationKind::Nonic, &c, q2, &int(1), 6).unwrap();
        assert_eq!(a.verdict, AuditVerdict::HypothesisVacuous);
        assert!(a.notes.iter().any(|n| n.contains("‖2‖ < 1")));
    }

    #[test]
    fn typo_readings() {
        let c = ControlFunction::sum_powers(int(1), int(-13)).unwrap();
        let a = corollary_audit(EquationKind::Decic, &c, q3(), &int(1), 6).unwrap();
        let literal = &a.readings[0];
        assert_eq!(literal.label, "literal");
        assert!(literal.value.as_ref().unwrap() < &int(0));

        let c = ControlFunction::product_powers(int(1), int(-6), int(-7)).unwrap();
        let a = corollary_audit(EquationKind::Decic, &c, q3(), &int(1), 6).unwrap();
        assert_eq!(a.readings[0].value, None);
        assert!(a.case_swap);

        let c = ControlFunction::mixed(int(1), int(-12)).unwrap();
        let a = corollary_audit(EquationKind::Nonic, &c, q3(), &int(1), 6).unwrap();
        assert_eq!(a.readings[0].value, None);
        assert!(a.case_swap);
        // 3ε|3|^12 |x|^-12 at ‖x‖ = 1
        assert_eq!(a.computed_supremum, Some(int(3) * powi(&int(3), -12)));
    }

    #[test]
    fn archimedean_is_refused() {
        let c = ControlFunction::constant(int(1)).unwrap();
        assert!(corollary_audit(EquationKind::Nonic, &c, ValuationSpec::Archimedean, &int(1), 4).is_err());
    }

    #[test]
    fn suite_covers_every_family() {
        let entries = audit_suite(&EquationKind::ALL, q3(), &[int(1)], &int(1), 6).unwrap();
        assert_eq!(entries.len(), 14);
        assert!(entries.iter().all(|e| e.verdict != AuditVerdict::StatedSmaller));
        assert!(entries.iter().filter(|e| e.case_swap).count() == 12);
    }
}
