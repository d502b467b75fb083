use num_traits::Zero;

use super::condition::{check_vanishing, ConditionReport, Direction};
use super::control::ControlFunction;
use crate::error::{Error, Result};
use crate::funceq::{collapse_diagonal, delta, CoefficientPolicy, EquationKind, RootMapping};
use crate::valued_field::{norm, powi, tail_max_bound, ExactRational, NormValue, ValuationSpec};

/// Default number of explicit terms before the geometric tail takes over.
pub const DEFAULT_HORIZON: u32 = 8;

/// One stability setting: equation, control, field and iteration direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityProblem {
    pub kind: EquationKind,
    pub control: ControlFunction,
    pub valuation: ValuationSpec,
    pub direction: Direction,
}

/// Result of the direct-method iteration at one point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximantEstimate {
    pub x: ExactRational,
    pub iterations: u32,
    /// `S^(-pK) n(x / 3^(pK))`
    pub value: ExactRational,
    /// Supremum of the control-derived increment bounds over `l >= K`.
    pub tail_bound: NormValue,
    /// Largest actual increment norm observed over the horizon after `K`.
    pub observed_tail: NormValue,
    /// Every observed increment sits under its control bound.
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessCheck {
    pub distance: NormValue,
    pub tail_bound: NormValue,
    pub agrees: bool,
}

/// Whether `‖Δ(x, y)‖ <= ζ(x, y)` at one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairVerdict {
    Holds { delta_norm: NormValue, control: ExactRational },
    Violated { delta_norm: NormValue, control: ExactRational },
    Singular(String),
}

fn rational(v: i64) -> ExactRational {
    ExactRational::from_integer(v.into())
}

fn three_pow(e: i64) -> ExactRational {
    powi(&rational(3), e)
}

impl StabilityProblem {
    pub fn new(
        kind: EquationKind,
        control: ControlFunction,
        valuation: ValuationSpec,
        direction: Direction,
    ) -> Self {
        StabilityProblem {
            kind,
            control,
            valuation,
            direction,
        }
    }

    /// Pick whichever direction satisfies the vanishing condition.
    pub fn auto(kind: EquationKind, control: ControlFunction, valuation: ValuationSpec) -> Result<Self> {
        let mut last = None;
        for d in Direction::BOTH {
            let report = check_vanishing(&control, valuation, d, kind);
            if report.holds {
                return Ok(Self::new(kind, control, valuation, d));
            }
            last = Some(report);
        }
        let mut report = last.expect("two directions checked");
        report.diagnosis = format!("no direction satisfies the condition; {}", report.diagnosis);
        Err(Error::HypothesisFailed(Box::new(report)))
    }

    pub fn condition(&self) -> ConditionReport {
        check_vanishing(&self.control, self.valuation, self.direction, self.kind)
    }

    fn require(&self) -> Result<ConditionReport> {
        if !self.valuation.is_non_archimedean() {
            return Err(Error::Unsupported(
                "the direct method needs a non-archimedean valuation".to_string(),
            ));
        }
        let report = self.condition();
        if report.holds {
            Ok(report)
        } else {
            Err(Error::HypothesisFailed(Box::new(report)))
        }
    }

    fn check_mapping(&self, m: &RootMapping) -> Result<()> {
        if m.degree() != self.kind.degree() {
            return Err(Error::domain(format!(
                "mapping of degree {} used with the {} equation",
                m.degree(),
                self.kind
            )));
        }
        Ok(())
    }

    fn scale(&self) -> ExactRational {
        rational(self.kind.scale())
    }

    /// Orbit point `x / 3^(pl + (p+1)/2)`.
    pub fn orbit_point(&self, x: &ExactRational, l: u32) -> ExactRational {
        x * three_pow(-self.direction.argument_shift(l))
    }

    /// `‖1/S‖^(pl + (p-1)/2) ζ(z_l, z_l)`: the bound on the `l`-th increment.
    pub fn term(&self, x: &ExactRational, l: u32) -> Result<NormValue> {
        let z = self.orbit_point(x, l);
        let weight = norm(&self.scale().recip(), self.valuation).powi(self.direction.weight_exponent(l))?;
        let zeta = NormValue::new(self.control.eval(self.valuation, &z, &z)?)?;
        Ok(weight.mul(&zeta))
    }

    fn terms(&self, x: &ExactRational, from: u32, horizon: u32) -> Result<Vec<NormValue>> {
        (from..=from + horizon).map(|l| self.term(x, l)).collect()
    }

    /// `sup_{l >= 0}` of the increment bounds at `x`.
    ///
    /// Terms `0..=horizon` are computed exactly; beyond the horizon every term is
    /// the last one times a power of the decay rate, which is below one.
    pub fn stability_bound(&self, x: &ExactRational, horizon: u32) -> Result<NormValue> {
        self.require()?;
        if x.is_zero() {
            return Err(Error::domain("stability bound at 0"));
        }
        tail_max_bound(&self.terms(x, 0, horizon)?)
    }

    /// `S^(-pk) n(x / 3^(pk))`.
    pub fn iterate(&self, m: &RootMapping, x: &ExactRational, k: u32) -> Result<ExactRational> {
        let pk = self.direction.sign() * k as i64;
        Ok(powi(&self.scale(), -pk) * m.eval(&(x * three_pow(-pk)))?)
    }

    /// `n(w) - S^(-p) n(w / 3^p)`: the diagonal residual in iteration form.
    pub fn step_residual(&self, m: &RootMapping, w: &ExactRational) -> Result<ExactRational> {
        let p = self.direction.sign();
        Ok(m.eval(w)? - powi(&self.scale(), -p) * m.eval(&(w * three_pow(-p)))?)
    }

    /// `a_k - a_{k+1}` for the iterates `a_k`.
    pub fn increment(&self, m: &RootMapping, x: &ExactRational, k: u32) -> Result<ExactRational> {
        Ok(self.iterate(m, x, k)? - self.iterate(m, x, k + 1)?)
    }

    pub fn approximant(
        &self,
        m: &RootMapping,
        x: &ExactRational,
        iterations: u32,
        horizon: u32,
    ) -> Result<ApproximantEstimate> {
        self.require()?;
        self.check_mapping(m)?;
        if x.is_zero() {
            return Err(Error::domain("approximant at 0"));
        }
        let value = self.iterate(m, x, iterations)?;
        let bounds = self.terms(x, iterations, horizon)?;
        let tail_bound = tail_max_bound(&bounds)?;
        let mut observed = Vec::with_capacity(bounds.len());
        for l in iterations..=iterations + horizon {
            observed.push(norm(&self.increment(m, x, l)?, self.valuation));
        }
        let converged = observed.iter().zip(&bounds).all(|(o, b)| o <= b);
        Ok(ApproximantEstimate {
            x: x.clone(),
            iterations,
            value,
            tail_bound,
            observed_tail: tail_max_bound(&observed)?,
            converged,
        })
    }

    /// Two truncations agree within the certified tail of the shorter one.
    pub fn uniqueness_check(
        &self,
        m: &RootMapping,
        x: &ExactRational,
        first: u32,
        second: u32,
        horizon: u32,
    ) -> Result<UniquenessCheck> {
        if second <= first {
            return Err(Error::domain("uniqueness check needs K2 > K1"));
        }
        let a = self.approximant(m, x, first, horizon)?;
        let b = self.iterate(m, x, second)?;
        let distance = norm(&(&b - &a.value), self.valuation);
        let agrees = distance <= a.tail_bound;
        Ok(UniquenessCheck {
            distance,
            tail_bound: a.tail_bound,
            agrees,
        })
    }

    /// Smallest coefficient for this control family that dominates `‖Δ(z, z)‖`
    /// at every orbit point `z_l`, `l <= depth`, of every `x` in `points`.
    /// Falls back to the current coefficient when every residual vanishes.
    pub fn measure_envelope(
        &self,
        m: &RootMapping,
        points: &[ExactRational],
        depth: u32,
    ) -> Result<ControlFunction> {
        self.check_mapping(m)?;
        let unit = self.control.with_epsilon(rational(1))?;
        let mut best = ExactRational::zero();
        for x in points {
            for l in 0..=depth {
                let z = self.orbit_point(x, l);
                let residual = norm(&collapse_diagonal(self.kind, m, &z)?, self.valuation);
                if residual.is_zero() {
                    continue;
                }
                let ratio = residual.value() / unit.eval(self.valuation, &z, &z)?;
                if ratio > best {
                    best = ratio;
                }
            }
        }
        if best.is_zero() {
            Ok(self.control.clone())
        } else {
            unit.with_epsilon(best)
        }
    }

    /// Check the hypothesis `‖Δ(x, y)‖ <= ζ(x, y)` at each pair.
    pub fn hypothesis_verdicts(
        &self,
        m: &RootMapping,
        policy: CoefficientPolicy,
        pairs: &[(ExactRational, ExactRational)],
    ) -> Result<Vec<PairVerdict>> {
        self.check_mapping(m)?;
        pairs
            .iter()
            .map(|(x, y)| match delta(self.kind, policy, m, x, y) {
                Ok(d) => {
                    let delta_norm = norm(&d, self.valuation);
                    let control = self.control.eval(self.valuation, x, y)?;
                    Ok(if delta_norm.value() <= &control {
                        PairVerdict::Holds { delta_norm, control }
                    } else {
                        PairVerdict::Violated { delta_norm, control }
                    })
                }
                Err(Error::Singular(r)) => Ok(PairVerdict::Singular(r.to_string())),
                Err(e) => Err(e),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funceq::FinitePerturbation;
    use crate::valued_field::rational::{int, rat};

    fn q3() -> ValuationSpec {
        ValuationSpec::padic(3).unwrap()
    }

    fn nonic(control: ControlFunction, d: Direction) -> StabilityProblem {
        StabilityProblem::new(EquationKind::Nonic, control, q3(), d)
    }

    #[test]
    fn bound_examples() {
        let eps = int(5);
        let sum = ControlFunction::sum_powers(eps.clone(), int(-12)).unwrap();
        let problem = nonic(sum, Direction::Contract);
        // ‖x/3‖ = 3 so ζ = 2ε 3^-12
        for x in [int(1), int(2), rat(5, 7)] {
            assert_eq!(
                problem.stability_bound(&x, 6).unwrap().value(),
                &(int(2) * &eps * powi(&int(3), -12))
            );
        }

        let constant = ControlFunction::constant(eps.clone()).unwrap();
        let problem = nonic(constant, Direction::Expand);
        assert_eq!(
            problem.stability_bound(&rat(7, 9), 6).unwrap().value(),
            &(&eps * powi(&int(3), -9))
        );
    }

    #[test]
    fn refuses_without_hypothesis() {
        let sum = ControlFunction::sum_powers(int(1), int(-9)).unwrap();
        assert!(matches!(
            StabilityProblem::auto(EquationKind::Nonic, sum.clone(), q3()),
            Err(Error::HypothesisFailed(_))
        ));
        let p = nonic(sum, Direction::Contract);
        assert!(matches!(p.stability_bound(&int(1), 4), Err(Error::HypothesisFailed(_))));
        assert!(p.approximant(&RootMapping::exact(9), &int(1), 4, 4).is_err());
        assert!(p.uniqueness_check(&RootMapping::exact(9), &int(1), 4, 8, 4).is_err());

        let real = StabilityProblem::new(
            EquationKind::Nonic,
            ControlFunction::constant(int(1)).unwrap(),
            ValuationSpec::Archimedean,
            Direction::Expand,
        );
        assert!(matches!(real.stability_bound(&int(1), 4), Err(Error::Unsupported(_))));
    }

    #[test]
    fn exact_solution_iterates_are_constant() {
        let problem = nonic(
            ControlFunction::sum_powers(int(1), int(-12)).unwrap(),
            Direction::Contract,
        );
        let est = problem.approximant(&RootMapping::exact(9), &int(1), 4, 4).unwrap();
        assert_eq!(est.value, int(1));
        assert!(est.observed_tail.is_zero());
        assert!(est.converged);

        let decic = StabilityProblem::new(
            EquationKind::Decic,
            ControlFunction::constant(int(1)).unwrap(),
            q3(),
            Direction::Expand,
        );
        let est = decic.approximant(&RootMapping::exact(10), &int(2), 3, 4).unwrap();
        assert_eq!(est.value, rat(1, 1024));
    }

    #[test]
    fn perturbed_orbit_example() {
        let pert = FinitePerturbation::new().with(rat(1, 3), rat(1, 10)).unwrap();
        let m = RootMapping::perturbed(9, pert);
        let base = nonic(
            ControlFunction::sum_powers(int(1), int(-12)).unwrap(),
            Direction::Contract,
        );
        let control = base.measure_envelope(&m, &[int(1)], 12).unwrap();
        // increments of norm 1 at l = 0, 1 need 2ε 3^-24 >= 3^-9
        assert_eq!(control.epsilon(), &(powi(&int(3), 15) / int(2)));
        let problem = nonic(control, Direction::Contract);
        let est = problem.approximant(&m, &int(1), 6, 6).unwrap();
        let bound = problem.stability_bound(&int(1), 6).unwrap();
        assert_eq!(bound.value(), &int(27));
        let err = norm(&(m.eval(&int(1)).unwrap() - &est.value), q3());
        assert!(err <= bound.clone().max(est.tail_bound.clone()));
        assert!(est.converged);
        let u = problem.uniqueness_check(&m, &int(1), 4, 8, 6).unwrap();
        assert!(u.agrees);
    }

    #[test]
    fn hypothesis_pairs() {
        let pert = FinitePerturbation::new().with(int(1), rat(1, 2)).unwrap();
        let m = RootMapping::perturbed(9, pert);
        let problem = nonic(ControlFunction::constant(int(1)).unwrap(), Direction::Expand);
        let pairs = vec![(int(5), int(7)), (int(1), int(2)), (int(1), int(1))];
        let v = problem
            .hypothesis_verdicts(&m, CoefficientPolicy::Corrected, &pairs)
            .unwrap();
        assert!(matches!(v[0], PairVerdict::Holds { .. }));
        assert!(matches!(v[1], PairVerdict::Singular(_)));
        assert_eq!(v.len(), 3);
    }
}
