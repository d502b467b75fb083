use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::valued_field::{powi, to_exact_string, ExactRational};

/// Finitely supported deviation `t` with `t(x) > -1`; zero off the support.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FinitePerturbation {
    deviations: BTreeMap<ExactRational, ExactRational>,
}

impl FinitePerturbation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, x: ExactRational, t: ExactRational) -> Result<Self> {
        self.insert(x, t)?;
        Ok(self)
    }

    pub fn insert(&mut self, x: ExactRational, t: ExactRational) -> Result<()> {
        if x.is_zero() {
            return Err(Error::domain("perturbation support must avoid 0"));
        }
        if t <= -ExactRational::one() {
            return Err(Error::domain(format!(
                "deviation at {} must exceed -1, got {}",
                to_exact_string(&x),
                to_exact_string(&t)
            )));
        }
        if t.is_zero() {
            self.deviations.remove(&x);
        } else {
            self.deviations.insert(x, t);
        }
        Ok(())
    }

    pub fn deviation(&self, x: &ExactRational) -> Option<&ExactRational> {
        self.deviations.get(x)
    }

    pub fn support(&self) -> impl Iterator<Item = (&ExactRational, &ExactRational)> {
        self.deviations.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.deviations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.deviations.len()
    }
}

/// A mapping `n(x) = b(x)^(-e)` stored through its base `b`.
///
/// The base is `b(x) = x / (scale * (1 + t(x)))`, so the exact solution is
/// `scale = 1` with an empty perturbation and every `n^(j/e)` stays rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootMapping {
    degree: u32,
    scale: ExactRational,
    perturbation: FinitePerturbation,
}

impl RootMapping {
    /// `n(x) = 1/x^e`.
    pub fn exact(degree: u32) -> Self {
        RootMapping {
            degree,
            scale: ExactRational::one(),
            perturbation: FinitePerturbation::new(),
        }
    }

    /// `n(x) = r^e / x^e`.
    pub fn scaled(degree: u32, r: ExactRational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::domain("scale must be nonzero"));
        }
        Ok(RootMapping {
            scale: r,
            ..RootMapping::exact(degree)
        })
    }

    pub fn perturbed(degree: u32, perturbation: FinitePerturbation) -> Self {
        RootMapping {
            perturbation,
            ..RootMapping::exact(degree)
        }
    }

    pub fn with_scale(mut self, r: ExactRational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::domain("scale must be nonzero"));
        }
        self.scale = r;
        Ok(self)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn scale(&self) -> &ExactRational {
        &self.scale
    }

    pub fn perturbation(&self) -> &FinitePerturbation {
        &self.perturbation
    }

    pub fn is_exact_solution(&self) -> bool {
        self.scale.is_one() && self.perturbation.is_empty()
    }

    /// `b(x)`; never zero for nonzero `x`.
    pub fn base(&self, x: &ExactRational) -> Result<ExactRational> {
        if x.is_zero() {
            return Err(Error::domain("mapping evaluated at 0"));
        }
        let mut denom = self.scale.clone();
        if let Some(t) = self.perturbation.deviation(x) {
            denom *= ExactRational::one() + t;
        }
        Ok(x / denom)
    }

    /// `n(x) = b(x)^(-e)`.
    pub fn eval(&self, x: &ExactRational) -> Result<ExactRational> {
        Ok(powi(&self.base(x)?, -(self.degree as i64)))
    }

    /// `n(x)^(j/e')` where `e'` is the root index of the equation: `b(x)^(-j*e/e')`.
    pub fn root_power(&self, x: &ExactRational, root_index: u32, j: u32) -> Result<ExactRational> {
        debug_assert_eq!(self.degree % root_index, 0);
        let step = (self.degree / root_index) as i64;
        Ok(powi(&self.base(x)?, -(j as i64) * step))
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::valued_field::rational::{int, rat};

    #[test]
    fn evaluation() {
        assert_eq!(RootMapping::exact(9).eval(&int(2)).unwrap(), rat(1, 512));
        assert_eq!(RootMapping::exact(10).eval(&int(3)).unwrap(), rat(1, 59049));
        let pert = FinitePerturbation::new().with(int(1), rat(1, 10)).unwrap();
        let m = RootMapping::perturbed(9, pert);
        assert_eq!(
            m.eval(&int(1)).unwrap(),
            crate::valued_field::parse_exact("2357947691/1000000000").unwrap()
        );
        assert_eq!(m.eval(&int(2)).unwrap(), rat(1, 512));
        assert!(m.eval(&int(0)).is_err());
    }

    #[test]
    fn rejects_bad_deviations() {
        assert!(FinitePerturbation::new().with(int(1), int(-1)).is_err());
        assert!(FinitePerturbation::new().with(int(0), int(1)).is_err());
        assert!(FinitePerturbation::new().with(int(2), int(0)).unwrap().is_empty());
        assert!(RootMapping::scaled(9, int(0)).is_err());
    }

    #[test]
    fn root_powers_are_exact() {
        let m = RootMapping::exact(10);
        // d(2)^(3/5) = 2^(-6)
        assert_eq!(m.root_power(&int(2), 5, 3).unwrap(), rat(1, 64));
        let n = RootMapping::exact(9);
        assert_eq!(n.root_power(&int(2), 9, 2).unwrap(), rat(1, 4));
    }
}
