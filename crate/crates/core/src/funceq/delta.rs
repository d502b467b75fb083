use std::fmt;

use num_traits::Zero;

use super::kind::{CoefficientPolicy, EquationKind};
use super::mapping::RootMapping;
use crate::error::{Error, Result};
use crate::valued_field::{to_exact_string, ExactRational};

/// Arithmetic needed to evaluate a difference operator. Implemented for exact
/// rationals and for certified intervals.
pub trait DeltaArith: Clone {
    fn from_int(v: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// `None` when the divisor is (or may be) zero.
    fn div(&self, other: &Self) -> Option<Self>;

    fn powu(&self, e: u32) -> Self {
        let mut acc = Self::from_int(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl DeltaArith for ExactRational {
    fn from_int(v: i64) -> Self {
        ExactRational::from_integer(v.into())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Option<Self> {
        (!other.is_zero()).then(|| self / other)
    }
    fn powu(&self, e: u32) -> Self {
        num_traits::pow::pow(self.clone(), e as usize)
    }
}

/// Inputs to the right-hand side at one point `(x, y)`.
///
/// `root_x = n(x)^(1/root_index)`, so every bracket term is `root_x^i * root_y^j`.
pub struct PointValues<T> {
    pub lhs: T,
    pub value_x: T,
    pub value_y: T,
    pub root_x: T,
    pub root_y: T,
}

/// The denominator `4 n(y)^(2/9) - n(x)^(2/9)` (nonic) or `4 d(y)^(1/5) - d(x)^(1/5)`
/// (decic) before raising to the e-th power.
pub fn denominator_base<T: DeltaArith>(kind: EquationKind, root_x: &T, root_y: &T) -> T {
    let four = T::from_int(4);
    match kind {
        EquationKind::Nonic => four.mul(&root_y.powu(2)).sub(&root_x.powu(2)),
        EquationKind::Decic => four.mul(root_y).sub(root_x),
    }
}

/// Right-hand side of the equation.
pub fn rhs<T: DeltaArith>(
    kind: EquationKind,
    policy: CoefficientPolicy,
    v: &PointValues<T>,
) -> Option<T> {
    let coeffs = kind.coefficients(policy);
    // Nonic terms step n(x)^(2/9) up and n(y)^(2/9) down; decic steps by 1/5.
    let (step, top) = match kind {
        EquationKind::Nonic => (2u32, 9u32),
        EquationKind::Decic => (1u32, 5u32),
    };
    let mut bracket = T::from_int(0);
    for (j, &c) in coeffs.iter().enumerate() {
        let i = step * j as u32;
        let term = v.root_x.powu(i).mul(&v.root_y.powu(top - i));
        bracket = bracket.add(&T::from_int(c).mul(&term));
    }
    let denom = denominator_base(kind, &v.root_x, &v.root_y).powu(kind.degree());
    let front = T::from_int(kind.front_factor())
        .mul(&v.value_x)
        .mul(&v.value_y);
    front.mul(&bracket).div(&denom)
}

/// Left-hand side minus right-hand side.
pub fn delta_from_values<T: DeltaArith>(
    kind: EquationKind,
    policy: CoefficientPolicy,
    v: &PointValues<T>,
) -> Option<T> {
    rhs(kind, policy, v).map(|r| v.lhs.sub(&r))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityCause {
    ZeroArgument,
    SumVanishes,
    DifferenceVanishes,
    DenominatorVanishes,
}

impl SingularityCause {
    pub fn describe(self) -> &'static str {
        match self {
            SingularityCause::ZeroArgument => "zero argument",
            SingularityCause::SumVanishes => "2x+y = 0",
            SingularityCause::DifferenceVanishes => "2x-y = 0",
            SingularityCause::DenominatorVanishes => "denominator vanishes",
        }
    }
}

/// Where and why a difference operator cannot be evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityReport {
    pub x: ExactRational,
    pub y: ExactRational,
    pub cause: SingularityCause,
}

impl fmt::Display for SingularityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at (x, y) = ({}, {})",
            self.cause.describe(),
            to_exact_string(&self.x),
            to_exact_string(&self.y)
        )
    }
}

fn check_degree(kind: EquationKind, m: &RootMapping) -> Result<()> {
    if m.degree() != kind.degree() {
        return Err(Error::domain(format!(
            "mapping of degree {} used with the {} equation",
            m.degree(),
            kind
        )));
    }
    Ok(())
}

/// Classify `(x, y)` for the argument and denominator conditions. For base
/// functions the denominator vanishes exactly when `4 b(x)^2 = b(y)^2`.
pub fn singularity(
    m: &RootMapping,
    x: &ExactRational,
    y: &ExactRational,
) -> Option<SingularityCause> {
    let two_x: ExactRational = x * ExactRational::from_integer(2.into());
    if x.is_zero() || y.is_zero() {
        Some(SingularityCause::ZeroArgument)
    } else if (&two_x + y).is_zero() {
        Some(SingularityCause::SumVanishes)
    } else if (&two_x - y).is_zero() {
        Some(SingularityCause::DifferenceVanishes)
    } else {
        let bx = m.base(x).ok()?;
        let by = m.base(y).ok()?;
        let four = ExactRational::from_integer(4.into());
        (four * &bx * &bx == &by * &by).then_some(SingularityCause::DenominatorVanishes)
    }
}

/// Exact `Δ₁n(x, y)` or `Δ₂d(x, y)`.
pub fn delta(
    kind: EquationKind,
    policy: CoefficientPolicy,
    m: &RootMapping,
    x: &ExactRational,
    y: &ExactRational,
) -> Result<ExactRational> {
    check_degree(kind, m)?;
    if let Some(cause) = singularity(m, x, y) {
        return Err(Error::Singular(SingularityReport {
            x: x.clone(),
            y: y.clone(),
            cause,
        }));
    }
    let two_x: ExactRational = x * ExactRational::from_integer(2.into());
    let ri = kind.root_index();
    let values = PointValues {
        lhs: m.eval(&(&two_x + y))? + m.eval(&(&two_x - y))?,
        value_x: m.eval(x)?,
        value_y: m.eval(y)?,
        root_x: m.root_power(x, ri, 1)?,
        root_y: m.root_power(y, ri, 1)?,
    };
    Ok(delta_from_values(kind, policy, &values).expect("denominator checked above"))
}

/// `n(3x) - n(x)/S`, which is what the corrected operator reduces to on the diagonal.
pub fn collapse_diagonal(
    kind: EquationKind,
    m: &RootMapping,
    x: &ExactRational,
) -> Result<ExactRational> {
    check_degree(kind, m)?;
    if x.is_zero() {
        return Err(Error::domain("diagonal collapse at 0"));
    }
    let three_x: ExactRational = x * ExactRational::from_integer(3.into());
    Ok(m.eval(&three_x)? - m.eval(x)? / ExactRational::from_integer(kind.scale().into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funceq::FinitePerturbation;
    use crate::valued_field::rational::{int, powi, rat};

    const C: CoefficientPolicy = CoefficientPolicy::Corrected;
    const P: CoefficientPolicy = CoefficientPolicy::Printed;

    #[test]
    fn exact_solutions_vanish() {
        let n = RootMapping::exact(9);
        let d = RootMapping::exact(10);
        assert!(delta(EquationKind::Nonic, C, &n, &int(1), &int(1)).unwrap().is_zero());
        assert!(delta(EquationKind::Nonic, C, &n, &int(3), &int(2)).unwrap().is_zero());
        assert!(delta(EquationKind::Decic, C, &d, &int(1), &int(1)).unwrap().is_zero());
        assert!(delta(EquationKind::Decic, P, &d, &rat(-2, 7), &int(5)).unwrap().is_zero());
    }

    #[test]
    fn printed_coefficient_residual() {
        let n = RootMapping::exact(9);
        assert_eq!(
            delta(EquationKind::Nonic, P, &n, &int(1), &int(1)).unwrap(),
            rat(32, 19683)
        );
    }

    #[test]
    fn singular_points() {
        let n = RootMapping::exact(9);
        let cause = |x, y| match delta(EquationKind::Nonic, C, &n, &x, &y) {
            Err(Error::Singular(r)) => r.cause,
            other => panic!("expected singularity, got {other:?}"),
        };
        assert_eq!(cause(int(0), int(1)), SingularityCause::ZeroArgument);
        assert_eq!(cause(int(1), int(-2)), SingularityCause::SumVanishes);
        assert_eq!(cause(int(1), int(2)), SingularityCause::DifferenceVanishes);

        // t(1) = 1 gives b(1) = 1/2 while b(-1) = -1, so 4 b(1)^2 = b(-1)^2.
        let pert = FinitePerturbation::new().with(int(1), int(1)).unwrap();
        let m = RootMapping::perturbed(9, pert.clone());
        assert_eq!(
            singularity(&m, &int(1), &int(-1)),
            Some(SingularityCause::DenominatorVanishes)
        );
        assert_eq!(singularity(&m, &int(1), &int(1)), None);
        let d = RootMapping::perturbed(10, pert);
        assert!(matches!(
            delta(EquationKind::Decic, C, &d, &int(1), &int(-1)),
            Err(Error::Singular(SingularityReport {
                cause: SingularityCause::DenominatorVanishes,
                ..
            }))
        ));
    }

    #[test]
    fn diagonal_collapse_examples() {
        let n = RootMapping::exact(9);
        assert!(collapse_diagonal(EquationKind::Nonic, &n, &int(1)).unwrap().is_zero());
        let d = RootMapping::exact(10);
        assert!(collapse_diagonal(EquationKind::Decic, &d, &int(2)).unwrap().is_zero());

        let pert = FinitePerturbation::new().with(int(1), rat(1, 10)).unwrap();
        let m = RootMapping::perturbed(9, pert);
        let expected = (int(1) - powi(&rat(11, 10), 9)) / int(19683);
        let collapsed = collapse_diagonal(EquationKind::Nonic, &m, &int(1)).unwrap();
        assert_eq!(collapsed, expected);
        assert_eq!(delta(EquationKind::Nonic, C, &m, &int(1), &int(1)).unwrap(), expected);
    }

    #[test]
    fn degree_mismatch_is_rejected() {
        let n = RootMapping::exact(9);
        assert!(delta(EquationKind::Decic, C, &n, &int(1), &int(3)).is_err());
        assert!(collapse_diagonal(EquationKind::Decic, &n, &int(1)).is_err());
    }
}
