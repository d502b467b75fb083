use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use recistab_core::funceq::{collapse_diagonal, delta, singularity, CoefficientPolicy, EquationKind};
use recistab_core::valued_field::{norm, parse_exact, powi, to_exact_string, ExactRational, ValuationSpec};
use recistab_core::{FinitePerturbation, RootMapping};

fn rational() -> impl Strategy<Value = ExactRational> {
    (-2000i64..=2000, 1i64..=500).prop_map(|(n, d)| ExactRational::new(n.into(), d.into()))
}

fn nonzero() -> impl Strategy<Value = ExactRational> {
    rational().prop_filter("nonzero", |q| !q.is_zero())
}

fn valuation() -> impl Strategy<Value = ValuationSpec> {
    prop_oneof![
        Just(ValuationSpec::Archimedean),
        prop::sample::select(vec![2u64, 3, 5, 7, 11, 1_000_000_007])
            .prop_map(|p| ValuationSpec::padic(p).unwrap()),
    ]
}

fn padic() -> impl Strategy<Value = ValuationSpec> {
    prop::sample::select(vec![2u64, 3, 5, 7, 13]).prop_map(|p| ValuationSpec::padic(p).unwrap())
}

fn kind() -> impl Strategy<Value = EquationKind> {
    prop::sample::select(EquationKind::ALL.to_vec())
}

fn deviation() -> impl Strategy<Value = ExactRational> {
    (1i64..=40, -39i64..=80)
        .prop_map(|(d, n)| ExactRational::new(n.into(), d.into()))
        .prop_filter("t > -1 and t != 0", |t| *t > -ExactRational::one() && !t.is_zero())
}

/// Perturbation supported near `x` and its diagonal images, so collapse
/// residuals are usually nonzero.
fn perturbed(degree: u32) -> impl Strategy<Value = (RootMapping, ExactRational)> {
    (nonzero(), prop::collection::vec((0i64..4, deviation()), 0..4)).prop_map(move |(x, devs)| {
        let mut p = FinitePerturbation::new();
        for (j, t) in devs {
            p.insert(&x * ExactRational::from_integer(3i64.pow(j as u32).into()), t).unwrap();
        }
        (RootMapping::perturbed(degree, p), x)
    })
}

proptest! {
    #[test]
    fn norm_is_multiplicative(s in rational(), t in rational(), v in valuation()) {
        prop_assert_eq!(norm(&(&s * &t), v), norm(&s, v).mul(&norm(&t, v)));
    }

    #[test]
    fn strong_triangle_inequality(s in rational(), t in rational(), v in padic()) {
        let (ns, nt) = (norm(&s, v), norm(&t, v));
        let sum = norm(&(&s + &t), v);
        let max = ns.clone().max(nt.clone());
        prop_assert!(sum <= max);
        if ns != nt {
            prop_assert_eq!(sum, max);
        }
    }

    #[test]
    fn norm_vanishes_only_at_zero(s in rational(), v in valuation()) {
        prop_assert_eq!(norm(&s, v).is_zero(), s.is_zero());
    }

    #[test]
    fn integers_have_norm_at_most_one(n in any::<i64>(), v in padic()) {
        let q = ExactRational::from_integer(n.into());
        prop_assert!(norm(&q, v).value() <= &ExactRational::one());
    }

    #[test]
    fn exact_strings_round_trip(q in rational()) {
        prop_assert_eq!(parse_exact(&to_exact_string(&q)).unwrap(), q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn exact_solution_annihilates_both_operators(x in nonzero(), y in nonzero(), kind in kind()) {
        let m = RootMapping::exact(kind.degree());
        prop_assume!(singularity(&m, &x, &y).is_none());
        let d = delta(kind, CoefficientPolicy::Corrected, &m, &x, &y).unwrap();
        prop_assert!(d.is_zero(), "Δ({}, {}) = {}", x, y, d);
    }
}

proptest! {
    #[test]
    fn diagonal_collapse(kind in kind(), (m, x) in perturbed(9)) {
        let m = if kind == EquationKind::Decic {
            RootMapping::perturbed(10, m.perturbation().clone())
        } else {
            m
        };
        prop_assume!(singularity(&m, &x, &x).is_none());
        prop_assert_eq!(
            delta(kind, CoefficientPolicy::Corrected, &m, &x, &x).unwrap(),
            collapse_diagonal(kind, &m, &x).unwrap()
        );
    }

    #[test]
    fn scale_covariance(
        kind in kind(),
        (m, x) in perturbed(9),
        y in nonzero(),
        r in nonzero(),
    ) {
        let base = RootMapping::perturbed(kind.degree(), m.perturbation().clone());
        prop_assume!(singularity(&base, &x, &y).is_none());
        let scaled = base.clone().with_scale(r.clone()).unwrap();
        let d = delta(kind, CoefficientPolicy::Corrected, &base, &x, &y).unwrap();
        let ds = delta(kind, CoefficientPolicy::Corrected, &scaled, &x, &y).unwrap();
        prop_assert_eq!(ds, powi(&r, kind.degree() as i64) * d);
    }

    #[test]
    fn scaled_exact_solutions_stay_solutions(kind in kind(), x in nonzero(), y in nonzero(), r in nonzero()) {
        let m = RootMapping::scaled(kind.degree(), r).unwrap();
        prop_assume!(singularity(&m, &x, &y).is_none());
        prop_assert!(delta(kind, CoefficientPolicy::Corrected, &m, &x, &y).unwrap().is_zero());
    }

    #[test]
    fn perturbation_only_changes_support((m, _) in perturbed(9), z in nonzero()) {
        prop_assume!(m.perturbation().deviation(&z).is_none());
        prop_assert_eq!(m.eval(&z).unwrap(), RootMapping::exact(9).eval(&z).unwrap());
    }

    #[test]
    fn singularity_is_decided_by_bases((m, x) in perturbed(10), y in nonzero()) {
        let two_x = &x * ExactRational::from_integer(2.into());
        prop_assume!(!(&two_x + &y).is_zero() && !(&two_x - &y).is_zero());
        let bx = m.base(&x).unwrap();
        let by = m.base(&y).unwrap();
        let expected = ExactRational::from_integer(4.into()) * &bx * &bx == &by * &by;
        prop_assert_eq!(singularity(&m, &x, &y).is_some(), expected);
        prop_assert!(!m.eval(&x).unwrap().is_zero());
        prop_assert!(m.eval(&x).unwrap().is_positive());
    }
}
