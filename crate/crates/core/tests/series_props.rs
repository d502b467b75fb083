use num_traits::{One, Signed};
use proptest::prelude::*;
use recistab_core::counterexample::{
    active_terms, enclose_delta, nonstability_witness, series_eval, GajdaParams, Interval,
};
use recistab_core::funceq::{delta, singularity, CoefficientPolicy, EquationKind};
use recistab_core::valued_field::{powi, ExactRational};
use recistab_core::{FinitePerturbation, RootMapping};

fn int(v: i64) -> ExactRational {
    ExactRational::from_integer(v.into())
}

fn positive(max_num: i64, max_den: i64) -> impl Strategy<Value = ExactRational> {
    (1..=max_num, 1..=max_den).prop_map(|(n, d)| ExactRational::new(n.into(), d.into()))
}

fn kind() -> impl Strategy<Value = EquationKind> {
    prop::sample::select(EquationKind::ALL.to_vec())
}

fn params() -> impl Strategy<Value = GajdaParams> {
    (kind(), positive(20, 7)).prop_map(|(k, level)| GajdaParams::new(k, level).unwrap())
}

/// Nonzero rationals spread over roughly twelve orders of magnitude.
fn wide_point() -> impl Strategy<Value = ExactRational> {
    (positive(1000, 1000), -13i64..=13, any::<bool>()).prop_map(|(q, j, neg)| {
        let x = q * powi(&int(3), j);
        if neg {
            -x
        } else {
            x
        }
    })
}

proptest! {
    #[test]
    fn series_is_bounded(params in params(), x in wide_point()) {
        let bound = params.series_bound();
        let g = series_eval(&params, &x).unwrap().value;
        prop_assert!(g <= bound);
        prop_assert_eq!(g == bound, x <= ExactRational::one());
    }

    #[test]
    fn lower_envelope(params in params(), x in wide_point()) {
        prop_assume!(x > ExactRational::one());
        let v = series_eval(&params, &x).unwrap();
        let envelope = int(v.active_terms as i64) * &params.level * powi(&x, -(params.degree() as i64));
        prop_assert!(v.value >= envelope);
    }

    #[test]
    fn step_structure_at_powers_of_three(j in 0i64..30, offset in positive(1, 1000)) {
        let p = powi(&int(3), j);
        prop_assert_eq!(active_terms(&p) as i64, j);
        prop_assert_eq!(active_terms(&(&p + &offset)) as i64, j + 1);
        if j >= 1 {
            prop_assert_eq!(active_terms(&(&p - &offset)) as i64, j);
            let prev = powi(&int(3), j - 1);
            prop_assert_eq!(active_terms(&(&prev + &offset)) as i64, j);
        }
    }

    #[test]
    fn witnesses_are_sound(params in params(), alpha in positive(400, 20)) {
        let w = nonstability_witness(&params, &alpha).unwrap();
        prop_assert!(w.is_sound(&params));
        prop_assert_eq!(series_eval(&params, &w.x).unwrap().active_terms, w.m);
        let scaled = &w.g_of_x * powi(&w.x, params.degree() as i64);
        prop_assert!(scaled > &alpha + ExactRational::one());
    }

    #[test]
    fn root_enclosures_contain_the_root(a in positive(10_000, 10_000), n in 2u32..=10, bits in 8u32..80) {
        let iv = Interval::nth_root(&powi(&a, n as i64), n, bits);
        prop_assert!(iv.contains(&a));
        prop_assert!(iv.width() <= powi(&int(2), -(bits as i64)) * (a.clone() + int(2)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certified_delta_contains_exact_value(
        kind in kind(),
        x in positive(60, 12),
        y in positive(60, 12),
        y_negative in any::<bool>(),
        t in positive(30, 10),
        bits in 48u32..96,
    ) {
        let y = if y_negative { -y } else { y };
        let m = RootMapping::perturbed(
            kind.degree(),
            FinitePerturbation::new().with(x.clone(), t).unwrap(),
        );
        prop_assume!(singularity(&m, &x, &y).is_none());
        let exact = delta(kind, CoefficientPolicy::Corrected, &m, &x, &y).unwrap();
        let enclosure = enclose_delta(kind, CoefficientPolicy::Corrected, |z| m.eval(z), &x, &y, bits).unwrap();
        let magnitude = enclosure.magnitude();
        prop_assert!(magnitude.contains(&exact.abs()), "|{exact}| outside enclosure");
        if let Some(signed) = &enclosure.signed {
            prop_assert!(signed.contains(&exact));
        }
    }
}
