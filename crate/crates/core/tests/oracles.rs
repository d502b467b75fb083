//! Independent oracles: polynomial expansion by repeated multiplication and
//! series truncation with an exact geometric tail.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use recistab_core::counterexample::{phi, series_eval, GajdaParams};
use recistab_core::funceq::{delta, CoefficientPolicy, EquationKind, RootMapping};
use recistab_core::sampling::Sampler;
use recistab_core::valued_field::{powi, ExactRational};

/// Bivariate integer polynomial keyed by `(deg_x, deg_y)`.
type Poly = BTreeMap<(u32, u32), BigInt>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(ax, ay), ca) in a {
        for (&(bx, by), cb) in b {
            *out.entry((ax + bx, ay + by)).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (k, c) in b {
        *out.entry(*k).or_insert_with(BigInt::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn linear(cx: i64, cy: i64) -> Poly {
    Poly::from([((1, 0), BigInt::from(cx)), ((0, 1), BigInt::from(cy))])
}

fn power(p: &Poly, n: u32) -> Poly {
    let mut acc = Poly::from([((0, 0), BigInt::one())]);
    for _ in 0..n {
        acc = mul(&acc, p);
    }
    acc
}

/// `(2x+y)^e + (2x-y)^e` expanded by brute multiplication.
fn lhs_numerator(e: u32) -> Poly {
    add(&power(&linear(2, 1), e), &power(&linear(2, -1), e))
}

#[test]
fn nonic_expansion_matches_corrected_bracket() {
    let expanded = lhs_numerator(9);
    let expected: Poly = [
        ((9, 0), 1024),
        ((7, 2), 9216),
        ((5, 4), 8064),
        ((3, 6), 1344),
        ((1, 8), 36),
    ]
    .into_iter()
    .map(|(k, c)| (k, BigInt::from(c)))
    .collect();
    assert_eq!(expanded, expected);

    // front factor 4 times the bracket coefficient of x^(8-2j) y^(2j), times x
    let kind = EquationKind::Nonic;
    for (j, &c) in kind.coefficients(CoefficientPolicy::Corrected).iter().enumerate() {
        let j = j as u32;
        let term = &expanded[&(9 - 2 * j, 2 * j)];
        assert_eq!(term, &BigInt::from(kind.front_factor() * c), "term {j}");
    }
    let printed_last = *kind.coefficients(CoefficientPolicy::Printed).last().unwrap();
    assert_ne!(BigInt::from(kind.front_factor() * printed_last), expanded[&(1, 8)]);
}

#[test]
fn decic_expansion_matches_bracket() {
    let expanded = lhs_numerator(10);
    let kind = EquationKind::Decic;
    assert_eq!(expanded.len(), 6);
    for (j, &c) in kind.coefficients(CoefficientPolicy::Corrected).iter().enumerate() {
        let j = j as u32;
        assert_eq!(
            expanded[&(10 - 2 * j, 2 * j)],
            BigInt::from(kind.front_factor() * c),
            "term {j}"
        );
    }
}

#[test]
fn printed_residual_by_direct_sum() {
    // LHS n(3) + n(1) = 1/19683 + 1; printed RHS 4 * 4913 / 3^9.
    let lhs = ExactRational::new(1.into(), 19683.into()) + ExactRational::one();
    let rhs = ExactRational::new((4 * 4913).into(), 19683.into());
    let residual = delta(
        EquationKind::Nonic,
        CoefficientPolicy::Printed,
        &RootMapping::exact(9),
        &ExactRational::one(),
        &ExactRational::one(),
    )
    .unwrap();
    assert_eq!(residual, lhs - rhs);
    assert_eq!(residual, ExactRational::new(32.into(), 19683.into()));
}

/// `Σ_{m<terms} S^-m φ(3^-m x)` plus the tail `Σ_{m>=terms} S^-m k`, valid
/// once every term past `terms` is inactive.
fn truncated_series(params: &GajdaParams, x: &ExactRational, terms: u32) -> ExactRational {
    let s = ExactRational::from_integer(params.kind.scale().into());
    let three = ExactRational::from_integer(3.into());
    let mut sum = ExactRational::zero();
    for m in 0..terms {
        let arg = x * powi(&three, -(m as i64));
        sum += powi(&s, -(m as i64)) * phi(params, &arg).unwrap();
    }
    let tail = &params.level * powi(&s, -(terms as i64)) * &s / (&s - ExactRational::one());
    sum + tail
}

#[test]
fn closed_form_matches_truncation_at_random_points() {
    let mut sampler = Sampler::new(2024);
    for kind in EquationKind::ALL {
        let params = GajdaParams::new(kind, sampler.nonzero_rational(9, 4).abs()).unwrap();
        for _ in 0..200 {
            let x = sampler.three_adic_point(20);
            let closed = series_eval(&params, &x).unwrap();
            assert!(closed.active_terms <= 50);
            assert_eq!(closed.value, truncated_series(&params, &x, 50), "x = {x}");
            assert_eq!(
                closed.value,
                truncated_series(&params, &x, closed.active_terms),
                "x = {x}"
            );
        }
    }
}

#[test]
fn series_example_values() {
    let params = GajdaParams::new(EquationKind::Nonic, ExactRational::one()).unwrap();
    for (x, expected_m) in [(2, 1), (9, 2)] {
        let x = ExactRational::from_integer(x.into());
        let v = series_eval(&params, &x).unwrap();
        assert_eq!(v.active_terms, expected_m);
        assert_eq!(v.value, truncated_series(&params, &x, 50));
    }
}
