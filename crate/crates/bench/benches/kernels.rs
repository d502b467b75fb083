use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use recistab_core::counterexample::{delta_series, series_eval, GajdaParams};
use recistab_core::funceq::delta;
use recistab_core::valued_field::{ExactRational, ValuationSpec};
use recistab_core::{
    CoefficientPolicy, ControlFunction, EquationKind, FinitePerturbation, RootMapping,
    StabilityProblem,
};

fn rat(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n.into(), d.into())
}

fn exact_delta(c: &mut Criterion) {
    let pert = FinitePerturbation::new().with(rat(7, 3), rat(1, 10)).unwrap();
    for kind in EquationKind::ALL {
        let m = RootMapping::perturbed(kind.degree(), pert.clone());
        let (x, y) = (rat(7, 3), rat(-5, 9));
        c.bench_function(&format!("delta/{kind}"), |b| {
            b.iter(|| delta(kind, CoefficientPolicy::Corrected, &m, black_box(&x), black_box(&y)).unwrap())
        });
    }
}

fn series(c: &mut Criterion) {
    let params = GajdaParams::new(EquationKind::Nonic, rat(1, 1)).unwrap();
    for x in [rat(1, 2), rat(250, 3), rat(2 * 3i64.pow(30), 1)] {
        c.bench_function(&format!("series_eval/{x}"), |b| {
            b.iter(|| series_eval(&params, black_box(&x)).unwrap())
        });
    }
}

fn stability(c: &mut Criterion) {
    let v = ValuationSpec::padic(3).unwrap();
    let control = ControlFunction::constant(rat(1, 1)).unwrap();
    let problem = StabilityProblem::auto(EquationKind::Nonic, control, v).unwrap();
    let x = rat(5, 27);
    c.bench_function("stability_bound/nonic", |b| {
        b.iter(|| problem.stability_bound(black_box(&x), 8).unwrap())
    });
    let m = RootMapping::perturbed(9, FinitePerturbation::new().with(x.clone(), rat(2, 1)).unwrap());
    c.bench_function("approximant/nonic", |b| {
        b.iter(|| problem.approximant(&m, black_box(&x), 8, 8).unwrap())
    });
}

fn interval_delta(c: &mut Criterion) {
    let mut group = c.benchmark_group("delta_series");
    group.sample_size(20);
    for (kind, k) in [(EquationKind::Nonic, 1), (EquationKind::Decic, 2)] {
        let params = GajdaParams::new(kind, rat(k, 1)).unwrap();
        let (x, y) = (rat(3, 2), rat(20, 3));
        for bits in [64, 96] {
            group.bench_function(format!("{kind}/{bits}"), |b| {
                b.iter(|| delta_series(&params, CoefficientPolicy::Corrected, black_box(&x), black_box(&y), bits).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, exact_delta, series, stability, interval_delta);
criterion_main!(benches);
