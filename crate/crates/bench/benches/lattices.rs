use binuc_bench::{linear, tors};
use binuc_core::binuclear::{build_ni_order, ni_join, ni_meet};
use binuc_core::generate::weak_order;
use binuc_core::semidistrib::{check_semidistributivity, kappa_ni};
use binuc_core::suite::{run_on_tors, Suite, SuiteOptions};
use binuc_core::torsion::{enumerate_presilting, enumerate_tors};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_tors");
    for n in 2..=5 {
        let spec = linear(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &spec, |b, spec| {
            b.iter(|| enumerate_tors(black_box(spec)).unwrap())
        });
    }
    group.finish();
}

fn interval_order(c: &mut Criterion) {
    let a4 = tors(4);
    c.bench_function("build_ni_order/A4", |b| {
        b.iter(|| build_ni_order(black_box(a4.lattice())))
    });
    let bp = a4.binuc();
    c.bench_function("ni_bounds_all_pairs/A4", |b| {
        b.iter(|| {
            let mut found = 0usize;
            for &x in bp.intervals() {
                for &y in bp.intervals() {
                    found += ni_meet(bp, x, y).unwrap().value().is_some() as usize;
                    found += ni_join(bp, x, y).unwrap().value().is_some() as usize;
                }
            }
            found
        })
    });
}

fn kappa(c: &mut Criterion) {
    let w4 = weak_order(4).unwrap();
    c.bench_function("semidistributivity/weak_order4", |b| {
        b.iter(|| check_semidistributivity(black_box(&w4)))
    });
    c.bench_function("kappa_ni/weak_order4", |b| {
        b.iter(|| kappa_ni(black_box(&w4)).unwrap())
    });
}

fn torsion(c: &mut Criterion) {
    let a4 = tors(4);
    c.bench_function("enumerate_presilting/A4", |b| {
        b.iter(|| enumerate_presilting(black_box(&a4)).unwrap())
    });
    let a3 = tors(3);
    let opts = SuiteOptions {
        theta_samples: 100,
        ..SuiteOptions::default()
    };
    c.bench_function("full_suite/A3", |b| {
        b.iter(|| run_on_tors(&a3, Suite::All, &opts))
    });
}

criterion_group!(benches, enumeration, interval_order, kappa, torsion);
criterion_main!(benches);
