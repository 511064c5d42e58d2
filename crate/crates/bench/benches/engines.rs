use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use normtrace::ghw::{ghw_exhaustive_with, GhwOptions, Strategy};
use normtrace::{css_params, weight_hierarchy, Curve, Preset};
use normtrace_bench::{degree_set, one_point_set, DEGREE_CASES, ONE_POINT_CASES};

fn hierarchies(c: &mut Criterion) {
    let mut group = c.benchmark_group("weight_hierarchy");
    for &case in ONE_POINT_CASES {
        let m = one_point_set(case);
        let ((q, s, u), lambda) = case;
        group.bench_with_input(BenchmarkId::from_parameter(format!("q{q}s{s}u{u}/L{lambda}")), &m, |b, m| {
            b.iter(|| weight_hierarchy(m).unwrap())
        });
    }
    group.finish();
}

fn strategies(c: &mut Criterion) {
    let mut group = c.benchmark_group("ghw_strategy");
    for &case in DEGREE_CASES {
        let m = degree_set(case);
        let r = m.len() / 2;
        let ((q, s, u), d) = case;
        for (name, strategy) in [("subsets", Strategy::Subsets), ("staircase", Strategy::Staircase)] {
            let opts = GhwOptions { strategy, ..Default::default() };
            group.bench_function(format!("q{q}s{s}u{u}/d{d}/r{r}/{name}"), |b| {
                b.iter(|| ghw_exhaustive_with(&m, r, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("quantum_table");
    group.sample_size(10);
    for preset in Preset::ALL {
        group.bench_function(preset.name(), |b| {
            b.iter(|| {
                for &(l1, l2) in preset.rows() {
                    css_params(preset.params(), l1, l2).unwrap();
                }
            })
        });
    }
    group.finish();
}

fn curves(c: &mut Criterion) {
    c.bench_function("enumerate_points/q2s4u15", |b| b.iter(|| Curve::new(2, 4, 15).unwrap()));
}

criterion_group!(benches, hierarchies, strategies, tables, curves);
criterion_main!(benches);
