use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pseries::transition::build_graph_with;
use pseries::unitarity::comp_series_bound_with;
use pseries::{ktype, lookup_name, Execution, Family, Rational};

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn comp_series(c: &mut Criterion) {
    let mut group = c.benchmark_group("comp_series_bound");
    group.sample_size(10);
    for name in ["e7_7", "so4d(12)"] {
        let alg = lookup_name(name).unwrap();
        for (label, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(label, name), &alg, |b, alg| {
                b.iter(|| comp_series_bound_with(exec, black_box(alg), Family::Even, None).unwrap())
            });
        }
    }
    group.finish();
}

fn enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    let alg = lookup_name("so4d(4)").unwrap();
    for (label, exec) in STRATEGIES {
        group.bench_function(label, |b| {
            b.iter(|| ktype::enumerate_with(exec, black_box(&alg), 24, Family::Raw))
        });
    }
    group.finish();
}

fn graph(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_graph");
    group.sample_size(20);
    let alg = lookup_name("e8_8").unwrap();
    let nu = Rational::new(-7, 3);
    for (label, exec) in STRATEGIES {
        group.bench_function(label, |b| {
            b.iter(|| build_graph_with(exec, black_box(&alg), &nu, 16, Family::Even))
        });
    }
    group.finish();
}

criterion_group!(benches, comp_series, enumerate, graph);
criterion_main!(benches);
