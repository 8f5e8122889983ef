use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use kaleido_core::factorization::{hajos_check, HajosOptions, HajosProperty};
use kaleido_core::metric::{verify_ultrametric_splittability, UltrametricSpec};
use kaleido_core::space::cayley_space;
use kaleido_core::splitting::generate_splittable;
use kaleido_core::transversal::find_kaleidoscopic_coloring;
use kaleido_core::{parse_group_spec, Configuration, Exec};

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn hajos(c: &mut Criterion) {
    let mut group = c.benchmark_group("hajos");
    group.sample_size(10);
    for (spec, property) in [
        ("C30", HajosProperty::Semi),
        ("C4xC2xC2", HajosProperty::Hajos),
    ] {
        let g = parse_group_spec(spec).unwrap();
        for (name, exec) in STRATEGIES {
            let opts = HajosOptions {
                cap: 30,
                exec,
                witnesses: false,
            };
            group.bench_with_input(BenchmarkId::new(name, spec), &g, |b, g| {
                b.iter(|| hajos_check(black_box(g), property, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn ultrametric(c: &mut Criterion) {
    let mut group = c.benchmark_group("ultrametric");
    group.sample_size(10);
    for branching in [vec![2, 2, 2], vec![3, 2, 2]] {
        let spec = UltrametricSpec::new(branching.clone()).unwrap();
        let label = format!("{branching:?}");
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, &label), &spec, |b, spec| {
                b.iter(|| verify_ultrametric_splittability(black_box(spec), 12, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn splitting(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate_splittable");
    for spec in ["C2xC2xC2", "C12"] {
        let space = cayley_space(&parse_group_spec(spec).unwrap());
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, spec), &space, |b, space| {
                b.iter(|| generate_splittable(black_box(space), 256, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn coloring_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("coloring_sweep");
    group.sample_size(10);
    let space = cayley_space(&parse_group_spec("C12").unwrap());
    let subsets: Vec<Configuration> = (1..1u64 << 12).map(Configuration::from_mask).collect();
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::new(name, "C12"), |b| {
            b.iter(|| {
                exec.map(&subsets, |a| {
                    find_kaleidoscopic_coloring(&space, a).unwrap().is_some()
                })
                .into_iter()
                .filter(|&k| k)
                .count()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, hajos, ultrametric, splitting, coloring_sweep);
criterion_main!(benches);
