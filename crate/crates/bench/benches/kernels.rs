use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ifps_bench::{orbit_fixture, triplet};
use ifps_core::castle::enumerate;
use ifps_core::exactmat::{rank_exact, rank_modular, DEFAULT_PRIME};
use ifps_core::pv::{find_generic, SearchConfig};
use ifps_core::reps::sym_power;

fn rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for (a, parts) in [(2u64, vec![1u64]), (3, vec![2]), (5, vec![4]), (2, vec![3, 11])] {
        let m = orbit_fixture(a, &parts);
        let id = m.rows().to_string();
        g.bench_with_input(BenchmarkId::new("exact", &id), &m, |b, m| b.iter(|| rank_exact(m)));
        g.bench_with_input(BenchmarkId::new("modular", &id), &m, |b, m| {
            b.iter(|| rank_modular(m, DEFAULT_PRIME).unwrap())
        });
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let cfg = SearchConfig::default();
    let t = triplet(5, &[4]);
    c.bench_function("find_generic/(5; 4)", |b| b.iter(|| find_generic(&t, &cfg)));
}

fn trees(c: &mut Criterion) {
    c.bench_function("enumerate/a=2 parts<=1e6 k<=5", |b| b.iter(|| enumerate(2, 1_000_000, 5).unwrap()));
}

fn construction(c: &mut Criterion) {
    c.bench_function("sym_power(3, 3)", |b| b.iter(|| sym_power(3, 3)));
    c.bench_function("tensor_triplet(2; 3, 11)", |b| b.iter(|| triplet(2, &[3, 11])));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = rank, search, trees, construction
}
criterion_main!(benches);
