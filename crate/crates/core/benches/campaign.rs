use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kitelink::graph::Graph;
use kitelink::harness::{run_trials_with, GeneratorSpec, RootPolicy, TrialConfig};
use kitelink::oracle::{is_kite_linked_with, SearchBudget};
use kitelink::par::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn campaign(c: &mut Criterion) {
    let mut cfg = TrialConfig::new(
        GeneratorSpec::RandomKConnected { n_min: 10, n_max: 16, k: 7 },
        24,
        RootPolicy::Sampled { per_graph: 5 },
        1,
    );
    cfg.shortcut = false;
    let mut group = c.benchmark_group("random_campaign");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_trials_with(&cfg, exec))
        });
    }
    group.finish();
}

fn k8_sweep(c: &mut Criterion) {
    let mut cfg = TrialConfig::new(GeneratorSpec::Complete { n: 8 }, 1, RootPolicy::Exhaustive, 0);
    cfg.shortcut = false;
    let mut group = c.benchmark_group("k8_all_roots");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_trials_with(&cfg, exec))
        });
    }
    group.finish();
}

fn kite_linked(c: &mut Criterion) {
    let g = Graph::complete(7);
    let mut group = c.benchmark_group("is_kite_linked_k7");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| is_kite_linked_with(&g, SearchBudget::default(), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, campaign, k8_sweep, kite_linked);
criterion_main!(benches);
