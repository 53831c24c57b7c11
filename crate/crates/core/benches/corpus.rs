//! Corpus batteries in parallel and sequential mode.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use topogame::par::ExecMode;
use topogame::suite::{run_criterion, SuiteConfig};

fn batteries(c: &mut Criterion) {
    let mut g = c.benchmark_group("corpus");
    g.sample_size(10);
    for (id, name) in [(1, "duality"), (5, "menger_extraction"), (10, "scattered")] {
        for (mode, label) in [(ExecMode::Parallel, "parallel"), (ExecMode::Sequential, "sequential")] {
            let cfg = SuiteConfig {
                mode,
                ..SuiteConfig::default()
            };
            g.bench_function(format!("{name}/{label}"), |b| {
                b.iter(|| black_box(run_criterion(id, cfg)))
            });
        }
    }
    g.finish();
}

criterion_group!(benches, batteries);
criterion_main!(benches);
